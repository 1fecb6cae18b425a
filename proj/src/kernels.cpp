#include "dutchdraw/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "draw.hpp"

namespace dutchdraw::kernels {

PmfWindow hypergeometric_pmf(const ProblemShape& shape, Count k, double tail_cutoff) {
  const TpSupport support = tp_support(shape, k);
  const double p = static_cast<double>(shape.p);
  const double n = static_cast<double>(shape.negatives());
  const double kk = static_cast<double>(k);

  const Count mode = std::clamp<Count>((k + 1) * (shape.p + 1) / (shape.m + 2), support.lo, support.hi);

  // Weights relative to the mode. The hypergeometric law is log-concave, so
  // they decrease monotonically on both sides.
  std::vector<double> up{1.0};
  for (Count s = mode; s < support.hi; ++s) {
    const double sd = static_cast<double>(s);
    const double ratio = (p - sd) * (kk - sd) / ((sd + 1.0) * (n - kk + sd + 1.0));
    const double next = up.back() * ratio;
    if (next < tail_cutoff) break;
    up.push_back(next);
  }
  std::vector<double> down;
  double w = 1.0;
  for (Count s = mode; s > support.lo; --s) {
    const double sd = static_cast<double>(s);
    const double ratio = sd * (n - kk + sd) / ((p - sd + 1.0) * (kk - sd + 1.0));
    w *= ratio;
    if (w < tail_cutoff) break;
    down.push_back(w);
  }

  PmfWindow out;
  out.window = TpSupport{mode - static_cast<Count>(down.size()),
                         mode + static_cast<Count>(up.size()) - 1};
  out.pmf.reserve(down.size() + up.size());
  out.pmf.assign(down.rbegin(), down.rend());
  out.pmf.insert(out.pmf.end(), up.begin(), up.end());

  double total = 0.0;
  for (double v : out.pmf) total += v;
  for (double& v : out.pmf) v /= total;
  return out;
}

double exact_expectation(const MeasureSpec& spec, const ProblemShape& shape, Count k) {
  const PmfWindow law = hypergeometric_pmf(shape, k, kExpectationTailCutoff);
  double acc = 0.0;
  for (std::size_t i = 0; i < law.pmf.size(); ++i) {
    const Count s = law.window.lo + static_cast<Count>(i);
    acc += detail::evaluate_unchecked(spec, counts_at(shape, k, s)) * law.pmf[i];
  }
  return acc;
}

std::vector<double> expectation_scan(const MeasureSpec& spec, const ProblemShape& shape,
                                     const std::vector<Count>& ks) {
  std::vector<double> out(ks.size());
  const auto count = static_cast<std::int64_t>(ks.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = exact_expectation(spec, shape, ks[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<double> expectation_scan_serial(const MeasureSpec& spec, const ProblemShape& shape,
                                            const std::vector<Count>& ks) {
  std::vector<double> out;
  out.reserve(ks.size());
  for (Count k : ks) out.push_back(exact_expectation(spec, shape, k));
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  // splitmix64 finalizer over a golden-ratio stride
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

MonteCarloMoments run_block(const MeasureSpec& spec, const ProblemShape& shape, Count k,
                            std::uint64_t draws, std::uint64_t seed, std::uint64_t block) {
  std::mt19937_64 rng(mix_seed(seed, block));
  std::vector<Count> indices(static_cast<std::size_t>(shape.m));
  std::iota(indices.begin(), indices.end(), Count{0});

  MonteCarloMoments acc;
  for (std::uint64_t d = 0; d < draws; ++d) {
    ::dutchdraw::detail::draw_subset(rng, indices, k);
    Count tp = 0;
    for (Count i = 0; i < k; ++i) tp += indices[static_cast<std::size_t>(i)] < shape.p ? 1 : 0;
    const double x = ::dutchdraw::detail::evaluate_unchecked(spec, counts_at(shape, k, tp));
    acc.samples += 1;
    const double delta = x - acc.mean;
    acc.mean += delta / static_cast<double>(acc.samples);
    acc.m2 += delta * (x - acc.mean);
  }
  return acc;
}

MonteCarloMoments merge(const std::vector<MonteCarloMoments>& blocks) {
  MonteCarloMoments total;
  for (const auto& b : blocks) {
    if (b.samples == 0) continue;
    if (total.samples == 0) {
      total = b;
      continue;
    }
    const double na = static_cast<double>(total.samples);
    const double nb = static_cast<double>(b.samples);
    const double n = na + nb;
    const double delta = b.mean - total.mean;
    total.mean += delta * nb / n;
    total.m2 += b.m2 + delta * delta * na * nb / n;
    total.samples += b.samples;
  }
  return total;
}

std::uint64_t block_count(std::uint64_t samples) {
  return (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
}

std::uint64_t block_draws(std::uint64_t samples, std::uint64_t b) {
  return std::min(kMonteCarloBlock, samples - b * kMonteCarloBlock);
}

}  // namespace

MonteCarloMoments monte_carlo(const MeasureSpec& spec, const ProblemShape& shape, Count k,
                              std::uint64_t samples, std::uint64_t seed) {
  const std::uint64_t nblocks = block_count(samples);
  std::vector<MonteCarloMoments> blocks(nblocks);
  const auto count = static_cast<std::int64_t>(nblocks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < count; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    blocks[ub] = run_block(spec, shape, k, block_draws(samples, ub), seed, ub);
  }
  return merge(blocks);
}

MonteCarloMoments monte_carlo_serial(const MeasureSpec& spec, const ProblemShape& shape, Count k,
                                     std::uint64_t samples, std::uint64_t seed) {
  const std::uint64_t nblocks = block_count(samples);
  std::vector<MonteCarloMoments> blocks;
  blocks.reserve(nblocks);
  for (std::uint64_t b = 0; b < nblocks; ++b) {
    blocks.push_back(run_block(spec, shape, k, block_draws(samples, b), seed, b));
  }
  return merge(blocks);
}

}  // namespace dutchdraw::kernels
