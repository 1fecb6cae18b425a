#pragma once

// Numerical kernels behind the public API. Each parallel kernel has a
// serial twin that performs the same arithmetic in the same order; the
// tests require bit-identical results between the two.

#include <cstdint>
#include <vector>

#include "dutchdraw/dd_core.hpp"

namespace dutchdraw::kernels {

/// Hypergeometric pmf over [lo, hi] of the support. The value at the mode is
/// given weight one; the rest follows from the exact ratio
///   pmf(s+1)/pmf(s) = (p-s)(k-s) / ((s+1)(n-k+s+1)),
/// and the result is normalized to sum to one. With `tail_cutoff` > 0 the
/// walk away from the mode stops once pmf/pmf(mode) drops below it, and the
/// returned window is narrower than the support.
struct PmfWindow {
  TpSupport window;
  std::vector<double> pmf;
};
PmfWindow hypergeometric_pmf(const ProblemShape& shape, Count k, double tail_cutoff = 0.0);

/// Relative cutoff used by the exact-expectation kernel. Mass beyond it is
/// below 1e-40 per point and cannot move any double result.
inline constexpr double kExpectationTailCutoff = 1e-40;

/// E[measure] for k predicted positives, summed in ascending TP order.
/// Assumes feasibility was already checked.
double exact_expectation(const MeasureSpec& spec, const ProblemShape& shape, Count k);

/// exact_expectation for every k in `ks`. The parallel version splits the
/// grid across threads; each entry is computed independently.
std::vector<double> expectation_scan(const MeasureSpec& spec, const ProblemShape& shape,
                                     const std::vector<Count>& ks);
std::vector<double> expectation_scan_serial(const MeasureSpec& spec, const ProblemShape& shape,
                                            const std::vector<Count>& ks);

struct MonteCarloMoments {
  std::uint64_t samples = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations

  double variance() const noexcept { return samples > 1 ? m2 / double(samples - 1) : 0.0; }
};

/// Fixed block size of the Monte Carlo kernel. Block b draws from its own
/// generator seeded by mixing (seed, b), and blocks are merged in index
/// order, so the result does not depend on the thread count.
inline constexpr std::uint64_t kMonteCarloBlock = 4096;

MonteCarloMoments monte_carlo(const MeasureSpec& spec, const ProblemShape& shape, Count k,
                              std::uint64_t samples, std::uint64_t seed);
MonteCarloMoments monte_carlo_serial(const MeasureSpec& spec, const ProblemShape& shape, Count k,
                                     std::uint64_t samples, std::uint64_t seed);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace dutchdraw::kernels
