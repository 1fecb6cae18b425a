#include <doctest.h>

#include <cmath>
#include <cstring>

#include "dutchdraw/kernels.hpp"
#include "gen.hpp"

using namespace dutchdraw;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("parallel and serial scans are bit-identical") {
  gen::Gen g(21);
  for (int it = 0; it < 60; ++it) {
    const ProblemShape shape = g.shape(it < 50 ? 300 : 5000);
    const MeasureSpec spec = make_spec(g.pick(dd_catalog()).id);
    const auto ks = feasible_ks(spec, shape);
    if (ks.empty()) continue;
    const auto a = kernels::expectation_scan(spec, shape, ks);
    const auto b = kernels::expectation_scan_serial(spec, shape, ks);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_bits(a[i], b[i]));
  }
}

TEST_CASE("parallel and serial Monte Carlo are bit-identical") {
  gen::Gen g(22);
  for (int it = 0; it < 20; ++it) {
    const ProblemShape shape = g.shape(200);
    const MeasureSpec spec = make_spec(g.pick(dd_catalog()).id);
    const Count k = g.k(shape.m);
    if (!is_feasible(spec, shape, k)) continue;
    const std::uint64_t samples = 1 + static_cast<std::uint64_t>(g.between(0, 20000));
    const auto a = kernels::monte_carlo(spec, shape, k, samples, 99);
    const auto b = kernels::monte_carlo_serial(spec, shape, k, samples, 99);
    CHECK(a.samples == samples);
    CHECK(same_bits(a.mean, b.mean));
    CHECK(same_bits(a.m2, b.m2));
  }
}

TEST_CASE("tail cutoff trims the window without moving the expectation") {
  const ProblemShape shape(50000, 21000);
  const Count k = 17000;
  const auto full = kernels::hypergeometric_pmf(shape, k);
  const auto cut = kernels::hypergeometric_pmf(shape, k, kernels::kExpectationTailCutoff);
  CHECK(cut.window.size() < full.window.size());
  CHECK(cut.window.lo >= full.window.lo);
  CHECK(cut.window.hi <= full.window.hi);

  for (const auto& spec : dd_catalog()) {
    double reference = 0.0;
    for (Count s = full.window.lo; s <= full.window.hi; ++s) {
      reference += full.pmf[static_cast<std::size_t>(s - full.window.lo)] *
                   detail::evaluate_unchecked(spec, counts_at(shape, k, s));
    }
    const double got = kernels::exact_expectation(spec, shape, k);
    CHECK(std::abs(got - reference) <= 1e-12 * std::max(1.0, std::abs(reference)));
  }
}

TEST_CASE("pmf at the extremes of the support") {
  const auto one = kernels::hypergeometric_pmf(ProblemShape(1, 1), 1);
  CHECK(one.pmf.size() == 1);
  CHECK(one.pmf[0] == 1.0);
  const auto big = kernels::hypergeometric_pmf(ProblemShape(100000, 50000), 50000);
  double total = 0.0;
  for (double x : big.pmf) total += x;
  CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("mix_seed separates streams") {
  CHECK(kernels::mix_seed(1, 0) != kernels::mix_seed(1, 1));
  CHECK(kernels::mix_seed(1, 0) != kernels::mix_seed(2, 0));
  CHECK(kernels::mix_seed(7, 3) == kernels::mix_seed(7, 3));
}

}  // TEST_SUITE
