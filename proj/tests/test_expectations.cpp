#include <doctest.h>

#include <cmath>

#include "dutchdraw/expectations.hpp"
#include "dutchdraw/oracle.hpp"
#include "gen.hpp"

using namespace dutchdraw;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_SUITE("expectations") {

TEST_CASE("closed form agrees with exact summation") {
  gen::Gen g(31);
  int checked = 0;
  for (int it = 0; it < 20000; ++it) {
    const ProblemShape shape = g.shape(500);
    const Count k = g.k(shape.m);
    const MeasureSpec spec = make_spec(g.pick(dd_catalog(0.2 + 3.0 * g.unit())).id);
    if (!spec.is_linear_in_tp || !is_feasible(spec, shape, k)) continue;
    const double closed = expectation_closed(spec, shape, k).value;
    const double exact = expectation_exact(spec, shape, k).value;
    CHECK(close(exact, closed, 1e-12));
    ++checked;
  }
  CHECK(checked > 5000);
}

TEST_CASE("exact summation agrees with enumeration on shuffled labels") {
  gen::Gen g(32);
  for (int it = 0; it < 300; ++it) {
    const ProblemShape shape = g.shape(12);
    const Count k = g.k(shape.m);
    const MeasureSpec spec = make_spec(g.pick(dd_catalog()).id);
    if (!is_feasible(spec, shape, k)) continue;
    const auto y = g.labels(shape.m, shape.p);
    CHECK(close(oracle::enumerate_expectation(spec, y, k), expectation_exact(spec, shape, k).value,
                1e-12));
  }
}

TEST_CASE("error semantics") {
  const ProblemShape shape(10, 4);
  CHECK(code_of([&] { expectation_closed(make_spec(MeasureKind::G2), shape, 3); }) ==
        ErrorCode::NonlinearMeasure);
  CHECK(code_of([&] { expectation_closed(make_spec(MeasureKind::TS), shape, 3); }) ==
        ErrorCode::NonlinearMeasure);
  CHECK(code_of([&] { expectation_exact(make_spec(MeasureKind::PT), shape, 3); }) ==
        ErrorCode::UnsupportedMeasure);
  CHECK(code_of([&] { expectation_closed(make_spec(MeasureKind::PPV), shape, 0); }) ==
        ErrorCode::UndefinedMeasure);
  CHECK(code_of([&] { expectation_exact(make_spec(MeasureKind::TPR), ProblemShape(10, 0), 3); }) ==
        ErrorCode::UndefinedMeasure);
  CHECK(code_of([&] { expectation_mc(make_spec(MeasureKind::ACC), shape, 3, 0, 1); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("G2 worked example") {
  const auto g2 = make_spec(MeasureKind::G2);
  const ProblemShape shape(10, 9);
  CHECK(std::abs(expectation_exact(g2, shape, 1).value - 0.3) <= 1e-12);
  CHECK(std::abs(expectation_exact(g2, shape, 2).value - 4.0 * std::sqrt(2.0) / 15.0) <= 1e-12);
  CHECK(std::abs(expectation_exact(g2, shape, 9).value - 0.1) <= 1e-12);
}

TEST_CASE("second moment of G2 and the Jensen bound") {
  const auto g2 = make_spec(MeasureKind::G2);
  gen::Gen g(33);
  for (int it = 0; it < 500; ++it) {
    const ProblemShape shape = g.shape(300);
    const Count k = g.k(shape.m);
    if (!is_feasible(g2, shape, k)) continue;
    const auto dist = tp_pmf(shape, k);
    double second = 0.0;
    for (Count s = dist.support.lo; s <= dist.support.hi; ++s) {
      const double v = evaluate_measure(g2, counts_at(shape, k, s));
      second += dist.probability(s) * v * v;
    }
    const double bound = g2_second_moment(shape, k);
    CHECK(close(second, bound, 1e-12));
    const double mean = expectation_exact(g2, shape, k).value;
    CHECK(mean * mean <= bound + 1e-12);
  }
}

TEST_CASE("Monte Carlo is seeded and centered") {
  const auto ts = make_spec(MeasureKind::TS);
  const ProblemShape shape(40, 13);
  const auto a = expectation_mc(ts, shape, 17, 50000, 5);
  const auto b = expectation_mc(ts, shape, 17, 50000, 5);
  CHECK(a.value == b.value);
  REQUIRE(a.stderr_.has_value());
  CHECK(*a.stderr_ > 0.0);
  CHECK(std::abs(a.value - expectation_exact(ts, shape, 17).value) <= 5.0 * *a.stderr_);
  CHECK(expectation_mc(ts, shape, 17, 50000, 6).value != a.value);

  // A degenerate distribution has zero spread.
  const auto tpr = expectation_mc(make_spec(MeasureKind::TPR), shape, 40, 1000, 1);
  CHECK(tpr.value == 1.0);
  CHECK(*tpr.stderr_ == 0.0);
}

}  // TEST_SUITE
