#include <doctest.h>

#include <cmath>

#include "dutchdraw/baselines.hpp"
#include "gen.hpp"

using namespace dutchdraw;

namespace {

BaselineResult best(MeasureKind kind, Count m, Count p, Direction d) {
  return baseline(make_spec(kind), ProblemShape(m, p), d);
}

std::vector<Count> members(MeasureKind kind, Count m, Count p, Direction d) {
  return best(kind, m, p, d).argopt.materialize();
}

std::vector<Count> range(Count lo, Count hi) {
  std::vector<Count> out;
  for (Count k = lo; k <= hi; ++k) out.push_back(k);
  return out;
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("closed form equals the exhaustive scan on random shapes") {
  gen::Gen g(41);
  int compared = 0;
  for (int it = 0; it < 1000; ++it) {
    const ProblemShape shape = g.shape(it < 900 ? 60 : 400);
    for (const auto& spec : dd_catalog(0.3 + 2.5 * g.unit())) {
      if (feasible_ks(spec, shape).empty()) {
        CHECK_THROWS_AS(baseline(spec, shape, Direction::Max), Error);
        continue;
      }
      for (Direction d : {Direction::Min, Direction::Max}) {
        const auto closed = baseline(spec, shape, d);
        const auto scan = baseline_exhaustive(spec, shape, d);
        INFO(display_name(spec.id), " M=", shape.m, " P=", shape.p, " dir=", int(d));
        CHECK(std::abs(closed.value - scan.value) <= 1e-9 * std::max(1.0, std::abs(scan.value)));
        CHECK(same_members(closed.argopt, scan.argopt));
        ++compared;
      }
    }
  }
  CHECK(compared > 20000);
}

TEST_CASE("argopt sets at the edges") {
  using D = Direction;
  CHECK(members(MeasureKind::ACC, 10, 3, D::Max) == std::vector<Count>{0});
  CHECK(members(MeasureKind::ACC, 10, 7, D::Max) == std::vector<Count>{10});
  CHECK(members(MeasureKind::ACC, 10, 5, D::Max) == range(0, 10));
  CHECK(members(MeasureKind::ACC, 10, 3, D::Min) == std::vector<Count>{10});
  CHECK(members(MeasureKind::KAPPA, 6, 6, D::Max) == range(0, 5));
  CHECK(members(MeasureKind::KAPPA, 6, 0, D::Max) == range(1, 6));
  CHECK(members(MeasureKind::TS, 6, 1, D::Max) == range(1, 6));
  CHECK(members(MeasureKind::TS, 6, 2, D::Max) == std::vector<Count>{6});
  CHECK(members(MeasureKind::G2, 6, 2, D::Min) == (std::vector<Count>{0, 6}));
  CHECK(members(MeasureKind::MCC, 6, 2, D::Max) == range(1, 5));
  CHECK(members(MeasureKind::TP, 6, 0, D::Max) == range(0, 6));
  CHECK(members(MeasureKind::PPV, 6, 2, D::Min) == range(1, 6));
  CHECK(best(MeasureKind::FBETA, 303, 139, D::Min).argopt.materialize() == std::vector<Count>{1});
  CHECK(best(MeasureKind::G2, 10, 9, D::Max).argopt.materialize() == std::vector<Count>{3});
  CHECK(best(MeasureKind::G2, 10, 9, D::Max).method == BaselineMethod::Exhaustive);
  CHECK(best(MeasureKind::ACC, 10, 9, D::Max).method == BaselineMethod::ClosedForm);
}

TEST_CASE("errors") {
  try {
    best(MeasureKind::TPR, 5, 0, Direction::Max);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndefinedMeasure);
  }
  try {
    best(MeasureKind::PT, 5, 2, Direction::Max);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedMeasure);
  }
  // M = 1 leaves MCC with no k that has both predicted classes.
  CHECK_THROWS_AS(best(MeasureKind::MCC, 1, 1, Direction::Max), Error);
}

TEST_CASE("duality and ordering properties") {
  gen::Gen g(42);
  for (int it = 0; it < 2000; ++it) {
    const ProblemShape shape = g.shape(1000);
    if (shape.p == 0 || shape.p == shape.m) continue;
    const Count m = shape.m, p = shape.p;
    auto v = [&](MeasureKind k, Direction d) { return best(k, m, p, d).value; };
    CHECK(v(MeasureKind::FNR, Direction::Max) == doctest::Approx(1 - v(MeasureKind::TPR, Direction::Min)));
    CHECK(v(MeasureKind::FPR, Direction::Min) == doctest::Approx(1 - v(MeasureKind::TNR, Direction::Max)));
    CHECK(v(MeasureKind::FDR, Direction::Max) == doctest::Approx(1 - v(MeasureKind::PPV, Direction::Min)));
    CHECK(v(MeasureKind::FN, Direction::Max) == doctest::Approx(double(p) - v(MeasureKind::TP, Direction::Min)));
    for (const auto& spec : dd_catalog()) {
      if (spec.id.kind == MeasureKind::G2 && m * p > 200000) continue;
      if (feasible_ks(spec, shape).empty()) continue;
      const auto lo = baseline(spec, shape, Direction::Min);
      const auto hi = baseline(spec, shape, Direction::Max);
      CHECK(lo.value <= hi.value + 1e-12);
      const Codomain c = shape_codomain(spec, shape);
      CHECK(lo.value >= c.lo - 1e-12);
      CHECK(hi.value <= c.hi + 1e-12);
    }
  }
}

TEST_CASE("F-beta maximum grows with P and shrinks with beta") {
  for (Count m : {10, 97, 1000}) {
    double prev = -1.0;
    for (Count p = 1; p <= m; ++p) {
      const double v = best(MeasureKind::FBETA, m, p, Direction::Max).value;
      CHECK(v > prev);
      prev = v;
    }
  }
  const ProblemShape shape(303, 139);
  CHECK(baseline(make_spec(MeasureId::fbeta(2.0)), shape, Direction::Max).value >
        baseline(make_spec(MeasureId::fbeta(1.0)), shape, Direction::Max).value);
}

TEST_CASE("ThetaStarSet canonical forms") {
  CHECK(ThetaStarSet::from_members(4, {0, 1, 2, 3, 4}).kind == ThetaStarSet::Kind::All);
  const auto except = ThetaStarSet::from_members(4, {1, 2, 3, 4});
  CHECK(except.kind == ThetaStarSet::Kind::AllExcept);
  CHECK(except.ks == std::vector<Count>{0});
  CHECK(except.materialize() == range(1, 4));
  const auto only = ThetaStarSet::from_members(4, {3, 1, 3});
  CHECK(only.kind == ThetaStarSet::Kind::Only);
  CHECK(only.ks == (std::vector<Count>{1, 3}));
  CHECK_THROWS_AS(ThetaStarSet::from_members(4, {}), Error);
  CHECK_THROWS_AS(ThetaStarSet::from_members(4, {5}), Error);
}

TEST_CASE("rescale branches") {
  const RescaleSpec s{0.2, 0.6, 0.0, 1.0};
  CHECK(rescale(0.0, s) == -1.0);
  CHECK(rescale(0.2, s) == -1.0);
  CHECK(rescale(0.4, s) == doctest::Approx(-0.5));
  CHECK(rescale(0.6, s) == 0.0);
  CHECK(rescale(0.8, s) == doctest::Approx(0.5));
  CHECK(rescale(1.0, s) == 1.0);

  auto code = [](double mu, RescaleSpec spec) {
    try {
      rescale(mu, spec);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::LengthMismatch;  // sentinel: no error
  };
  CHECK(code(-0.1, s) == ErrorCode::InvalidArgument);
  CHECK(code(1.1, s) == ErrorCode::InvalidArgument);
  CHECK(code(NAN, s) == ErrorCode::InvalidArgument);
  CHECK(code(0.5, {0.6, 0.2, 0.0, 1.0}) == ErrorCode::InvalidArgument);
  CHECK(code(1.0, {0.5, 1.0, 0.0, 1.0}) == ErrorCode::LengthMismatch);  // mu == delta_max
  CHECK(rescale(1.0, {0.5, 1.0, 0.0, 1.0}) == 0.0);
  CHECK(code(1.2, {0.5, 1.0, 0.0, 1.0}) == ErrorCode::DegenerateScale);
  // delta_min == delta_max: everything up to it maps to -1.
  CHECK(rescale(0.5, {0.5, 0.5, 0.0, 1.0}) == -1.0);
}

TEST_CASE("rescale is monotone on random specs") {
  gen::Gen g(43);
  for (int it = 0; it < 500; ++it) {
    double xs[4] = {g.unit(), g.unit(), g.unit(), g.unit()};
    std::sort(xs, xs + 4);
    if (xs[3] == xs[2]) continue;
    const RescaleSpec s{xs[1], xs[2], xs[0], xs[3]};
    double prev = -2.0;
    for (int i = 0; i <= 200; ++i) {
      const double mu = i == 200 ? s.mu_max : s.mu_min + (s.mu_max - s.mu_min) * i / 200.0;
      const double r = rescale(mu, s);
      CHECK(r >= -1.0);
      CHECK(r <= 1.0);
      CHECK(r >= prev);
      prev = r;
    }
  }
}

}  // TEST_SUITE
