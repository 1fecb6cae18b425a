#include <doctest.h>

#include <cmath>

#include "dutchdraw/measures.hpp"
#include "gen.hpp"

using namespace dutchdraw;

namespace {

double eval(MeasureKind kind, const ConfusionCounts& c) { return evaluate_measure(make_spec(kind), c); }

ErrorCode code_of(MeasureKind kind, const ConfusionCounts& c) {
  try {
    eval(kind, c);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("catalog order and size") {
  const auto all = catalog();
  REQUIRE(all.size() == 23);
  CHECK(all.front().id.kind == MeasureKind::TP);
  CHECK(all.back().id.kind == MeasureKind::PT);
  CHECK(dd_catalog().size() == 22);
  for (const auto& s : dd_catalog()) CHECK(s.eligible_for_dd);
  CHECK_FALSE(make_spec(MeasureKind::PT).eligible_for_dd);
  CHECK_FALSE(make_spec(MeasureKind::G2).is_linear_in_tp);
  CHECK_FALSE(make_spec(MeasureKind::TS).is_linear_in_tp);
  CHECK(make_spec(MeasureKind::MCC).is_linear_in_tp);
}

TEST_CASE("hand-computed values") {
  const ConfusionCounts c{3, 1, 2, 4};  // P = 5, N = 5, P-hat = 4, M = 10
  CHECK(eval(MeasureKind::TPR, c) == doctest::Approx(0.6));
  CHECK(eval(MeasureKind::TNR, c) == doctest::Approx(0.8));
  CHECK(eval(MeasureKind::FNR, c) == doctest::Approx(0.4));
  CHECK(eval(MeasureKind::FPR, c) == doctest::Approx(0.2));
  CHECK(eval(MeasureKind::PPV, c) == doctest::Approx(0.75));
  CHECK(eval(MeasureKind::NPV, c) == doctest::Approx(4.0 / 6.0));
  CHECK(eval(MeasureKind::FDR, c) == doctest::Approx(0.25));
  CHECK(eval(MeasureKind::FOR, c) == doctest::Approx(2.0 / 6.0));
  CHECK(evaluate_measure(make_spec(MeasureId::fbeta(1.0)), c) == doctest::Approx(6.0 / 9.0));
  CHECK(evaluate_measure(make_spec(MeasureId::fbeta(2.0)), c) ==
        doctest::Approx(5.0 * 0.75 * 0.6 / (4.0 * 0.75 + 0.6)));
  CHECK(eval(MeasureKind::J, c) == doctest::Approx(0.4));
  CHECK(eval(MeasureKind::MK, c) == doctest::Approx(0.75 + 4.0 / 6.0 - 1.0));
  CHECK(eval(MeasureKind::ACC, c) == doctest::Approx(0.7));
  CHECK(eval(MeasureKind::BACC, c) == doctest::Approx(0.7));
  CHECK(eval(MeasureKind::MCC, c) == doctest::Approx(10.0 / std::sqrt(600.0)));
  CHECK(eval(MeasureKind::KAPPA, c) == doctest::Approx(0.4));
  CHECK(eval(MeasureKind::FM, c) == doctest::Approx(std::sqrt(0.45)));
  CHECK(eval(MeasureKind::G2, c) == doctest::Approx(std::sqrt(0.48)));
  CHECK(eval(MeasureKind::TS, c) == doctest::Approx(0.5));
  CHECK(eval(MeasureKind::PT, c) == doctest::Approx((std::sqrt(0.12) - 0.2) / 0.4));
  CHECK(eval(MeasureKind::TP, c) == 3);
  CHECK(eval(MeasureKind::FN, c) == 2);
}

TEST_CASE("definedness errors") {
  CHECK(code_of(MeasureKind::TPR, {0, 2, 0, 3}) == ErrorCode::UndefinedMeasure);
  CHECK(code_of(MeasureKind::TNR, {2, 0, 3, 0}) == ErrorCode::UndefinedMeasure);
  CHECK(code_of(MeasureKind::PPV, {0, 0, 2, 3}) == ErrorCode::UndefinedMeasure);
  CHECK(code_of(MeasureKind::NPV, {2, 3, 0, 0}) == ErrorCode::UndefinedMeasure);
  CHECK(code_of(MeasureKind::MCC, {2, 3, 0, 0}) == ErrorCode::UndefinedMeasure);
  // kappa: everything predicted positive on an all-positive set
  CHECK(code_of(MeasureKind::KAPPA, {4, 0, 0, 0}) == ErrorCode::UndefinedMeasure);
  CHECK(code_of(MeasureKind::KAPPA, {0, 0, 0, 4}) == ErrorCode::UndefinedMeasure);
  CHECK(code_of(MeasureKind::PT, {2, 2, 2, 2}) == ErrorCode::PtDenominatorZero);
  CHECK(code_of(MeasureKind::ACC, {0, 0, 0, 0}) == ErrorCode::InvalidArgument);
  CHECK(code_of(MeasureKind::TS, {0, 1, 0, 3}) == ErrorCode::UndefinedMeasure);
  CHECK(eval(MeasureKind::TS, {0, 1, 1, 3}) == 0.0);
  CHECK(eval(MeasureKind::TP, {0, 0, 0, 1}) == 0.0);
}

TEST_CASE("check_definedness reports every violation") {
  const auto v = check_definedness(make_spec(MeasureKind::MCC), 4, 0, 0);
  CHECK(v.size() == 2);
  CHECK(check_definedness(make_spec(MeasureKind::MCC), 4, 2, 4).size() == 1);
  CHECK(check_definedness(make_spec(MeasureKind::ACC), 1, 0, 0).empty());
}

TEST_CASE("property: values lie in the codomain and identities hold") {
  gen::Gen g(11);
  int evaluated = 0;
  for (int it = 0; it < 20000; ++it) {
    const ConfusionCounts c = g.counts(g.between(0, 1) ? 3 : 40);
    if (c.total() == 0) continue;
    for (const auto& spec : catalog(0.5 + 3.0 * g.unit())) {
      double v = 0.0;
      try {
        v = evaluate_measure(spec, c);
      } catch (const Error& e) {
        CHECK((e.code() == ErrorCode::UndefinedMeasure || e.code() == ErrorCode::PtDenominatorZero));
        continue;
      }
      ++evaluated;
      if (spec.id.kind == MeasureKind::PT) continue;  // may leave [0, 1] when TPR < FPR
      REQUIRE(std::isfinite(v));
      CHECK(v >= spec.codomain.lo - 1e-12);
      CHECK(v <= spec.codomain.hi + 1e-12);
    }
    if (c.positives() > 0 && c.negatives() > 0) {
      const double tpr = eval(MeasureKind::TPR, c), tnr = eval(MeasureKind::TNR, c);
      CHECK(tpr + eval(MeasureKind::FNR, c) == doctest::Approx(1.0));
      CHECK(tnr + eval(MeasureKind::FPR, c) == doctest::Approx(1.0));
      CHECK(eval(MeasureKind::BACC, c) == doctest::Approx((tpr + tnr) / 2));
      CHECK(eval(MeasureKind::J, c) == doctest::Approx(tpr + tnr - 1));
    }
    if (c.predicted_positives() > 0 && c.positives() > 0) {
      const double ppv = eval(MeasureKind::PPV, c), tpr = eval(MeasureKind::TPR, c);
      CHECK(ppv + eval(MeasureKind::FDR, c) == doctest::Approx(1.0));
      const double f1 = ppv + tpr > 0 ? 2 * ppv * tpr / (ppv + tpr) : 0.0;
      CHECK(evaluate_measure(make_spec(MeasureId::fbeta(1.0)), c) == doctest::Approx(f1));
    }
  }
  CHECK(evaluated > 100000);
}

TEST_CASE("names and parsing") {
  CHECK(display_name(MeasureId::fbeta(1.0)) == "F1");
  CHECK(display_name(MeasureId::fbeta(2.0)) == "F2");
  CHECK(display_name(MeasureId::fbeta(0.5)).rfind("Fbeta(0.5", 0) == 0);
  CHECK(parse_measure("f1")->kind == MeasureKind::FBETA);
  CHECK(parse_measure("FBETA", 0.5)->beta == 0.5);
  CHECK(parse_measure("accuracy")->kind == MeasureKind::ACC);
  CHECK(parse_measure("kappa")->kind == MeasureKind::KAPPA);
  CHECK(parse_measure("g2")->kind == MeasureKind::G2);
  CHECK_FALSE(parse_measure("nonsense").has_value());
  for (const auto& spec : catalog()) {
    const auto back = parse_measure(kind_name(spec.id.kind), spec.id.beta);
    REQUIRE(back.has_value());
    CHECK(*back == spec.id);
  }
  CHECK(prefers_minimum(MeasureKind::FOR));
  CHECK_FALSE(prefers_minimum(MeasureKind::TS));
}

TEST_CASE("beta validation") {
  CHECK_THROWS_AS(make_spec(MeasureId::fbeta(0.0)), Error);
  CHECK_THROWS_AS(make_spec(MeasureId::fbeta(-1.0)), Error);
  CHECK_THROWS_AS(make_spec(MeasureId::fbeta(INFINITY)), Error);
  CHECK_NOTHROW(make_spec(MeasureId::fbeta(1e-3)));
}

TEST_CASE("confusion_counts") {
  const std::vector<int> t{1, 1, 0, 0, 1}, p{1, 0, 1, 0, 1};
  CHECK(confusion_counts(t, p) == ConfusionCounts{2, 1, 1, 1});
  const std::vector<int> short_p{1, 0};
  try {
    confusion_counts(t, short_p);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
  const std::vector<int> bad{1, 2, 0, 0, 1};
  try {
    confusion_counts(t, bad);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonBinaryValue);
  }
}

}  // TEST_SUITE
