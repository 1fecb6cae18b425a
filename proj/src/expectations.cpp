#include "dutchdraw/expectations.hpp"

#include <cmath>

#include "dutchdraw/kernels.hpp"

namespace dutchdraw {

namespace {

void reject_pt(const MeasureSpec& spec) {
  if (!spec.eligible_for_dd) {
    throw Error(ErrorCode::UnsupportedMeasure,
                display_name(spec.id) + " has no Dutch Draw expectation");
  }
}

}  // namespace

ExpectationResult expectation_closed(const MeasureSpec& spec, const ProblemShape& shape, Count k) {
  reject_pt(spec);
  if (!spec.is_linear_in_tp) {
    throw Error(ErrorCode::NonlinearMeasure,
                display_name(spec.id) + " has no closed-form expectation");
  }
  require_feasible(spec, shape, k);

  const double m = static_cast<double>(shape.m);
  const double p = static_cast<double>(shape.p);
  const double n = static_cast<double>(shape.negatives());
  const double t = static_cast<double>(k) / m;  // theta*
  const double b2 = spec.id.beta * spec.id.beta;

  double v = 0.0;
  switch (spec.id.kind) {
    case MeasureKind::TP: v = t * p; break;
    case MeasureKind::TN: v = (1.0 - t) * n; break;
    case MeasureKind::FN: v = (1.0 - t) * p; break;
    case MeasureKind::FP: v = t * n; break;
    case MeasureKind::TPR:
    case MeasureKind::FPR: v = t; break;
    case MeasureKind::TNR:
    case MeasureKind::FNR: v = 1.0 - t; break;
    case MeasureKind::PPV:
    case MeasureKind::FOR: v = p / m; break;
    case MeasureKind::NPV:
    case MeasureKind::FDR: v = 1.0 - p / m; break;
    case MeasureKind::FBETA: v = (1.0 + b2) * t * p / (b2 * p + m * t); break;
    case MeasureKind::J:
    case MeasureKind::MK:
    case MeasureKind::MCC:
    case MeasureKind::KAPPA: v = 0.0; break;
    case MeasureKind::ACC: v = ((1.0 - t) * n + t * p) / m; break;
    case MeasureKind::BACC: v = 0.5; break;
    case MeasureKind::FM: v = std::sqrt(t * p / m); break;
    case MeasureKind::G2:
    case MeasureKind::TS:
    case MeasureKind::PT: break;
  }
  return ExpectationResult{v, ExpectationMethod::ClosedForm, std::nullopt};
}

ExpectationResult expectation_exact(const MeasureSpec& spec, const ProblemShape& shape, Count k) {
  reject_pt(spec);
  require_feasible(spec, shape, k);
  return ExpectationResult{kernels::exact_expectation(spec, shape, k),
                           ExpectationMethod::ExactSummation, std::nullopt};
}

ExpectationResult expectation_mc(const MeasureSpec& spec, const ProblemShape& shape, Count k,
                                 std::uint64_t samples, std::uint64_t seed) {
  reject_pt(spec);
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "at least one sample is required");
  require_feasible(spec, shape, k);
  const auto moments = kernels::monte_carlo(spec, shape, k, samples, seed);
  const double se = std::sqrt(moments.variance() / static_cast<double>(moments.samples));
  return ExpectationResult{moments.mean, ExpectationMethod::MonteCarlo, se};
}

double g2_second_moment(const ProblemShape& shape, Count k) {
  require_feasible(make_spec(MeasureKind::G2), shape, k);
  const double m = static_cast<double>(shape.m);
  const double t = static_cast<double>(k) / m;
  return t * (1.0 - t) * m / (m - 1.0);
}

}  // namespace dutchdraw
