#include "dutchdraw/dd_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "draw.hpp"
#include "dutchdraw/kernels.hpp"

namespace dutchdraw {

ProblemShape::ProblemShape(Count m_, Count p_) : m(m_), p(p_) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "M must be at least 1");
  if (p < 0 || p > m) throw Error(ErrorCode::InvalidArgument, "P must lie in [0, M]");
}

double TpDistribution::mean() const noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    acc += static_cast<double>(support.lo + static_cast<Count>(i)) * pmf[i];
  }
  return acc;
}

DiscreteTheta discretize_theta(double theta, const ProblemShape& shape) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw Error(ErrorCode::ThetaOutOfRange, "theta must lie in [0, 1]");
  }
  const auto k = static_cast<Count>(std::floor(static_cast<double>(shape.m) * theta + 0.5));
  return DiscreteTheta{shape, std::clamp<Count>(k, 0, shape.m)};
}

DiscreteTheta discretize_theta(double theta, Count m) {
  return discretize_theta(theta, ProblemShape(m, 0));
}

std::vector<DiscreteTheta> theta_star_grid(const ProblemShape& shape) {
  std::vector<DiscreteTheta> grid;
  grid.reserve(static_cast<std::size_t>(shape.m + 1));
  for (Count k = 0; k <= shape.m; ++k) grid.push_back(DiscreteTheta{shape, k});
  return grid;
}

std::vector<DiscreteTheta> theta_star_grid(Count m) { return theta_star_grid(ProblemShape(m, 0)); }

namespace {

void check_k(const ProblemShape& shape, Count k) {
  if (k < 0 || k > shape.m) {
    throw Error(ErrorCode::InvalidArgument, "k must lie in [0, M]");
  }
}

}  // namespace

TpSupport tp_support(const ProblemShape& shape, Count k) {
  check_k(shape, k);
  return TpSupport{std::max<Count>(0, k - shape.negatives()), std::min(shape.p, k)};
}

TpDistribution tp_pmf(const ProblemShape& shape, Count k) {
  check_k(shape, k);
  auto window = kernels::hypergeometric_pmf(shape, k);
  return TpDistribution{shape, k, window.window, std::move(window.pmf)};
}

ConfusionCounts counts_at(const ProblemShape& shape, Count k, Count s) noexcept {
  return ConfusionCounts{s, k - s, shape.p - s, shape.negatives() - k + s};
}

std::vector<Requirement> dd_violations(const MeasureSpec& spec, const ProblemShape& shape, Count k) {
  check_k(shape, k);
  auto v = check_definedness(spec, shape.m, shape.p, k);
  if (spec.id.kind == MeasureKind::KAPPA) {
    // 1 - P_e = 0 exactly when every observation and every prediction share
    // one class.
    if ((k == shape.m && shape.p == shape.m) || (k == 0 && shape.p == 0)) {
      v.push_back(Requirement::ChanceAgreementBelowOne);
    }
  }
  return v;
}

bool is_feasible(const MeasureSpec& spec, const ProblemShape& shape, Count k) {
  return dd_violations(spec, shape, k).empty();
}

std::vector<Count> feasible_ks(const MeasureSpec& spec, const ProblemShape& shape) {
  std::vector<Count> ks;
  for (Count k = 0; k <= shape.m; ++k) {
    if (is_feasible(spec, shape, k)) ks.push_back(k);
  }
  return ks;
}

void require_feasible(const MeasureSpec& spec, const ProblemShape& shape, Count k) {
  const auto v = dd_violations(spec, shape, k);
  if (v.empty()) return;
  std::string what = display_name(spec.id) + " at M=" + std::to_string(shape.m) +
                     ", P=" + std::to_string(shape.p) + ", k=" + std::to_string(k) + " requires";
  for (Requirement r : v) {
    what += " ";
    what += requirement_name(r);
  }
  throw Error(ErrorCode::UndefinedMeasure, what);
}

LinearForm linear_form(const MeasureSpec& spec, const ProblemShape& shape, Count k) {
  if (!spec.is_linear_in_tp) {
    throw Error(ErrorCode::NonlinearMeasure, display_name(spec.id) + " is not linear in TP");
  }
  require_feasible(spec, shape, k);
  const double m = static_cast<double>(shape.m);
  const double p = static_cast<double>(shape.p);
  const double n = static_cast<double>(shape.negatives());
  const double kk = static_cast<double>(k);
  const double b2 = spec.id.beta * spec.id.beta;

  switch (spec.id.kind) {
    case MeasureKind::TP: return {1.0, 0.0};
    case MeasureKind::TN: return {1.0, n - kk};
    case MeasureKind::FN: return {-1.0, p};
    case MeasureKind::FP: return {-1.0, kk};
    case MeasureKind::TPR: return {1.0 / p, 0.0};
    case MeasureKind::TNR: return {1.0 / n, (n - kk) / n};
    case MeasureKind::FNR: return {-1.0 / p, 1.0};
    case MeasureKind::FPR: return {-1.0 / n, kk / n};
    case MeasureKind::PPV: return {1.0 / kk, 0.0};
    case MeasureKind::NPV: return {1.0 / (m - kk), (m - kk - p) / (m - kk)};
    case MeasureKind::FDR: return {-1.0 / kk, 1.0};
    case MeasureKind::FOR: return {-1.0 / (m - kk), p / (m - kk)};
    case MeasureKind::FBETA: return {(1.0 + b2) / (b2 * p + kk), 0.0};
    case MeasureKind::J: return {m / (p * n), -kk / n};
    case MeasureKind::MK: return {m / (kk * (m - kk)), -p / (m - kk)};
    case MeasureKind::ACC: return {2.0 / m, (n - kk) / m};
    case MeasureKind::BACC: return {m / (2.0 * p * n), 0.5 - kk / (2.0 * n)};
    case MeasureKind::MCC: {
      const double scale = std::sqrt(p * n * kk * (m - kk));
      return {m / scale, -std::sqrt(p * kk) / std::sqrt(n * (m - kk))};
    }
    case MeasureKind::KAPPA: {
      const double denom = p * (m - kk) + n * kk;
      return {2.0 * m / denom, -2.0 * kk * p / denom};
    }
    case MeasureKind::FM: return {1.0 / std::sqrt(p * kk), 0.0};
    case MeasureKind::G2:
    case MeasureKind::TS:
    case MeasureKind::PT: break;
  }
  throw Error(ErrorCode::NonlinearMeasure, display_name(spec.id) + " is not linear in TP");
}

std::vector<double> measure_range(const MeasureSpec& spec, const ProblemShape& shape, Count k) {
  const LinearForm form = linear_form(spec, shape, k);
  const TpSupport support = tp_support(shape, k);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(support.size()));
  for (Count s = support.lo; s <= support.hi; ++s) values.push_back(form(s));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<int> sample_dd(std::uint64_t seed, const ProblemShape& shape, Count k,
                           std::span<const int> y_true) {
  check_k(shape, k);
  if (static_cast<Count>(y_true.size()) != shape.m) {
    throw Error(ErrorCode::ShapeMismatch, "y_true length differs from M");
  }
  Count ones = 0;
  for (int v : y_true) {
    if (v != 0 && v != 1) throw Error(ErrorCode::ShapeMismatch, "y_true must be binary");
    ones += v;
  }
  if (ones != shape.p) throw Error(ErrorCode::ShapeMismatch, "y_true does not contain P ones");

  std::mt19937_64 rng(seed);
  std::vector<Count> indices(static_cast<std::size_t>(shape.m));
  std::iota(indices.begin(), indices.end(), Count{0});
  detail::draw_subset(rng, indices, k);

  std::vector<int> prediction(static_cast<std::size_t>(shape.m), 0);
  for (Count i = 0; i < k; ++i) prediction[static_cast<std::size_t>(indices[static_cast<std::size_t>(i)])] = 1;
  return prediction;
}

}  // namespace dutchdraw
