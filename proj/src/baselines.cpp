#include "dutchdraw/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dutchdraw/expectations.hpp"
#include "dutchdraw/kernels.hpp"

namespace dutchdraw {

std::vector<Count> ThetaStarSet::materialize() const {
  std::vector<Count> out;
  switch (kind) {
    case Kind::Only: return ks;
    case Kind::All:
      for (Count k = 0; k <= m; ++k) out.push_back(k);
      return out;
    case Kind::AllExcept:
      for (Count k = 0; k <= m; ++k) {
        if (!std::binary_search(ks.begin(), ks.end(), k)) out.push_back(k);
      }
      return out;
  }
  return out;
}

ThetaStarSet ThetaStarSet::from_members(Count m, std::vector<Count> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty() || members.front() < 0 || members.back() > m) {
    throw Error(ErrorCode::InvalidArgument, "argopt set must be a non-empty subset of [0, M]");
  }
  if (static_cast<Count>(members.size()) == m + 1) return ThetaStarSet{Kind::All, {}, m};
  std::vector<Count> complement;
  for (Count k = 0; k <= m; ++k) {
    if (!std::binary_search(members.begin(), members.end(), k)) complement.push_back(k);
  }
  if (complement.size() < members.size()) {
    return ThetaStarSet{Kind::AllExcept, std::move(complement), m};
  }
  return ThetaStarSet{Kind::Only, std::move(members), m};
}

bool same_members(const ThetaStarSet& a, const ThetaStarSet& b) {
  return a.m == b.m && a.materialize() == b.materialize();
}

namespace {

BaselineResult make(const MeasureSpec& spec, const ProblemShape& shape, Direction dir, double value,
                    std::vector<Count> members, BaselineMethod method = BaselineMethod::ClosedForm) {
  return BaselineResult{spec.id, dir, value, ThetaStarSet::from_members(shape.m, std::move(members)),
                        method};
}

std::vector<Count> all_except(Count m, std::initializer_list<Count> removed) {
  std::vector<Count> out;
  for (Count k = 0; k <= m; ++k) {
    if (std::find(removed.begin(), removed.end(), k) == removed.end()) out.push_back(k);
  }
  return out;
}

std::vector<Count> all_of(Count m) { return all_except(m, {}); }

void reject_pt(const MeasureSpec& spec) {
  if (!spec.eligible_for_dd) {
    throw Error(ErrorCode::UnsupportedMeasure, display_name(spec.id) + " has no Dutch Draw baseline");
  }
}

// Raises UndefinedMeasure with the violations at k = 0 and k = M when no k
// is feasible.
std::vector<Count> require_some_feasible(const MeasureSpec& spec, const ProblemShape& shape) {
  auto ks = feasible_ks(spec, shape);
  if (ks.empty()) {
    require_feasible(spec, shape, 0);
    require_feasible(spec, shape, shape.m);
  }
  return ks;
}

}  // namespace

BaselineResult baseline_exhaustive(const MeasureSpec& spec, const ProblemShape& shape,
                                   Direction direction) {
  reject_pt(spec);
  const auto ks = require_some_feasible(spec, shape);
  const auto values = kernels::expectation_scan(spec, shape, ks);

  const bool maximize = direction == Direction::Max;
  double best = values.front();
  for (double v : values) best = maximize ? std::max(best, v) : std::min(best, v);

  std::vector<Count> members;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (std::abs(values[i] - best) <= kArgoptTolerance) members.push_back(ks[i]);
  }
  return make(spec, shape, direction, best, std::move(members), BaselineMethod::Exhaustive);
}

BaselineResult baseline(const MeasureSpec& spec, const ProblemShape& shape, Direction direction) {
  reject_pt(spec);
  require_some_feasible(spec, shape);

  const Count m = shape.m;
  const Count p = shape.p;
  const Count n = shape.negatives();
  const double md = static_cast<double>(m);
  const double pd = static_cast<double>(p);
  const double nd = static_cast<double>(n);
  const double b2 = spec.id.beta * spec.id.beta;
  const bool max = direction == Direction::Max;
  auto pick = [&](double vmax, std::vector<Count> kmax, double vmin, std::vector<Count> kmin) {
    return max ? make(spec, shape, direction, vmax, std::move(kmax))
               : make(spec, shape, direction, vmin, std::move(kmin));
  };

  switch (spec.id.kind) {
    // Expectations increasing in k when the relevant count is positive,
    // constant (zero) otherwise.
    case MeasureKind::TP:
      if (p == 0) return make(spec, shape, direction, 0.0, all_of(m));
      return pick(pd, {m}, 0.0, {0});
    case MeasureKind::FP:
      if (n == 0) return make(spec, shape, direction, 0.0, all_of(m));
      return pick(nd, {m}, 0.0, {0});
    case MeasureKind::TN:
      if (n == 0) return make(spec, shape, direction, 0.0, all_of(m));
      return pick(nd, {0}, 0.0, {m});
    case MeasureKind::FN:
      if (p == 0) return make(spec, shape, direction, 0.0, all_of(m));
      return pick(pd, {0}, 0.0, {m});
    case MeasureKind::TPR:
    case MeasureKind::FPR: return pick(1.0, {m}, 0.0, {0});
    case MeasureKind::TNR:
    case MeasureKind::FNR: return pick(1.0, {0}, 0.0, {m});

    case MeasureKind::PPV: return make(spec, shape, direction, pd / md, all_except(m, {0}));
    case MeasureKind::FDR: return make(spec, shape, direction, 1.0 - pd / md, all_except(m, {0}));
    case MeasureKind::NPV: return make(spec, shape, direction, 1.0 - pd / md, all_except(m, {m}));
    case MeasureKind::FOR: return make(spec, shape, direction, pd / md, all_except(m, {m}));

    case MeasureKind::FBETA:
      return pick((1.0 + b2) * pd / (b2 * pd + md), {m}, (1.0 + b2) * pd / (md * (b2 * pd + 1.0)), {1});
    case MeasureKind::FM: return pick(std::sqrt(pd / md), {m}, std::sqrt(pd) / md, {1});

    case MeasureKind::J: return make(spec, shape, direction, 0.0, all_of(m));
    case MeasureKind::BACC: return make(spec, shape, direction, 0.5, all_of(m));
    case MeasureKind::MK:
    case MeasureKind::MCC: return make(spec, shape, direction, 0.0, all_except(m, {0, m}));
    case MeasureKind::KAPPA:
      if (p == m) return make(spec, shape, direction, 0.0, all_except(m, {m}));
      if (p == 0) return make(spec, shape, direction, 0.0, all_except(m, {0}));
      return make(spec, shape, direction, 0.0, all_of(m));

    case MeasureKind::ACC: {
      const double hi = std::max(pd / md, 1.0 - pd / md);
      const double lo = std::min(pd / md, 1.0 - pd / md);
      if (2 * p == m) return make(spec, shape, direction, 0.5, all_of(m));
      if (2 * p < m) return pick(hi, {0}, lo, {m});
      return pick(hi, {m}, lo, {0});
    }

    case MeasureKind::G2:
      if (max) return baseline_exhaustive(spec, shape, direction);
      return make(spec, shape, direction, 0.0, {0, m});

    case MeasureKind::TS:
      if (!max) return make(spec, shape, direction, 0.0, {0});
      if (p == 1) return make(spec, shape, direction, 1.0 / md, all_except(m, {0}));
      return make(spec, shape, direction, pd / md, {m});

    case MeasureKind::PT: break;
  }
  throw Error(ErrorCode::UnsupportedMeasure, display_name(spec.id) + " has no Dutch Draw baseline");
}

Codomain shape_codomain(const MeasureSpec& spec, const ProblemShape& shape) {
  switch (spec.id.kind) {
    case MeasureKind::TP:
    case MeasureKind::FN: return {0.0, static_cast<double>(shape.p)};
    case MeasureKind::TN:
    case MeasureKind::FP: return {0.0, static_cast<double>(shape.negatives())};
    default: return spec.codomain;
  }
}

double rescale(double mu, const RescaleSpec& s) {
  if (!std::isfinite(mu) || !std::isfinite(s.delta_min) || !std::isfinite(s.delta_max) ||
      !std::isfinite(s.mu_min) || !std::isfinite(s.mu_max)) {
    throw Error(ErrorCode::InvalidArgument, "rescale inputs must be finite");
  }
  if (!(s.mu_min <= s.delta_min && s.delta_min <= s.delta_max && s.delta_max <= s.mu_max)) {
    throw Error(ErrorCode::InvalidArgument, "expected mu_min <= delta_min <= delta_max <= mu_max");
  }
  if (mu < s.mu_min) throw Error(ErrorCode::InvalidArgument, "score lies below the codomain");
  if (mu <= s.delta_min) return -1.0;
  if (mu <= s.delta_max) return (mu - s.delta_max) / (s.delta_max - s.delta_min);
  if (s.mu_max == s.delta_max) {
    throw Error(ErrorCode::DegenerateScale, "the best baseline already equals the codomain maximum");
  }
  if (mu > s.mu_max) throw Error(ErrorCode::InvalidArgument, "score lies above the codomain");
  return (mu - s.delta_max) / (s.mu_max - s.delta_max);
}

}  // namespace dutchdraw
