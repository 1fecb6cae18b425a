#pragma once

// Dutch Draw baselines: the smallest and largest expected score any DD
// classifier can reach on a dataset of shape (M, P), with the set of
// predicted-positive counts k that reach it.

#include <vector>

#include "dutchdraw/dd_core.hpp"

namespace dutchdraw {

enum class Direction { Min, Max };

/// Absolute tolerance for collecting ties during exhaustive scans.
inline constexpr double kArgoptTolerance = 1e-10;

/// Subset of {0, ..., M}, stored the way the baseline tables print it.
struct ThetaStarSet {
  enum class Kind { Only, All, AllExcept };

  Kind kind = Kind::All;
  std::vector<Count> ks;  // sorted, unique; empty for All
  Count m = 1;

  std::vector<Count> materialize() const;

  /// Canonical descriptor for a member list: All for the full grid,
  /// AllExcept when the complement is the shorter list, Only otherwise.
  static ThetaStarSet from_members(Count m, std::vector<Count> members);
};

bool same_members(const ThetaStarSet& a, const ThetaStarSet& b);

enum class BaselineMethod { ClosedForm, Exhaustive };

struct BaselineResult {
  MeasureId measure;
  Direction direction = Direction::Max;
  double value = 0.0;
  ThetaStarSet argopt;
  BaselineMethod method = BaselineMethod::ClosedForm;
};

/// Closed-form optimum where one is known; G2's maximum falls back to the
/// exhaustive scan. Throws UnsupportedMeasure for PT and UndefinedMeasure
/// when no k is feasible for the shape.
BaselineResult baseline(const MeasureSpec& spec, const ProblemShape& shape, Direction direction);

/// Scans every feasible k with the exact expectation and returns the
/// optimum with every k within kArgoptTolerance of it.
BaselineResult baseline_exhaustive(const MeasureSpec& spec, const ProblemShape& shape,
                                   Direction direction);

/// Codomain of a measure on a given shape; the raw counts are bounded by P
/// (TP, FN) or M - P (TN, FP) instead of being unbounded.
Codomain shape_codomain(const MeasureSpec& spec, const ProblemShape& shape);

struct RescaleSpec {
  double delta_min = 0.0;
  double delta_max = 0.0;
  double mu_min = 0.0;
  double mu_max = 1.0;
};

/// Maps a score to [-1, 1]: -1 at or below delta_min, [-1, 0] up to
/// delta_max, (0, 1] above. Throws DegenerateScale when the branch that mu
/// lands in has a zero denominator, InvalidArgument when mu lies outside
/// [mu_min, mu_max] or the spec is not ordered.
double rescale(double mu, const RescaleSpec& spec);

}  // namespace dutchdraw
