#pragma once

// The Dutch Draw classifier family: a classifier that marks a uniformly
// random subset of k = round(M * theta) observations as positive, without
// looking at any feature. Everything here depends only on (M, P, k).

#include <cstdint>
#include <span>
#include <vector>

#include "dutchdraw/measures.hpp"

namespace dutchdraw {

struct ProblemShape {
  Count m = 1;
  Count p = 0;

  /// Throws InvalidArgument unless m >= 1 and 0 <= p <= m.
  ProblemShape(Count m_, Count p_);

  Count negatives() const noexcept { return m - p; }

  friend bool operator==(const ProblemShape&, const ProblemShape&) = default;
};

struct DiscreteTheta {
  ProblemShape shape;
  Count k = 0;  // predicted positives

  double theta_star() const noexcept {
    return static_cast<double>(k) / static_cast<double>(shape.m);
  }
};

struct LinearForm {
  double a = 0.0;
  double b = 0.0;

  double operator()(Count tp) const noexcept { return a * static_cast<double>(tp) + b; }
};

struct TpSupport {
  Count lo = 0;
  Count hi = 0;

  Count size() const noexcept { return hi - lo + 1; }
  bool contains(Count s) const noexcept { return s >= lo && s <= hi; }

  friend bool operator==(const TpSupport&, const TpSupport&) = default;
};

/// Law of TP under a Dutch Draw with k predicted positives: hypergeometric
/// with population M, P successes, k draws. Stored densely over the support.
struct TpDistribution {
  ProblemShape shape;
  Count k = 0;
  TpSupport support;
  std::vector<double> pmf;  // pmf[i] = P(TP = support.lo + i)

  double probability(Count s) const noexcept {
    return support.contains(s) ? pmf[static_cast<std::size_t>(s - support.lo)] : 0.0;
  }
  double mean() const noexcept;
};

/// k = round(M * theta), halves rounded up. Throws ThetaOutOfRange.
/// The overloads taking only M attach a shape with P = 0.
DiscreteTheta discretize_theta(double theta, const ProblemShape& shape);
DiscreteTheta discretize_theta(double theta, Count m);
std::vector<DiscreteTheta> theta_star_grid(const ProblemShape& shape);
std::vector<DiscreteTheta> theta_star_grid(Count m);

TpSupport tp_support(const ProblemShape& shape, Count k);
TpDistribution tp_pmf(const ProblemShape& shape, Count k);

/// Confusion counts implied by TP = s under k predicted positives.
ConfusionCounts counts_at(const ProblemShape& shape, Count k, Count s) noexcept;

/// Requirements a measure violates for every draw with k predicted
/// positives. Adds ChanceAgreementBelowOne for kappa at (k=M, P=M) and
/// (k=0, P=0). Empty means the DD expectation exists.
std::vector<Requirement> dd_violations(const MeasureSpec& spec, const ProblemShape& shape, Count k);
bool is_feasible(const MeasureSpec& spec, const ProblemShape& shape, Count k);
std::vector<Count> feasible_ks(const MeasureSpec& spec, const ProblemShape& shape);

/// Throws UndefinedMeasure (listing the violations) when k is infeasible.
void require_feasible(const MeasureSpec& spec, const ProblemShape& shape, Count k);

/// (a, b) with measure = a * TP + b. Throws NonlinearMeasure for G2, TS, PT
/// and UndefinedMeasure when k is infeasible.
LinearForm linear_form(const MeasureSpec& spec, const ProblemShape& shape, Count k);

/// Attainable values {a*s + b : s in support}, ascending.
std::vector<double> measure_range(const MeasureSpec& spec, const ProblemShape& shape, Count k);

/// Draws one Dutch Draw prediction for y_true. Deterministic in the seed.
/// Throws ShapeMismatch if y_true does not have length M with P ones.
std::vector<int> sample_dd(std::uint64_t seed, const ProblemShape& shape, Count k,
                           std::span<const int> y_true);

}  // namespace dutchdraw
