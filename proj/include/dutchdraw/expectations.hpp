#pragma once

#include <cstdint>
#include <optional>

#include "dutchdraw/dd_core.hpp"

namespace dutchdraw {

enum class ExpectationMethod { ClosedForm, ExactSummation, MonteCarlo };

struct ExpectationResult {
  double value = 0.0;
  ExpectationMethod method = ExpectationMethod::ClosedForm;
  std::optional<double> stderr_;  // Monte Carlo only
};

inline constexpr std::uint64_t kDefaultMonteCarloSamples = 100000;

/// Closed-form DD expectation of a linear measure as a function of
/// theta* = k/M. Throws UnsupportedMeasure for PT, NonlinearMeasure for G2
/// and TS, UndefinedMeasure for infeasible k.
ExpectationResult expectation_closed(const MeasureSpec& spec, const ProblemShape& shape, Count k);

/// Sum of measure(s) * P(TP = s) over the support. Works for every
/// DD-eligible measure, linear or not.
ExpectationResult expectation_exact(const MeasureSpec& spec, const ProblemShape& shape, Count k);

/// Empirical mean over `samples` Dutch Draws; stderr = sd / sqrt(samples).
ExpectationResult expectation_mc(const MeasureSpec& spec, const ProblemShape& shape, Count k,
                                 std::uint64_t samples, std::uint64_t seed);

/// E[G2^2] = theta*(1 - theta*) * M / (M - 1). Requires 0 < P < M.
double g2_second_moment(const ProblemShape& shape, Count k);

}  // namespace dutchdraw
