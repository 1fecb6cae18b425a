#pragma once

// Brute-force ground truth: enumerate every k-subset of M observations as a
// prediction, evaluate the measure on each, and average. Shares nothing with
// the hypergeometric kernels except evaluate_measure itself.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dutchdraw/baselines.hpp"

namespace dutchdraw::oracle {

inline constexpr Count kMaxEnumerationM = 20;

/// Mean of evaluate_measure over all C(M, k) predictions, against y_true =
/// P ones followed by M - P zeros. Throws TooLarge for M > 20.
double enumerate_expectation(const MeasureSpec& spec, const ProblemShape& shape, Count k);

/// Same, against an arbitrary binary y_true of length M.
double enumerate_expectation(const MeasureSpec& spec, std::span<const int> y_true, Count k);

/// Relative frequency of each TP value over all C(M, k) subsets.
std::map<Count, double> enumerate_tp_histogram(const ProblemShape& shape, Count k);

struct Failure {
  std::string cell;
  double expected = 0.0;
  double got = 0.0;
  std::string detail;

  friend bool operator<(const Failure& a, const Failure& b) { return a.cell < b.cell; }
};

struct OracleReport {
  std::uint64_t checked = 0;
  double max_abs_error = 0.0;
  std::vector<Failure> failures;  // sorted by cell

  bool ok() const noexcept { return failures.empty(); }
};

/// Sweeps every (M <= max_m, P, k, measure) cell: enumeration vs exact vs
/// closed form, enumeration histogram vs tp_pmf, and baseline() vs both the
/// exhaustive scan and the enumeration-derived optimum. FBETA is swept at
/// beta = 1 and beta = 2. Cells are processed in parallel; the merged report
/// is independent of the thread count.
OracleReport validate_all(Count max_m, double tolerance);
OracleReport validate_all_serial(Count max_m, double tolerance);

struct McCase {
  MeasureId measure;
  Count m = 1;
  Count p = 0;
  Count k = 0;
  double exact = 0.0;
  double mc = 0.0;
  double stderr_ = 0.0;
  bool within = false;  // |mc - exact| <= 4 stderr (or <= 1e-12 when stderr is 0)
};

struct McPanelReport {
  std::vector<McCase> cases;
  std::size_t passed = 0;
  std::size_t required = 0;  // ceil(0.94 * cases), i.e. 47 of 50

  bool ok() const noexcept { return passed >= required; }
};

/// Random (measure, M <= max_m, P, k) cells, each estimated by Monte Carlo
/// with `samples` draws and compared to the exact expectation.
McPanelReport monte_carlo_panel(std::size_t cells, std::uint64_t samples, std::uint64_t seed,
                                Count max_m = 100);

}  // namespace dutchdraw::oracle
