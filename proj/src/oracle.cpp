#include "dutchdraw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "dutchdraw/expectations.hpp"
#include "dutchdraw/kernels.hpp"

namespace dutchdraw::oracle {

namespace {

// Visits every k-subset of {0, ..., m-1} in lexicographic order.
template <class Visit>
void for_each_combination(Count m, Count k, Visit&& visit) {
  std::vector<Count> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), Count{0});
  while (true) {
    visit(std::span<const Count>(c));
    Count i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return;
    ++c[static_cast<std::size_t>(i)];
    for (Count j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::vector<int> canonical_labels(const ProblemShape& shape) {
  std::vector<int> y(static_cast<std::size_t>(shape.m), 0);
  std::fill_n(y.begin(), shape.p, 1);
  return y;
}

void check_size(Count m) {
  if (m > kMaxEnumerationM) {
    throw Error(ErrorCode::TooLarge, "subset enumeration is limited to M <= 20");
  }
}

std::vector<int> prediction_for(std::span<const Count> chosen, Count m) {
  std::vector<int> pred(static_cast<std::size_t>(m), 0);
  for (Count i : chosen) pred[static_cast<std::size_t>(i)] = 1;
  return pred;
}

}  // namespace

double enumerate_expectation(const MeasureSpec& spec, std::span<const int> y_true, Count k) {
  const auto m = static_cast<Count>(y_true.size());
  check_size(m);
  if (!spec.eligible_for_dd) {
    throw Error(ErrorCode::UnsupportedMeasure, display_name(spec.id) + " has no Dutch Draw expectation");
  }
  if (m < 1 || k < 0 || k > m) throw Error(ErrorCode::InvalidArgument, "need 0 <= k <= M, M >= 1");
  long double sum = 0.0L;
  std::uint64_t count = 0;
  for_each_combination(m, k, [&](std::span<const Count> chosen) {
    const auto pred = prediction_for(chosen, m);
    sum += evaluate_measure(spec, confusion_counts(y_true, pred));
    ++count;
  });
  return static_cast<double>(sum / static_cast<long double>(count));
}

double enumerate_expectation(const MeasureSpec& spec, const ProblemShape& shape, Count k) {
  check_size(shape.m);
  const auto y = canonical_labels(shape);
  return enumerate_expectation(spec, y, k);
}

std::map<Count, double> enumerate_tp_histogram(const ProblemShape& shape, Count k) {
  check_size(shape.m);
  if (k < 0 || k > shape.m) throw Error(ErrorCode::InvalidArgument, "need 0 <= k <= M");
  const auto y = canonical_labels(shape);
  std::map<Count, std::uint64_t> tally;
  std::uint64_t total = 0;
  for_each_combination(shape.m, k, [&](std::span<const Count> chosen) {
    const auto pred = prediction_for(chosen, shape.m);
    ++tally[confusion_counts(y, pred).tp];
    ++total;
  });
  std::map<Count, double> hist;
  for (const auto& [tp, n] : tally) hist[tp] = static_cast<double>(n) / static_cast<double>(total);
  return hist;
}

namespace {

struct CellChecker {
  double tolerance;
  OracleReport report;

  void compare(const std::string& cell, double expected, double got) {
    ++report.checked;
    const double err = std::abs(expected - got);
    if (std::isfinite(err)) report.max_abs_error = std::max(report.max_abs_error, err);
    if (!(err <= tolerance)) report.failures.push_back({cell, expected, got, "value mismatch"});
  }

  void expect(const std::string& cell, bool ok, const std::string& detail) {
    ++report.checked;
    if (!ok) report.failures.push_back({cell, 0.0, 0.0, detail});
  }
};

std::string label(const ProblemShape& shape, Count k, const MeasureSpec& spec, const char* what) {
  std::ostringstream os;
  os << "M=" << shape.m << " P=" << shape.p;
  if (k >= 0) os << " k=" << k;
  os << " " << display_name(spec.id) << " " << what;
  return os.str();
}

std::string describe(const std::vector<Count>& ks) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < ks.size(); ++i) os << (i ? "," : "") << ks[i];
  os << "}";
  return os.str();
}

std::vector<MeasureSpec> swept_measures() {
  auto specs = dd_catalog(1.0);
  specs.push_back(make_spec(MeasureId::fbeta(2.0)));
  return specs;
}

// Undefinedness is detected by evaluate_measure on the subsets themselves,
// not by the DD feasibility rules under test.
OracleReport check_shape(const ProblemShape& shape, double tolerance) {
  CellChecker chk{tolerance, {}};
  const auto specs = swept_measures();
  const auto y = canonical_labels(shape);
  const std::size_t nspec = specs.size();

  // enum_value[spec][k], nullopt when the measure is undefined there
  std::vector<std::vector<std::optional<double>>> enum_value(
      nspec, std::vector<std::optional<double>>(static_cast<std::size_t>(shape.m + 1)));

  for (Count k = 0; k <= shape.m; ++k) {
    std::vector<long double> sums(nspec, 0.0L);
    std::vector<bool> defined(nspec, true);
    std::map<Count, std::uint64_t> tally;
    std::uint64_t total = 0;

    for_each_combination(shape.m, k, [&](std::span<const Count> chosen) {
      const auto pred = prediction_for(chosen, shape.m);
      const ConfusionCounts c = confusion_counts(y, pred);
      ++tally[c.tp];
      ++total;
      for (std::size_t i = 0; i < nspec; ++i) {
        if (!defined[i]) continue;
        try {
          sums[i] += evaluate_measure(specs[i], c);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::UndefinedMeasure) throw;
          defined[i] = false;
        }
      }
    });

    // pmf against the histogram
    const TpDistribution law = tp_pmf(shape, k);
    const TpSupport support = tp_support(shape, k);
    chk.expect(label(shape, k, make_spec(MeasureKind::TP), "support"),
               support.lo == tally.begin()->first && support.hi == tally.rbegin()->first,
               "support differs from enumerated TP values");
    for (Count s = support.lo; s <= support.hi; ++s) {
      const auto it = tally.find(s);
      const double freq = it == tally.end() ? 0.0 : double(it->second) / double(total);
      chk.compare(label(shape, k, make_spec(MeasureKind::TP), "pmf") + " s=" + std::to_string(s), freq,
                  law.probability(s));
    }

    for (std::size_t i = 0; i < nspec; ++i) {
      const MeasureSpec& spec = specs[i];
      const bool feasible = is_feasible(spec, shape, k);
      chk.expect(label(shape, k, spec, "feasibility"), feasible == defined[i],
                 defined[i] ? "DD layer rejects a defined cell" : "DD layer accepts an undefined cell");
      if (!defined[i] || !feasible) continue;

      const double truth = static_cast<double>(sums[i] / static_cast<long double>(total));
      enum_value[i][static_cast<std::size_t>(k)] = truth;
      chk.compare(label(shape, k, spec, "exact"), truth, expectation_exact(spec, shape, k).value);
      if (spec.is_linear_in_tp) {
        chk.compare(label(shape, k, spec, "closed"), truth, expectation_closed(spec, shape, k).value);
      }
    }
  }

  for (std::size_t i = 0; i < nspec; ++i) {
    const MeasureSpec& spec = specs[i];
    std::vector<Count> ks;
    for (Count k = 0; k <= shape.m; ++k) {
      if (enum_value[i][static_cast<std::size_t>(k)]) ks.push_back(k);
    }
    for (Direction dir : {Direction::Min, Direction::Max}) {
      const char* tag = dir == Direction::Max ? "baseline max" : "baseline min";
      if (ks.empty()) {
        bool raised = false;
        try {
          (void)baseline(spec, shape, dir);
        } catch (const Error& e) {
          raised = e.code() == ErrorCode::UndefinedMeasure;
        }
        chk.expect(label(shape, -1, spec, tag), raised, "expected UndefinedMeasure");
        continue;
      }
      double best = *enum_value[i][static_cast<std::size_t>(ks.front())];
      for (Count k : ks) {
        const double v = *enum_value[i][static_cast<std::size_t>(k)];
        best = dir == Direction::Max ? std::max(best, v) : std::min(best, v);
      }
      std::vector<Count> members;
      for (Count k : ks) {
        if (std::abs(*enum_value[i][static_cast<std::size_t>(k)] - best) <= kArgoptTolerance) {
          members.push_back(k);
        }
      }
      const auto truth = ThetaStarSet::from_members(shape.m, members);

      const BaselineResult closed = baseline(spec, shape, dir);
      const BaselineResult scan = baseline_exhaustive(spec, shape, dir);
      chk.compare(label(shape, -1, spec, tag), best, closed.value);
      chk.compare(label(shape, -1, spec, tag) + " exhaustive", best, scan.value);
      chk.expect(label(shape, -1, spec, tag) + " argopt", same_members(truth, closed.argopt),
                 "argopt " + describe(closed.argopt.materialize()) + " != " + describe(members));
      chk.expect(label(shape, -1, spec, tag) + " argopt exhaustive", same_members(truth, scan.argopt),
                 "argopt " + describe(scan.argopt.materialize()) + " != " + describe(members));
    }
  }
  return chk.report;
}

OracleReport check_shape_guarded(const ProblemShape& shape, double tolerance) {
  try {
    return check_shape(shape, tolerance);
  } catch (const std::exception& e) {
    OracleReport r;
    r.checked = 1;
    r.failures.push_back({"M=" + std::to_string(shape.m) + " P=" + std::to_string(shape.p), 0.0, 0.0,
                          std::string("unexpected error: ") + e.what()});
    return r;
  }
}

std::vector<ProblemShape> shapes_up_to(Count max_m) {
  std::vector<ProblemShape> shapes;
  for (Count m = 1; m <= max_m; ++m) {
    for (Count p = 0; p <= m; ++p) shapes.emplace_back(m, p);
  }
  return shapes;
}

OracleReport merge(std::vector<OracleReport>& parts) {
  OracleReport out;
  for (auto& r : parts) {
    out.checked += r.checked;
    out.max_abs_error = std::max(out.max_abs_error, r.max_abs_error);
    std::move(r.failures.begin(), r.failures.end(), std::back_inserter(out.failures));
  }
  std::stable_sort(out.failures.begin(), out.failures.end());
  return out;
}

void check_request(Count max_m, double tolerance) {
  if (max_m < 1) throw Error(ErrorCode::InvalidArgument, "max_m must be at least 1");
  check_size(max_m);
  if (!(tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be non-negative");
}

}  // namespace

OracleReport validate_all(Count max_m, double tolerance) {
  check_request(max_m, tolerance);
  const auto shapes = shapes_up_to(max_m);
  std::vector<OracleReport> parts(shapes.size());
  const auto count = static_cast<std::int64_t>(shapes.size());
  // Largest shapes first so the dynamic schedule balances.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = count - 1; i >= 0; --i) {
    parts[static_cast<std::size_t>(i)] = check_shape_guarded(shapes[static_cast<std::size_t>(i)], tolerance);
  }
  return merge(parts);
}

OracleReport validate_all_serial(Count max_m, double tolerance) {
  check_request(max_m, tolerance);
  const auto shapes = shapes_up_to(max_m);
  std::vector<OracleReport> parts;
  parts.reserve(shapes.size());
  for (const auto& shape : shapes) parts.push_back(check_shape_guarded(shape, tolerance));
  return merge(parts);
}

McPanelReport monte_carlo_panel(std::size_t cells, std::uint64_t samples, std::uint64_t seed,
                                Count max_m) {
  if (max_m < 1) throw Error(ErrorCode::InvalidArgument, "max_m must be at least 1");
  const auto specs = swept_measures();
  std::mt19937_64 rng(seed);
  McPanelReport report;
  report.required = (cells * 94 + 99) / 100;
  while (report.cases.size() < cells) {
    const MeasureSpec& spec =
        specs[std::uniform_int_distribution<std::size_t>(0, specs.size() - 1)(rng)];
    const Count m = std::uniform_int_distribution<Count>(1, max_m)(rng);
    const Count p = std::uniform_int_distribution<Count>(0, m)(rng);
    const Count k = std::uniform_int_distribution<Count>(0, m)(rng);
    const ProblemShape shape(m, p);
    if (!is_feasible(spec, shape, k)) continue;

    McCase c;
    c.measure = spec.id;
    c.m = m;
    c.p = p;
    c.k = k;
    c.exact = expectation_exact(spec, shape, k).value;
    const auto mc = expectation_mc(spec, shape, k, samples, kernels::mix_seed(seed, report.cases.size()));
    c.mc = mc.value;
    c.stderr_ = mc.stderr_.value_or(0.0);
    const double diff = std::abs(c.mc - c.exact);
    c.within = c.stderr_ > 0.0 ? diff <= 4.0 * c.stderr_ : diff <= 1e-12;
    report.passed += c.within ? 1 : 0;
    report.cases.push_back(c);
  }
  return report;
}

}  // namespace dutchdraw::oracle
