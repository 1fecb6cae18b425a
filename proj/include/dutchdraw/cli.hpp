#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dutchdraw/baselines.hpp"

namespace dutchdraw::cli {

inline constexpr const char* kVersion = "0.1.0";

struct LabelData {
  std::vector<int> y_true;
  std::optional<std::vector<int>> y_pred;
};

/// CSV (header row, comma separated) or JSON lines (.jsonl / .ndjson), values
/// strictly 0 or 1. Throws Error naming the offending column and row.
LabelData read_labels(const std::string& path, const std::string& true_col,
                      const std::optional<std::string>& pred_col);

enum class Verdict { BeatsBaseline, DoesNotBeat, NotApplicable };

std::string verdict_name(Verdict v);

struct ReportRow {
  MeasureId measure;
  bool prefers_min = false;
  std::optional<double> baseline_min;
  std::optional<double> baseline_max;
  std::optional<ThetaStarSet> argopt_min;
  std::optional<ThetaStarSet> argopt_max;
  std::optional<std::string> undefined;  // why no baseline exists

  std::optional<double> model_score;
  std::optional<std::string> score_error;
  std::optional<Verdict> verdict;
  std::optional<double> rescaled;
  std::optional<std::string> rescale_error;
};

struct Report {
  Count m = 1;
  Count p = 0;
  bool show_min = true;
  bool show_max = true;
  bool scored = false;
  bool rescaled = false;
  std::vector<ReportRow> rows;
  nlohmann::json meta = nlohmann::json::object();
};

struct ReportOptions {
  std::vector<MeasureId> measures;
  bool show_min = true;
  bool show_max = true;
  bool rescale = false;
};

Report build_baseline_report(const ProblemShape& shape, const ReportOptions& opts);
Report build_score_report(std::span<const int> y_true, std::span<const int> y_pred,
                          const ReportOptions& opts);

/// Rescaled score for a measure; minimized measures are mirrored so that
/// +1 is always the good end.
double rescale_score(const MeasureSpec& spec, const ProblemShape& shape, double score,
                     double baseline_min, double baseline_max);

/// Half-up to three decimals with trailing zeros trimmed.
std::string format_value(double v);
std::string format_argopt(const ThetaStarSet& s);

std::string render_table(const Report& r);
nlohmann::json to_json(const Report& r);
Report from_json(const nlohmann::json& j);

/// Entry point without argv[0]. Exit codes: 0 ok, 1 verification failure,
/// 2 usage or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dutchdraw::cli
