#include "dutchdraw/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dutchdraw/expectations.hpp"
#include "dutchdraw/oracle.hpp"

namespace dutchdraw::cli {

using nlohmann::json;

namespace {

Error usage(const std::string& field, const std::string& what) {
  return Error(ErrorCode::InvalidArgument, field + ": " + what);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int parse_bit(const std::string& cell, const std::string& column, std::size_t line) {
  if (cell == "0") return 0;
  if (cell == "1") return 1;
  throw Error(ErrorCode::NonBinaryValue, "column '" + column + "', line " + std::to_string(line) +
                                             ": expected 0 or 1, got '" + cell + "'");
}

LabelData read_csv(std::istream& in, const std::string& true_col,
                   const std::optional<std::string>& pred_col) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) {
      header = split(line, ',');
      break;
    }
  }
  if (header.empty()) throw usage("--labels", "file has no header row");

  auto column = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw usage("--labels", "column '" + name + "' not found in header");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t ti = column(true_col);
  const std::optional<std::size_t> pi =
      pred_col ? std::optional<std::size_t>(column(*pred_col)) : std::nullopt;

  LabelData data;
  if (pi) data.y_pred.emplace();
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw usage("--labels", "line " + std::to_string(lineno) + " has " +
                                  std::to_string(cells.size()) + " fields, header has " +
                                  std::to_string(header.size()));
    }
    data.y_true.push_back(parse_bit(cells[ti], true_col, lineno));
    if (pi) data.y_pred->push_back(parse_bit(cells[*pi], *pred_col, lineno));
  }
  return data;
}

int json_bit(const json& row, const std::string& column, std::size_t line) {
  const auto it = row.find(column);
  if (it == row.end()) {
    throw usage("--labels", "line " + std::to_string(line) + " has no field '" + column + "'");
  }
  if (!it->is_number_integer() || (it->get<std::int64_t>() != 0 && it->get<std::int64_t>() != 1)) {
    throw Error(ErrorCode::NonBinaryValue, "field '" + column + "', line " + std::to_string(line) +
                                               ": expected 0 or 1, got " + it->dump());
  }
  return it->get<int>();
}

LabelData read_jsonl(std::istream& in, const std::string& true_col,
                     const std::optional<std::string>& pred_col) {
  LabelData data;
  if (pred_col) data.y_pred.emplace();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const json row = json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object()) {
      throw usage("--labels", "line " + std::to_string(lineno) + " is not a JSON object");
    }
    data.y_true.push_back(json_bit(row, true_col, lineno));
    if (pred_col) data.y_pred->push_back(json_bit(row, *pred_col, lineno));
  }
  return data;
}

std::string strip_code(const Error& e) {
  const std::string what = e.what();
  const auto pos = what.find(": ");
  return pos == std::string::npos ? what : what.substr(pos + 2);
}

std::string argopt_kind(ThetaStarSet::Kind k) {
  switch (k) {
    case ThetaStarSet::Kind::Only: return "only";
    case ThetaStarSet::Kind::All: return "all";
    case ThetaStarSet::Kind::AllExcept: return "all_except";
  }
  return "only";
}

ThetaStarSet::Kind argopt_kind(const std::string& s) {
  if (s == "only") return ThetaStarSet::Kind::Only;
  if (s == "all") return ThetaStarSet::Kind::All;
  if (s == "all_except") return ThetaStarSet::Kind::AllExcept;
  throw usage("report", "unknown argopt kind '" + s + "'");
}

Verdict verdict_from(const std::string& s) {
  if (s == "beats_baseline") return Verdict::BeatsBaseline;
  if (s == "does_not_beat") return Verdict::DoesNotBeat;
  if (s == "not_applicable") return Verdict::NotApplicable;
  throw usage("report", "unknown verdict '" + s + "'");
}

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

json argopt_json(const std::optional<ThetaStarSet>& s) {
  if (!s) return nullptr;
  return json{{"kind", argopt_kind(s->kind)}, {"ks", s->ks}};
}

std::optional<ThetaStarSet> argopt_from(const json& j, const char* key, Count m) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return ThetaStarSet{argopt_kind(it->at("kind").get<std::string>()),
                      it->at("ks").get<std::vector<Count>>(), m};
}

// Baselines for one measure in both directions. Rows keep only the
// directions the report shows; the verdict needs the preferred one anyway.
struct Baselines {
  std::optional<BaselineResult> min;
  std::optional<BaselineResult> max;
  std::optional<std::string> undefined;
};

Baselines compute_baselines(const MeasureSpec& spec, const ProblemShape& shape) {
  Baselines b;
  if (!spec.eligible_for_dd) {
    b.undefined = display_name(spec.id) + " has no Dutch Draw baseline";
    return b;
  }
  try {
    b.min = baseline(spec, shape, Direction::Min);
    b.max = baseline(spec, shape, Direction::Max);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UndefinedMeasure) throw;
    b.min.reset();
    b.max.reset();
    b.undefined = strip_code(e);
  }
  return b;
}

ReportRow baseline_row(const MeasureSpec& spec, const Baselines& b, const ReportOptions& opts) {
  ReportRow row;
  row.measure = spec.id;
  row.prefers_min = prefers_minimum(spec.id.kind);
  row.undefined = b.undefined;
  if (b.min && opts.show_min) {
    row.baseline_min = b.min->value;
    row.argopt_min = b.min->argopt;
  }
  if (b.max && opts.show_max) {
    row.baseline_max = b.max->value;
    row.argopt_max = b.max->argopt;
  }
  return row;
}

void judge(ReportRow& row, const MeasureSpec& spec, const ProblemShape& shape, const Baselines& b,
           bool want_rescale) {
  if (!row.model_score) return;
  const double score = *row.model_score;
  if (!b.min || !b.max) {
    row.verdict = Verdict::NotApplicable;
  } else if (row.prefers_min) {
    row.verdict = score < b.min->value ? Verdict::BeatsBaseline : Verdict::DoesNotBeat;
  } else {
    row.verdict = score > b.max->value ? Verdict::BeatsBaseline : Verdict::DoesNotBeat;
  }
  if (!want_rescale) return;
  if (!b.min || !b.max) {
    row.rescale_error = row.undefined.value_or("no baseline");
    return;
  }
  try {
    row.rescaled = rescale_score(spec, shape, score, b.min->value, b.max->value);
  } catch (const Error& e) {
    row.rescale_error = std::string(e.what());
  }
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

std::string direction_name(bool show_min, bool show_max) {
  if (show_min && show_max) return "both";
  return show_min ? "min" : "max";
}

}  // namespace

LabelData read_labels(const std::string& path, const std::string& true_col,
                      const std::optional<std::string>& pred_col) {
  std::ifstream in(path);
  if (!in) throw usage("--labels", "cannot open '" + path + "'");
  LabelData data = ends_with(path, ".jsonl") || ends_with(path, ".ndjson")
                       ? read_jsonl(in, true_col, pred_col)
                       : read_csv(in, true_col, pred_col);
  if (data.y_true.empty()) throw usage("--labels", "file has no data rows");
  return data;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::BeatsBaseline: return "beats_baseline";
    case Verdict::DoesNotBeat: return "does_not_beat";
    case Verdict::NotApplicable: return "not_applicable";
  }
  return "not_applicable";
}

double rescale_score(const MeasureSpec& spec, const ProblemShape& shape, double score,
                     double baseline_min, double baseline_max) {
  const Codomain c = shape_codomain(spec, shape);
  if (!prefers_minimum(spec.id.kind)) {
    return rescale(score, RescaleSpec{baseline_min, baseline_max, c.lo, c.hi});
  }
  return rescale(-score, RescaleSpec{-baseline_max, -baseline_min, -c.hi, -c.lo});
}

Report build_baseline_report(const ProblemShape& shape, const ReportOptions& opts) {
  Report r;
  r.m = shape.m;
  r.p = shape.p;
  r.show_min = opts.show_min;
  r.show_max = opts.show_max;
  for (const MeasureId& id : opts.measures) {
    const MeasureSpec spec = make_spec(id);
    r.rows.push_back(baseline_row(spec, compute_baselines(spec, shape), opts));
  }
  return r;
}

Report build_score_report(std::span<const int> y_true, std::span<const int> y_pred,
                          const ReportOptions& opts) {
  const ConfusionCounts counts = confusion_counts(y_true, y_pred);
  const ProblemShape shape(counts.total(), counts.positives());
  Report r;
  r.m = shape.m;
  r.p = shape.p;
  r.show_min = opts.show_min;
  r.show_max = opts.show_max;
  r.scored = true;
  r.rescaled = opts.rescale;
  for (const MeasureId& id : opts.measures) {
    const MeasureSpec spec = make_spec(id);
    const Baselines b = compute_baselines(spec, shape);
    ReportRow row = baseline_row(spec, b, opts);
    try {
      row.model_score = evaluate_measure(spec, counts);
    } catch (const Error& e) {
      row.score_error = std::string(e.what());
    }
    judge(row, spec, shape, b, opts.rescale);
    r.rows.push_back(std::move(row));
  }
  return r;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  const double scaled = std::floor(std::abs(v) * 1000.0 + 0.5);
  if (scaled == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%.3f", v < 0 ? "-" : "", scaled / 1000.0);
  std::string s = buf;
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string format_argopt(const ThetaStarSet& s) {
  auto list = [](const std::vector<Count>& ks) {
    std::string out = "{";
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(ks[i]);
    }
    return out + "}";
  };
  switch (s.kind) {
    case ThetaStarSet::Kind::Only: return list(s.ks);
    case ThetaStarSet::Kind::All: return "all";
    case ThetaStarSet::Kind::AllExcept: return "all\\" + list(s.ks);
  }
  return {};
}

std::string render_table(const Report& r) {
  std::vector<std::string> header{"measure"};
  if (r.show_min) {
    header.push_back("min");
    header.push_back("argmin k");
  }
  if (r.show_max) {
    header.push_back("max");
    header.push_back("argmax k");
  }
  if (r.scored) {
    header.push_back("score");
    header.push_back("verdict");
  }
  if (r.rescaled) header.push_back("rescaled");

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> notes;
  for (const ReportRow& row : r.rows) {
    const std::string name = display_name(row.measure);
    std::vector<std::string> line{name + (row.prefers_min ? " (min)" : "")};
    auto value_cell = [&](const std::optional<double>& v, const std::optional<ThetaStarSet>& a) {
      line.push_back(v ? format_value(*v) : (row.undefined ? "undefined" : "-"));
      line.push_back(a ? format_argopt(*a) : "-");
    };
    if (r.show_min) value_cell(row.baseline_min, row.argopt_min);
    if (r.show_max) value_cell(row.baseline_max, row.argopt_max);
    if (r.scored) {
      line.push_back(row.model_score ? format_value(*row.model_score) : "undefined");
      line.push_back(row.verdict ? verdict_name(*row.verdict) : "-");
    }
    if (r.rescaled) line.push_back(row.rescaled ? format_value(*row.rescaled) : "-");
    cells.push_back(std::move(line));

    if (row.undefined) notes.push_back(name + " baseline: " + *row.undefined);
    if (row.score_error) notes.push_back(name + " score: " + *row.score_error);
    if (r.rescaled && row.rescale_error) notes.push_back(name + " rescale: " + *row.rescale_error);
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& line : cells) width[c] = std::max(width[c], line[c].size());
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string out;
    for (std::size_t c = 0; c < line.size(); ++c) {
      out += c + 1 == line.size() ? line[c] : pad(line[c], width[c] + 2);
    }
    return out + "\n";
  };

  std::string out = "M = " + std::to_string(r.m) + ", P = " + std::to_string(r.p) + "\n";
  out += emit(header);
  for (const auto& line : cells) out += emit(line);
  for (const auto& n : notes) out += "note: " + n + "\n";
  return out;
}

json to_json(const Report& r) {
  json rows = json::array();
  for (const ReportRow& row : r.rows) {
    json j{{"measure", display_name(row.measure)},
           {"kind", std::string(kind_name(row.measure.kind))},
           {"beta", row.measure.beta},
           {"preferred", row.prefers_min ? "min" : "max"},
           {"undefined", opt(row.undefined)}};
    if (r.show_min) {
      j["baseline_min"] = opt(row.baseline_min);
      j["argopt_min"] = argopt_json(row.argopt_min);
    }
    if (r.show_max) {
      j["baseline_max"] = opt(row.baseline_max);
      j["argopt_max"] = argopt_json(row.argopt_max);
    }
    if (r.scored) {
      j["model_score"] = opt(row.model_score);
      j["score_error"] = opt(row.score_error);
      j["verdict"] = row.verdict ? json(verdict_name(*row.verdict)) : json(nullptr);
    }
    if (r.rescaled) {
      j["rescaled"] = opt(row.rescaled);
      j["rescale_error"] = opt(row.rescale_error);
    }
    rows.push_back(std::move(j));
  }
  json meta = r.meta;
  meta["direction"] = direction_name(r.show_min, r.show_max);
  meta["scored"] = r.scored;
  meta["rescale"] = r.rescaled;
  return json{{"shape", {{"m", r.m}, {"p", r.p}}}, {"rows", std::move(rows)}, {"meta", meta}};
}

Report from_json(const json& j) {
  Report r;
  r.m = j.at("shape").at("m").get<Count>();
  r.p = j.at("shape").at("p").get<Count>();
  r.meta = j.at("meta");
  const std::string dir = r.meta.at("direction").get<std::string>();
  r.show_min = dir != "max";
  r.show_max = dir != "min";
  r.scored = r.meta.at("scored").get<bool>();
  r.rescaled = r.meta.at("rescale").get<bool>();
  for (const json& jr : j.at("rows")) {
    const std::string kind = jr.at("kind").get<std::string>();
    const auto id = parse_measure(kind, jr.at("beta").get<double>());
    if (!id) throw usage("report", "unknown measure kind '" + kind + "'");
    ReportRow row;
    row.measure = *id;
    row.prefers_min = jr.at("preferred").get<std::string>() == "min";
    row.undefined = get_opt<std::string>(jr, "undefined");
    row.baseline_min = get_opt<double>(jr, "baseline_min");
    row.baseline_max = get_opt<double>(jr, "baseline_max");
    row.argopt_min = argopt_from(jr, "argopt_min", r.m);
    row.argopt_max = argopt_from(jr, "argopt_max", r.m);
    row.model_score = get_opt<double>(jr, "model_score");
    row.score_error = get_opt<std::string>(jr, "score_error");
    if (const auto v = get_opt<std::string>(jr, "verdict")) row.verdict = verdict_from(*v);
    row.rescaled = get_opt<double>(jr, "rescaled");
    row.rescale_error = get_opt<std::string>(jr, "rescale_error");
    r.rows.push_back(std::move(row));
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Args {
  std::optional<Count> positives;
  std::optional<Count> total;
  std::optional<std::string> labels;
  std::string true_col = "y_true";
  std::string pred_col = "y_pred";
  std::string measures = "all";
  double beta = 1.0;
  std::string direction = "both";
  std::string format = "table";
  std::uint64_t seed = 1;
  bool rescale = false;
  std::optional<double> score;
  Count max_m = 12;
  double tolerance = 1e-10;
  std::size_t mc_cells = 50;
  std::uint64_t mc_samples = 100000;
};

std::vector<MeasureId> parse_measure_list(const Args& a, bool include_pt) {
  std::vector<MeasureId> out;
  if (trim(a.measures) == "all" || trim(a.measures) == "ALL") {
    for (const auto& spec : include_pt ? catalog(a.beta) : dd_catalog(a.beta)) out.push_back(spec.id);
    return out;
  }
  for (const std::string& name : split(a.measures, ',')) {
    if (name.empty()) continue;
    const auto id = parse_measure(name, a.beta);
    if (!id) throw usage("--measures", "unknown measure '" + name + "'");
    if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
  }
  if (out.empty()) throw usage("--measures", "no measures given");
  std::stable_sort(out.begin(), out.end(), [](const MeasureId& x, const MeasureId& y) {
    return static_cast<int>(x.kind) < static_cast<int>(y.kind);
  });
  return out;
}

ReportOptions options_from(const Args& a, bool include_pt) {
  if (!std::isfinite(a.beta) || a.beta <= 0.0) throw usage("--beta", "must be finite and > 0");
  ReportOptions o;
  if (a.direction == "min") {
    o.show_max = false;
  } else if (a.direction == "max") {
    o.show_min = false;
  } else if (a.direction != "both") {
    throw usage("--direction", "expected min, max or both");
  }
  if (a.format != "table" && a.format != "json") throw usage("--format", "expected table or json");
  o.measures = parse_measure_list(a, include_pt);
  o.rescale = a.rescale;
  return o;
}

ProblemShape shape_from(const Args& a) {
  if (a.labels) {
    if (a.positives) throw usage("--positives", "give either --labels or --positives/--total");
    const LabelData d = read_labels(*a.labels, a.true_col, std::nullopt);
    const Count m = static_cast<Count>(d.y_true.size());
    const Count p = std::count(d.y_true.begin(), d.y_true.end(), 1);
    if (a.total && *a.total != m) {
      throw usage("--total", "labels file has " + std::to_string(m) + " rows");
    }
    return ProblemShape(m, p);
  }
  if (!a.positives) throw usage("--positives", "required unless --labels is given");
  if (!a.total) throw usage("--total", "required with --positives");
  if (*a.total < 1) throw usage("--total", "must be at least 1");
  if (*a.positives < 0 || *a.positives > *a.total) {
    throw usage("--positives", "must lie in [0, --total]");
  }
  return ProblemShape(*a.total, *a.positives);
}

json meta_for(const Args& a, const std::string& command) {
  return json{{"tool", "dutchdraw"}, {"version", kVersion}, {"command", command},
              {"seed", a.seed},      {"beta", a.beta}};
}

void emit_report(const Report& r, const Args& a, std::ostream& out) {
  if (a.format == "json") {
    out << to_json(r).dump(2) << "\n";
  } else {
    out << render_table(r);
  }
}

void warn_large_g2(const ReportOptions& o, const ProblemShape& shape, std::ostream& err) {
  const bool has_g2 = std::any_of(o.measures.begin(), o.measures.end(),
                                  [](const MeasureId& id) { return id.kind == MeasureKind::G2; });
  if (has_g2 && o.show_max &&
      static_cast<double>(shape.m) * static_cast<double>(shape.p) > 1e8) {
    err << "warning: the G2 maximum is an exhaustive scan of about M*P = "
        << static_cast<double>(shape.m) * static_cast<double>(shape.p) << " terms\n";
  }
}

int cmd_baseline(const Args& a, std::ostream& out, std::ostream& err) {
  if (a.rescale) throw usage("--rescale", "only applies to score and rescale");
  const ReportOptions o = options_from(a, false);
  const ProblemShape shape = shape_from(a);
  warn_large_g2(o, shape, err);
  Report r = build_baseline_report(shape, o);
  r.meta = meta_for(a, "baseline");
  emit_report(r, a, out);
  return 0;
}

LabelData paired_labels(const Args& a) {
  if (!a.labels) throw usage("--labels", "required");
  const LabelData d = read_labels(*a.labels, a.true_col, a.pred_col);
  if (d.y_true.size() != d.y_pred->size()) {
    throw Error(ErrorCode::LengthMismatch, "--labels: y_true and y_pred lengths differ");
  }
  return d;
}

int cmd_score(const Args& a, std::ostream& out, std::ostream& err) {
  ReportOptions o = options_from(a, true);
  const LabelData d = paired_labels(a);
  const Count m = static_cast<Count>(d.y_true.size());
  warn_large_g2(o, ProblemShape(m, std::count(d.y_true.begin(), d.y_true.end(), 1)), err);
  Report r = build_score_report(d.y_true, *d.y_pred, o);
  r.meta = meta_for(a, "score");
  emit_report(r, a, out);
  return 0;
}

int cmd_rescale(Args a, std::ostream& out, std::ostream& err) {
  a.rescale = true;
  if (!a.score) {
    if (a.positives || a.total) throw usage("--score", "required with --positives/--total");
    ReportOptions o = options_from(a, true);
    const LabelData d = paired_labels(a);
    Report r = build_score_report(d.y_true, *d.y_pred, o);
    r.meta = meta_for(a, "rescale");
    emit_report(r, a, out);
    return 0;
  }

  ReportOptions o = options_from(a, false);
  if (o.measures.size() != 1) throw usage("--measures", "name exactly one measure with --score");
  if (!std::isfinite(*a.score)) throw usage("--score", "must be finite");
  const ProblemShape shape = shape_from(a);
  warn_large_g2(o, shape, err);
  const MeasureSpec spec = make_spec(o.measures.front());
  const Baselines b = compute_baselines(spec, shape);
  if (!b.min || !b.max) throw usage("--measures", b.undefined.value_or("no baseline"));

  ReportRow row = baseline_row(spec, b, o);
  row.model_score = *a.score;
  judge(row, spec, shape, b, true);
  if (row.rescale_error) throw usage("--score", *row.rescale_error);

  Report r;
  r.m = shape.m;
  r.p = shape.p;
  r.show_min = o.show_min;
  r.show_max = o.show_max;
  r.scored = true;
  r.rescaled = true;
  r.rows.push_back(std::move(row));
  r.meta = meta_for(a, "rescale");
  emit_report(r, a, out);
  return 0;
}

int cmd_verify(const Args& a, std::ostream& out) {
  if (a.max_m < 1 || a.max_m > oracle::kMaxEnumerationM) {
    throw usage("--max-m", "must lie in [1, " + std::to_string(oracle::kMaxEnumerationM) + "]");
  }
  if (!(a.tolerance >= 0.0) || !std::isfinite(a.tolerance)) {
    throw usage("--tolerance", "must be finite and >= 0");
  }
  if (a.format != "table" && a.format != "json") throw usage("--format", "expected table or json");

  const oracle::OracleReport rep = oracle::validate_all(a.max_m, a.tolerance);
  const oracle::McPanelReport mc = oracle::monte_carlo_panel(a.mc_cells, a.mc_samples, a.seed);
  const bool ok = rep.ok() && mc.ok();

  if (a.format == "json") {
    json fails = json::array();
    for (const auto& f : rep.failures) {
      fails.push_back({{"cell", f.cell}, {"expected", f.expected}, {"got", f.got}, {"detail", f.detail}});
    }
    json cells = json::array();
    for (const auto& c : mc.cases) {
      cells.push_back({{"measure", display_name(c.measure)}, {"m", c.m}, {"p", c.p}, {"k", c.k},
                       {"exact", c.exact}, {"mc", c.mc}, {"stderr", c.stderr_}, {"within", c.within}});
    }
    out << json{{"oracle",
                 {{"max_m", a.max_m}, {"tolerance", a.tolerance}, {"checked", rep.checked},
                  {"max_abs_error", rep.max_abs_error}, {"failures", fails}}},
                {"monte_carlo",
                 {{"seed", a.seed}, {"samples", a.mc_samples}, {"passed", mc.passed},
                  {"required", mc.required}, {"cells", cells}}},
                {"ok", ok}}
               .dump(2)
        << "\n";
    return ok ? 0 : 1;
  }

  out << "oracle: max_m=" << a.max_m << " tolerance=" << a.tolerance << " checked=" << rep.checked
      << " max_abs_error=" << rep.max_abs_error << " failures=" << rep.failures.size() << "\n";
  out << std::setprecision(17);
  for (const auto& f : rep.failures) {
    out << "  FAIL " << f.cell << " expected=" << f.expected << " got=" << f.got << " " << f.detail
        << "\n";
  }
  out << std::setprecision(6);
  out << "monte carlo: seed=" << a.seed << " cells=" << mc.cases.size()
      << " samples=" << a.mc_samples << " within 4 se=" << mc.passed << " required=" << mc.required
      << "\n";
  for (const auto& c : mc.cases) {
    if (c.within) continue;
    out << "  outside " << display_name(c.measure) << " M=" << c.m << " P=" << c.p << " k=" << c.k
        << " exact=" << c.exact << " mc=" << c.mc << " se=" << c.stderr_ << "\n";
  }
  out << (ok ? "result: ok\n" : "result: FAILED\n");
  return ok ? 0 : 1;
}

void add_shape_options(CLI::App* sub, Args& a) {
  sub->add_option("-p,--positives", a.positives, "Number of positive observations P");
  sub->add_option("-m,--total", a.total, "Number of observations M");
  sub->add_option("--labels", a.labels, "CSV or JSON-lines file with label columns");
  sub->add_option("--true-col", a.true_col, "Column holding the true labels")->capture_default_str();
}

void add_report_options(CLI::App* sub, Args& a) {
  sub->add_option("--measures", a.measures, "Comma-separated measure names, or all")
      ->capture_default_str();
  sub->add_option("--beta", a.beta, "Beta for the F-beta score")->capture_default_str();
  sub->add_option("--direction", a.direction, "min, max or both")->capture_default_str();
  sub->add_option("--format", a.format, "table or json")->capture_default_str();
  sub->add_option("--seed", a.seed, "Seed recorded in the report")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dutch Draw baselines for binary classification measures", "dutchdraw"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Args a;

  auto* base = app.add_subcommand("baseline", "Minimal and maximal Dutch Draw baselines");
  add_shape_options(base, a);
  add_report_options(base, a);
  base->add_flag("--rescale", a.rescale, "Not valid here");

  auto* score = app.add_subcommand("score", "Score predictions against the baselines");
  score->add_option("--labels", a.labels, "CSV or JSON-lines file with y_true and y_pred")->required();
  score->add_option("--true-col", a.true_col, "Column holding the true labels")->capture_default_str();
  score->add_option("--pred-col", a.pred_col, "Column holding the predictions")->capture_default_str();
  add_report_options(score, a);
  score->add_flag("--rescale", a.rescale, "Add the rescaled score");

  auto* resc = app.add_subcommand("rescale", "Rescale a score against the baselines");
  add_shape_options(resc, a);
  resc->add_option("--pred-col", a.pred_col, "Column holding the predictions")->capture_default_str();
  resc->add_option("--score", a.score, "Score to rescale (needs one measure and a shape)");
  add_report_options(resc, a);

  auto* verify = app.add_subcommand("verify", "Check every closed form against enumeration");
  verify->add_option("--max-m", a.max_m, "Largest M to enumerate")->capture_default_str();
  verify->add_option("--tolerance", a.tolerance, "Absolute tolerance")->capture_default_str();
  verify->add_option("--seed", a.seed, "Seed of the Monte Carlo panel")->capture_default_str();
  verify->add_option("--mc-cells", a.mc_cells, "Monte Carlo panel size")->capture_default_str();
  verify->add_option("--mc-samples", a.mc_samples, "Draws per panel cell")->capture_default_str();
  verify->add_option("--format", a.format, "table or json")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (base->parsed()) return cmd_baseline(a, out, err);
    if (score->parsed()) return cmd_score(a, out, err);
    if (resc->parsed()) return cmd_rescale(a, out, err);
    return cmd_verify(a, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dutchdraw::cli
