#pragma once

// Catalog of binary-classification evaluation measures defined on the four
// confusion counts, with their codomains and definedness requirements.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dutchdraw/error.hpp"

namespace dutchdraw {

using Count = std::int64_t;

struct ConfusionCounts {
  Count tp = 0;
  Count fp = 0;
  Count fn = 0;
  Count tn = 0;

  Count total() const noexcept { return tp + fp + fn + tn; }
  Count positives() const noexcept { return tp + fn; }
  Count negatives() const noexcept { return tn + fp; }
  Count predicted_positives() const noexcept { return tp + fp; }
  Count predicted_negatives() const noexcept { return tn + fn; }

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

enum class MeasureKind {
  TP, TN, FN, FP,
  TPR, TNR, FNR, FPR,
  PPV, NPV, FDR, FOR,
  FBETA, J, MK, ACC, BACC, MCC, KAPPA, FM, G2, TS, PT,
};

inline constexpr int kMeasureKindCount = 23;

/// A measure plus its parameter. Only FBETA uses beta; it is 1 elsewhere.
struct MeasureId {
  MeasureKind kind = MeasureKind::ACC;
  double beta = 1.0;

  static MeasureId fbeta(double beta);

  friend bool operator==(const MeasureId&, const MeasureId&) = default;
};

/// Positivity requirements on P, N, P-hat and N-hat. The last one is
/// specific to Cohen's kappa (chance agreement must stay below one) and is
/// only ever reported by the Dutch Draw layer.
enum class Requirement {
  PositivesPresent,
  NegativesPresent,
  PredictedPositivesPresent,
  PredictedNegativesPresent,
  ChanceAgreementBelowOne,
};

std::string_view requirement_name(Requirement r) noexcept;

struct DefinednessRule {
  bool requires_p_pos = false;
  bool requires_n_pos = false;
  bool requires_phat_pos = false;
  bool requires_nhat_pos = false;
};

struct Codomain {
  double lo = 0.0;
  double hi = 1.0;  // +inf for the raw counts
};

struct MeasureSpec {
  MeasureId id;
  DefinednessRule definedness;
  Codomain codomain;
  bool is_linear_in_tp = true;
  bool eligible_for_dd = true;
};

/// Builds the catalog entry for a measure. Throws InvalidArgument for FBETA
/// with a beta that is not strictly positive and finite.
MeasureSpec make_spec(MeasureId id);
MeasureSpec make_spec(MeasureKind kind);

/// All 23 measures in catalog order (FBETA with the given beta).
std::vector<MeasureSpec> catalog(double beta = 1.0);
/// The 22 measures that admit Dutch Draw expectations (everything but PT).
std::vector<MeasureSpec> dd_catalog(double beta = 1.0);

bool is_count_measure(MeasureKind kind) noexcept;
/// Measures that are conventionally minimized: FN, FP, FNR, FPR, FDR, FOR.
bool prefers_minimum(MeasureKind kind) noexcept;

std::string_view kind_name(MeasureKind kind) noexcept;
/// "F1" for beta == 1, "F2" for beta == 2, "Fbeta(0.5)" otherwise.
std::string display_name(const MeasureId& id);
/// Case-insensitive; accepts the kind names plus "F1" and "ACCURACY"-style
/// aliases. The returned id carries `beta` for FBETA.
std::optional<MeasureId> parse_measure(std::string_view name, double beta = 1.0);

ConfusionCounts confusion_counts(std::span<const int> y_true, std::span<const int> y_pred);

/// Every violated requirement among P>0, N>0, P-hat>0, N-hat>0. Total.
std::vector<Requirement> check_definedness(const MeasureSpec& spec, Count m, Count p, Count phat);

/// Point evaluation on confusion counts. Throws UndefinedMeasure when a
/// requirement fails (including kappa's chance agreement of one) and
/// PtDenominatorZero for PT when TPR == FPR.
double evaluate_measure(const MeasureSpec& spec, const ConfusionCounts& counts);

namespace detail {
// Formula only, no definedness checks. Callers must have validated counts.
double evaluate_unchecked(const MeasureSpec& spec, const ConfusionCounts& c) noexcept;
}  // namespace detail

}  // namespace dutchdraw
