#include "dutchdraw/measures.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace dutchdraw {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonBinaryValue: return "NonBinaryValue";
    case ErrorCode::UndefinedMeasure: return "UndefinedMeasure";
    case ErrorCode::PtDenominatorZero: return "PtDenominatorZero";
    case ErrorCode::NonlinearMeasure: return "NonlinearMeasure";
    case ErrorCode::UnsupportedMeasure: return "UnsupportedMeasure";
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DegenerateScale: return "DegenerateScale";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string_view requirement_name(Requirement r) noexcept {
  switch (r) {
    case Requirement::PositivesPresent: return "P>0";
    case Requirement::NegativesPresent: return "N>0";
    case Requirement::PredictedPositivesPresent: return "P_hat>0";
    case Requirement::PredictedNegativesPresent: return "N_hat>0";
    case Requirement::ChanceAgreementBelowOne: return "P_e<1";
  }
  return "?";
}

namespace {

constexpr std::array<MeasureKind, kMeasureKindCount> kAllKinds = {
    MeasureKind::TP,    MeasureKind::TN,  MeasureKind::FN,  MeasureKind::FP,  MeasureKind::TPR,
    MeasureKind::TNR,   MeasureKind::FNR, MeasureKind::FPR, MeasureKind::PPV, MeasureKind::NPV,
    MeasureKind::FDR,   MeasureKind::FOR, MeasureKind::FBETA, MeasureKind::J, MeasureKind::MK,
    MeasureKind::ACC,   MeasureKind::BACC, MeasureKind::MCC, MeasureKind::KAPPA, MeasureKind::FM,
    MeasureKind::G2,    MeasureKind::TS,  MeasureKind::PT,
};

DefinednessRule rule_for(MeasureKind kind) {
  // p, n, phat, nhat
  switch (kind) {
    case MeasureKind::TP:
    case MeasureKind::TN:
    case MeasureKind::FN:
    case MeasureKind::FP:
    case MeasureKind::ACC:
    case MeasureKind::KAPPA: return {false, false, false, false};
    case MeasureKind::TPR:
    case MeasureKind::FNR:
    case MeasureKind::TS: return {true, false, false, false};
    case MeasureKind::TNR:
    case MeasureKind::FPR: return {false, true, false, false};
    case MeasureKind::PPV:
    case MeasureKind::FDR: return {false, false, true, false};
    case MeasureKind::NPV:
    case MeasureKind::FOR: return {false, false, false, true};
    case MeasureKind::FBETA:
    case MeasureKind::FM: return {true, false, true, false};
    case MeasureKind::J:
    case MeasureKind::BACC:
    case MeasureKind::G2:
    case MeasureKind::PT: return {true, true, false, false};
    case MeasureKind::MK: return {false, false, true, true};
    case MeasureKind::MCC: return {true, true, true, true};
  }
  return {};
}

Codomain codomain_for(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::TP:
    case MeasureKind::TN:
    case MeasureKind::FN:
    case MeasureKind::FP: return {0.0, std::numeric_limits<double>::infinity()};
    case MeasureKind::J:
    case MeasureKind::MK:
    case MeasureKind::MCC:
    case MeasureKind::KAPPA: return {-1.0, 1.0};
    default: return {0.0, 1.0};
  }
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

}  // namespace

MeasureId MeasureId::fbeta(double beta) { return MeasureId{MeasureKind::FBETA, beta}; }

MeasureSpec make_spec(MeasureId id) {
  if (id.kind == MeasureKind::FBETA) {
    if (!std::isfinite(id.beta) || id.beta <= 0.0) {
      throw Error(ErrorCode::InvalidArgument, "beta must be a positive finite number");
    }
  } else {
    id.beta = 1.0;
  }
  MeasureSpec spec;
  spec.id = id;
  spec.definedness = rule_for(id.kind);
  spec.codomain = codomain_for(id.kind);
  spec.is_linear_in_tp =
      id.kind != MeasureKind::G2 && id.kind != MeasureKind::TS && id.kind != MeasureKind::PT;
  spec.eligible_for_dd = id.kind != MeasureKind::PT;
  return spec;
}

MeasureSpec make_spec(MeasureKind kind) { return make_spec(MeasureId{kind, 1.0}); }

std::vector<MeasureSpec> catalog(double beta) {
  std::vector<MeasureSpec> out;
  out.reserve(kAllKinds.size());
  for (MeasureKind kind : kAllKinds) out.push_back(make_spec(MeasureId{kind, beta}));
  return out;
}

std::vector<MeasureSpec> dd_catalog(double beta) {
  auto all = catalog(beta);
  std::erase_if(all, [](const MeasureSpec& s) { return !s.eligible_for_dd; });
  return all;
}

bool is_count_measure(MeasureKind kind) noexcept {
  return kind == MeasureKind::TP || kind == MeasureKind::TN || kind == MeasureKind::FN ||
         kind == MeasureKind::FP;
}

bool prefers_minimum(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::FN:
    case MeasureKind::FP:
    case MeasureKind::FNR:
    case MeasureKind::FPR:
    case MeasureKind::FDR:
    case MeasureKind::FOR: return true;
    default: return false;
  }
}

std::string_view kind_name(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::TP: return "TP";
    case MeasureKind::TN: return "TN";
    case MeasureKind::FN: return "FN";
    case MeasureKind::FP: return "FP";
    case MeasureKind::TPR: return "TPR";
    case MeasureKind::TNR: return "TNR";
    case MeasureKind::FNR: return "FNR";
    case MeasureKind::FPR: return "FPR";
    case MeasureKind::PPV: return "PPV";
    case MeasureKind::NPV: return "NPV";
    case MeasureKind::FDR: return "FDR";
    case MeasureKind::FOR: return "FOR";
    case MeasureKind::FBETA: return "FBETA";
    case MeasureKind::J: return "J";
    case MeasureKind::MK: return "MK";
    case MeasureKind::ACC: return "ACC";
    case MeasureKind::BACC: return "BACC";
    case MeasureKind::MCC: return "MCC";
    case MeasureKind::KAPPA: return "KAPPA";
    case MeasureKind::FM: return "FM";
    case MeasureKind::G2: return "G2";
    case MeasureKind::TS: return "TS";
    case MeasureKind::PT: return "PT";
  }
  return "?";
}

std::string display_name(const MeasureId& id) {
  if (id.kind != MeasureKind::FBETA) return std::string(kind_name(id.kind));
  if (id.beta == std::floor(id.beta) && id.beta < 100.0) {
    return "F" + std::to_string(static_cast<int>(id.beta));
  }
  std::ostringstream os;
  os << "Fbeta(" << id.beta << ")";
  return os.str();
}

std::optional<MeasureId> parse_measure(std::string_view name, double beta) {
  const std::string key = upper(name);
  if (key == "F1") return MeasureId::fbeta(1.0);
  if (key == "FBETA" || key == "F_BETA") return MeasureId::fbeta(beta);
  if (key == "F2") return MeasureId::fbeta(2.0);
  if (key == "RECALL" || key == "SENSITIVITY") return MeasureId{MeasureKind::TPR, 1.0};
  if (key == "SPECIFICITY") return MeasureId{MeasureKind::TNR, 1.0};
  if (key == "PRECISION") return MeasureId{MeasureKind::PPV, 1.0};
  if (key == "ACCURACY") return MeasureId{MeasureKind::ACC, 1.0};
  if (key == "CSI") return MeasureId{MeasureKind::TS, 1.0};
  if (key == "G-MEAN2" || key == "GMEAN2") return MeasureId{MeasureKind::G2, 1.0};
  for (MeasureKind kind : kAllKinds) {
    if (key == kind_name(kind)) return MeasureId{kind, 1.0};
  }
  return std::nullopt;
}

ConfusionCounts confusion_counts(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorCode::LengthMismatch, "y_true has " + std::to_string(y_true.size()) +
                                               " entries, y_pred has " +
                                               std::to_string(y_pred.size()));
  }
  if (y_true.empty()) throw Error(ErrorCode::LengthMismatch, "label vectors are empty");
  ConfusionCounts c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
      throw Error(ErrorCode::NonBinaryValue, "non-binary label at position " + std::to_string(i));
    }
    if (t == 1) {
      (p == 1 ? c.tp : c.fn) += 1;
    } else {
      (p == 1 ? c.fp : c.tn) += 1;
    }
  }
  return c;
}

std::vector<Requirement> check_definedness(const MeasureSpec& spec, Count m, Count p, Count phat) {
  std::vector<Requirement> out;
  const DefinednessRule& r = spec.definedness;
  if (r.requires_p_pos && p <= 0) out.push_back(Requirement::PositivesPresent);
  if (r.requires_n_pos && m - p <= 0) out.push_back(Requirement::NegativesPresent);
  if (r.requires_phat_pos && phat <= 0) out.push_back(Requirement::PredictedPositivesPresent);
  if (r.requires_nhat_pos && m - phat <= 0) out.push_back(Requirement::PredictedNegativesPresent);
  return out;
}

namespace detail {

double evaluate_unchecked(const MeasureSpec& spec, const ConfusionCounts& c) noexcept {
  const double tp = static_cast<double>(c.tp);
  const double fp = static_cast<double>(c.fp);
  const double fn = static_cast<double>(c.fn);
  const double tn = static_cast<double>(c.tn);
  const double m = tp + fp + fn + tn;
  const double p = tp + fn;
  const double n = tn + fp;
  const double phat = tp + fp;
  const double nhat = tn + fn;

  switch (spec.id.kind) {
    case MeasureKind::TP: return tp;
    case MeasureKind::TN: return tn;
    case MeasureKind::FN: return fn;
    case MeasureKind::FP: return fp;
    case MeasureKind::TPR: return tp / p;
    case MeasureKind::TNR: return tn / n;
    case MeasureKind::FNR: return fn / p;
    case MeasureKind::FPR: return fp / n;
    case MeasureKind::PPV: return tp / phat;
    case MeasureKind::NPV: return tn / nhat;
    case MeasureKind::FDR: return fp / phat;
    case MeasureKind::FOR: return fn / nhat;
    case MeasureKind::FBETA: {
      // (1+b^2) / (1/PPV + b^2/TPR), multiplied through by TP so that TP = 0
      // yields 0 instead of 1/inf.
      const double b2 = spec.id.beta * spec.id.beta;
      return (1.0 + b2) * tp / (phat + b2 * p);
    }
    case MeasureKind::J: return tp / p + tn / n - 1.0;
    case MeasureKind::MK: return tp / phat + tn / nhat - 1.0;
    case MeasureKind::ACC: return (tp + tn) / m;
    case MeasureKind::BACC: return 0.5 * (tp / p + tn / n);
    case MeasureKind::MCC: {
      const double num = tp * tn - fp * fn;
      return num / std::sqrt(phat * nhat * p * n);
    }
    case MeasureKind::KAPPA: {
      // (P_o - P_e) / (1 - P_e) scaled by M^2; every term is an exact integer.
      const Count mm = c.total();
      const Count chance = c.predicted_positives() * c.positives() +
                           c.predicted_negatives() * c.negatives();
      const Count observed = mm * (c.tp + c.tn);
      return static_cast<double>(observed - chance) / static_cast<double>(mm * mm - chance);
    }
    case MeasureKind::FM: return std::sqrt((tp / p) * (tp / phat));
    case MeasureKind::G2: return std::sqrt((tp / p) * (tn / n));
    case MeasureKind::TS: return tp / (tp + fp + fn);
    case MeasureKind::PT: {
      const double tpr = tp / p;
      const double fpr = fp / n;
      return (std::sqrt(tpr * fpr) - fpr) / (tpr - fpr);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

double evaluate_measure(const MeasureSpec& spec, const ConfusionCounts& counts) {
  if (counts.tp < 0 || counts.fp < 0 || counts.fn < 0 || counts.tn < 0 || counts.total() < 1) {
    throw Error(ErrorCode::InvalidArgument, "confusion counts must be non-negative with M >= 1");
  }
  const auto violations =
      check_definedness(spec, counts.total(), counts.positives(), counts.predicted_positives());
  if (!violations.empty()) {
    std::string what = display_name(spec.id) + " requires";
    for (Requirement r : violations) {
      what += " ";
      what += requirement_name(r);
    }
    throw Error(ErrorCode::UndefinedMeasure, what);
  }
  if (spec.id.kind == MeasureKind::KAPPA) {
    const Count mm = counts.total();
    const Count chance = counts.predicted_positives() * counts.positives() +
                         counts.predicted_negatives() * counts.negatives();
    if (chance == mm * mm) {
      throw Error(ErrorCode::UndefinedMeasure, "KAPPA requires P_e<1");
    }
  }
  if (spec.id.kind == MeasureKind::PT && counts.tp * counts.negatives() == counts.fp * counts.positives()) {
    throw Error(ErrorCode::PtDenominatorZero, "PT is 0/0 when TPR equals FPR");
  }
  return detail::evaluate_unchecked(spec, counts);
}

}  // namespace dutchdraw
