#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace isospec {

enum class TheoremId {
  thm1_2,
  thm1_4,
  thm5_2,
  levinson,
  marchenko_consistency,
  kappa_relations,
};

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(TheoremId id);
std::string_view to_string(Verdict v);
std::optional<TheoremId> theorem_from_string(std::string_view s);

/// A gated quantity: the verdict depends on value <= tolerance.
struct Residual {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;

  bool within() const { return value <= tolerance; }
};

struct CertificateReport {
  TheoremId theorem_id = TheoremId::thm1_2;
  std::vector<Residual> residuals;
  /// Reported for corroboration only; no effect on the verdict.
  std::vector<std::pair<std::string, double>> diagnostics;
  /// Named conditions such as "one_sidedness_violated" or "truncation_tail".
  std::vector<std::string> flags;
  Verdict verdict = Verdict::inconclusive;
  std::string details;

  const Residual* find(std::string_view name) const;
  double residual(std::string_view name) const;
  std::optional<double> diagnostic(std::string_view name) const;
  bool has_flag(std::string_view flag) const;
};

/// pass when every residual is within tolerance, fail when any exceeds ten
/// times its tolerance, inconclusive in between.
Verdict grade(const std::vector<Residual>& residuals);

/// {"theorem_id", "verdict", "residuals": {name: value}, "tolerances": {...},
///  "diagnostics": {...}, "flags": [...], "details"}
nlohmann::json to_json(const CertificateReport& report);

}  // namespace isospec
