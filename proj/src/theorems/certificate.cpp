#include "isospec/certificate.hpp"

#include <algorithm>
#include <limits>

namespace isospec {

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::thm1_2: return "thm1_2";
    case TheoremId::thm1_4: return "thm1_4";
    case TheoremId::thm5_2: return "thm5_2";
    case TheoremId::levinson: return "levinson";
    case TheoremId::marchenko_consistency: return "marchenko_consistency";
    case TheoremId::kappa_relations: return "kappa_relations";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::optional<TheoremId> theorem_from_string(std::string_view s) {
  for (auto id : {TheoremId::thm1_2, TheoremId::thm1_4, TheoremId::thm5_2, TheoremId::levinson,
                  TheoremId::marchenko_consistency, TheoremId::kappa_relations}) {
    if (to_string(id) == s) return id;
  }
  return std::nullopt;
}

const Residual* CertificateReport::find(std::string_view name) const {
  auto it = std::find_if(residuals.begin(), residuals.end(),
                         [&](const Residual& r) { return r.name == name; });
  return it == residuals.end() ? nullptr : &*it;
}

double CertificateReport::residual(std::string_view name) const {
  const Residual* r = find(name);
  return r ? r->value : std::numeric_limits<double>::quiet_NaN();
}

std::optional<double> CertificateReport::diagnostic(std::string_view name) const {
  for (const auto& [k, v] : diagnostics) {
    if (k == name) return v;
  }
  return std::nullopt;
}

bool CertificateReport::has_flag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

Verdict grade(const std::vector<Residual>& residuals) {
  bool all_within = true;
  for (const auto& r : residuals) {
    if (!(r.value <= 10.0 * r.tolerance)) return Verdict::fail;
    if (!r.within()) all_within = false;
  }
  return all_within ? Verdict::pass : Verdict::inconclusive;
}

nlohmann::json to_json(const CertificateReport& report) {
  nlohmann::json doc = nlohmann::json::object();
  doc["theorem_id"] = std::string(to_string(report.theorem_id));
  doc["verdict"] = std::string(to_string(report.verdict));
  nlohmann::json res = nlohmann::json::object();
  nlohmann::json tol = nlohmann::json::object();
  for (const auto& r : report.residuals) {
    res[r.name] = r.value;
    tol[r.name] = r.tolerance;
  }
  doc["residuals"] = std::move(res);
  doc["tolerances"] = std::move(tol);
  nlohmann::json diag = nlohmann::json::object();
  for (const auto& [k, v] : report.diagnostics) diag[k] = v;
  doc["diagnostics"] = std::move(diag);
  doc["flags"] = report.flags;
  doc["details"] = report.details;
  return doc;
}

}  // namespace isospec
