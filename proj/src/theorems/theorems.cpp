#include "isospec/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "isospec/error.hpp"
#include "isospec/forward_solver.hpp"

namespace isospec {

namespace {

double max_abs_diff_mu(const SpectrumTable& a, const SpectrumTable& b) {
  double worst = 0.0;
  for (int n = 0; n <= std::min(a.n_max(), b.n_max()); ++n) {
    worst = std::max(worst, std::abs(a[n].mu - b[n].mu));
  }
  return worst;
}

/// Orientation-free one-sidedness: how far the relative differences are from
/// being all >= -tol or all <= tol, whichever is closer.
double one_sided_violation(const std::vector<double>& rel_diff) {
  double below = 0.0;  // violation of "all >= 0"
  double above = 0.0;  // violation of "all <= 0"
  for (double d : rel_diff) {
    below = std::max(below, -d);
    above = std::max(above, d);
  }
  return std::min(below, above);
}

void require_same_angle(double a, double b, double tol, const char* what) {
  if (std::abs(a - b) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << what << " differs: " << a << " vs " << b;
    throw Error(ErrorKind::hypothesis, os.str());
  }
}

/// Verdict with the theorem-level overrides: failed isospectrality is a
/// failure; a violated inequality hypothesis or a long tail can at best be
/// inconclusive.
Verdict finish(CertificateReport& r, const Residual& iso) {
  Verdict v = grade(r.residuals);
  if (!(iso.value <= 10.0 * iso.tolerance)) return Verdict::fail;
  if (r.has_flag("one_sidedness_violated")) return Verdict::inconclusive;
  if (v == Verdict::pass && r.has_flag("truncation_tail")) return Verdict::inconclusive;
  return v;
}

EigenOptions with_b() {
  EigenOptions o;
  o.with_b = true;
  return o;
}

}  // namespace

double max_potential_difference(const Potential& q1, const Potential& q2) {
  const Grid& fine = q1.grid().intervals() >= q2.grid().intervals() ? q1.grid() : q2.grid();
  const Potential a = q1.resampled(fine);
  const Potential b = q2.resampled(fine);
  double worst = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  }
  return worst;
}

CertificateReport thm12_certificate(const OperatorSpec& base, const OperatorSpec& candidate, int n_max,
                                    const Tolerances& tol, const CertificateOptions& opts) {
  if (opts.fix_beta) {
    require_same_angle(candidate.beta(), base.beta(), tol.angle, "beta (fixed endpoint)");
  } else {
    require_same_angle(candidate.alpha(), base.alpha(), tol.angle, "alpha (fixed endpoint)");
  }
  const SpectrumTable s0 = eigenvalues(base, n_max, with_b());
  const SpectrumTable s1 = eigenvalues(candidate, n_max, with_b());

  CertificateReport r;
  r.theorem_id = TheoremId::thm1_2;
  const Residual iso{"isospectral", max_abs_diff_mu(s0, s1), tol.iso};
  r.residuals.push_back(iso);

  std::vector<double> rel;
  std::vector<double> c;
  double scale = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    const double x0 = opts.right_endpoint ? *s0[n].b : s0[n].a;
    const double x1 = opts.right_endpoint ? *s1[n].b : s1[n].a;
    rel.push_back((x1 - x0) / x0);
    c.push_back(1.0 / x1 - 1.0 / x0);
    scale += std::abs(c.back());
  }
  const double violation = one_sided_violation(rel);
  r.residuals.push_back({"one_sided_violation", violation, tol.norming});
  if (violation > tol.norming) r.flags.emplace_back("one_sidedness_violated");

  double max_dev = 0.0;
  for (double d : rel) max_dev = std::max(max_dev, std::abs(d));
  r.residuals.push_back({"max_norming_difference", max_dev, tol.norming});

  if (!opts.right_endpoint) {
    double max_c = 0.0;
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      max_c = std::max(max_c, std::abs(c[static_cast<std::size_t>(n)]));
      if (opts.fix_beta) {
        const double a0 = s0[n].a;
        sum += (a0 - s1[n].a) * s0[n].phi_end * s0[n].phi_end / (a0 * a0);
      } else {
        sum += c[static_cast<std::size_t>(n)];
      }
    }
    r.residuals.push_back({opts.fix_beta ? "beta_sum" : "alpha_sum", std::abs(sum), tol.sum * scale});
    r.residuals.push_back({"max_implied_c", max_c, tol.sum * scale});
    const double tail = std::abs(c.back());
    r.diagnostics.emplace_back("tail_last_term", tail);
    if (tail > 0.1 * tol.sum * scale) r.flags.emplace_back("truncation_tail");
  }

  r.diagnostics.emplace_back("max_q_difference", max_potential_difference(base.potential, candidate.potential));
  r.diagnostics.emplace_back("alpha_difference", std::abs(candidate.alpha() - base.alpha()));
  r.diagnostics.emplace_back("beta_difference", std::abs(candidate.beta() - base.beta()));
  r.verdict = finish(r, iso);

  std::ostringstream os;
  os << (opts.right_endpoint ? "b_n" : "a_n") << " comparison over n <= " << n_max << "; fixed "
     << (opts.fix_beta ? "beta" : "alpha") << ". ";
  if (r.has_flag("one_sidedness_violated")) {
    os << "Norming differences change sign: the inequality hypothesis does not hold, no conclusion.";
  } else if (r.verdict == Verdict::pass) {
    os << "Data consistent with a_n = a_n^0 for all n, hence q = q0 and equal boundary angles.";
  } else {
    os << "Residuals outside tolerance.";
  }
  r.details = os.str();
  return r;
}

AmbarzumyanSums ambarzumyan_sums(const PerturbationSeq& c, std::span<const double> a0) {
  AmbarzumyanSums s;
  for (int n : c.support()) {
    if (static_cast<std::size_t>(n) >= a0.size()) {
      throw Error(ErrorKind::coverage, "no base norming constant for c_" + std::to_string(n), n);
    }
    const double cn = c[n];
    const double an = a0[static_cast<std::size_t>(n)];
    const double margin = 1.0 + cn * an;
    if (!(margin > 0.0)) {
      throw Error(ErrorKind::admissibility, "1 + c_n a_n^0 <= 0 at n = " + std::to_string(n), n);
    }
    const double term = cn * cn * an / margin;
    if (term < 0.0) throw Error(ErrorKind::consistency, "negative G term", n);
    s.sum_alpha += cn;
    s.sum_beta += cn / margin;
    s.gap += term;
    s.gap_terms.push_back(term);
  }
  return s;
}

CertificateReport ambarzumyan_certificate(double alpha, const OperatorSpec& candidate, int n_max,
                                          const Tolerances& tol) {
  require_same_angle(candidate.alpha(), alpha, tol.angle, "alpha");
  require_same_angle(candidate.beta(), pi - alpha, tol.angle, "beta vs pi - alpha");

  const OperatorSpec base{Potential::zero(candidate.grid()), RobinAngles(alpha, pi - alpha)};
  const SpectrumTable s0 = eigenvalues(base, n_max);
  const SpectrumTable s1 = eigenvalues(candidate, n_max);

  CertificateReport r;
  r.theorem_id = TheoremId::thm1_4;
  const Residual iso{"isospectral", max_abs_diff_mu(s0, s1), tol.iso};
  r.residuals.push_back(iso);

  std::vector<double> c(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> a0(c.size());
  double scale = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    a0[static_cast<std::size_t>(n)] = s0[n].a;
    c[static_cast<std::size_t>(n)] = 1.0 / s1[n].a - 1.0 / s0[n].a;
    scale += std::abs(c[static_cast<std::size_t>(n)]);
  }
  const AmbarzumyanSums sums = ambarzumyan_sums(PerturbationSeq(c), a0);
  r.residuals.push_back({"gap_sum", sums.gap, tol.sum * scale});
  r.diagnostics.emplace_back("alpha_shift_sum", sums.sum_alpha);
  r.diagnostics.emplace_back("beta_shift_sum", sums.sum_beta);
  double max_q = 0.0;
  for (double v : candidate.potential.values()) max_q = std::max(max_q, std::abs(v));
  r.diagnostics.emplace_back("max_abs_q", max_q);
  const double tail = sums.gap_terms.empty() ? 0.0 : std::abs(c.back() * c.back() * a0.back());
  r.diagnostics.emplace_back("tail_last_term", tail);
  if (tail > 0.1 * tol.sum * scale) r.flags.emplace_back("truncation_tail");
  r.verdict = finish(r, iso);

  std::ostringstream os;
  os.precision(6);
  os << "Base L(0, " << alpha << ", pi - " << alpha << "), n <= " << n_max << ". ";
  if (r.verdict == Verdict::pass) {
    os << "The nonnegative sum vanishes, so every c_n = 0 and q = 0 (max|q| = " << max_q << ").";
  } else if (iso.value > 10.0 * iso.tolerance) {
    os << "Candidate is not isospectral with the zero-potential operator.";
  } else {
    os << "Nonnegative sum does not vanish within tolerance.";
  }
  r.details = os.str();
  return r;
}

CertificateReport levinson_even_check(const OperatorSpec& op, int n_max, const Tolerances& tol) {
  const auto q = op.potential.values();
  double r_sym = 0.0;
  double q_scale = 1.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    r_sym = std::max(r_sym, std::abs(q[i] - q[q.size() - 1 - i]));
    q_scale = std::max(q_scale, 1.0 + std::abs(q[i]));
  }
  const double r_angle = std::abs(op.alpha() + op.beta() - pi);
  const SpectrumTable s = eigenvalues(op, n_max);
  double r_end = 0.0;
  for (const auto& d : s.data()) {
    r_end = std::max(r_end, std::abs(d.phi_end - (d.n % 2 == 0 ? 1.0 : -1.0)));
  }

  CertificateReport r;
  r.theorem_id = TheoremId::levinson;
  r.residuals.push_back({"r_even", r_sym, tol.even * q_scale});
  r.residuals.push_back({"r_angle", r_angle, tol.angle});
  r.residuals.push_back({"r_end", r_end, tol.end});

  const bool even = r_sym <= tol.even * q_scale && r_angle <= tol.angle;
  const bool end_holds = r_end <= tol.end;
  const bool end_clearly_fails = r_end > 10.0 * tol.end;
  std::ostringstream os;
  os.precision(6);
  if (even && end_holds) {
    r.verdict = Verdict::pass;
    os << "Operator is even and phi(pi, mu_n) = (-1)^n for n <= " << n_max << ".";
  } else if (!even && end_clearly_fails) {
    r.verdict = Verdict::pass;
    os << "Operator is not even and phi(pi, mu_n) departs from (-1)^n (r_end = " << r_end << ").";
  } else if (even) {
    r.verdict = end_clearly_fails ? Verdict::fail : Verdict::inconclusive;
    os << "Operator is even but phi(pi, mu_n) misses (-1)^n by " << r_end << ".";
  } else {
    r.verdict = Verdict::inconclusive;
    r.flags.emplace_back("end_values_match_but_not_even");
    os << "Operator is not even yet phi(pi, mu_n) = (-1)^n up to n = " << n_max
       << "; higher indices are needed.";
  }
  r.details = os.str();
  return r;
}

CertificateReport kappa_relations_check(const OperatorSpec& op, int n_max, const Tolerances& tol) {
  const SpectrumTable s = eigenvalues(op, n_max, with_b());
  double r_kpsi = 0.0, r_aphi = 0.0, r_bpsi = 0.0, r_apsi = 0.0, r_bak = 0.0;
  for (const auto& d : s.data()) {
    const double psi0 = psi_at_0(op, d.mu).y;
    const double phi_dot = std::abs(char_derivative(op, d.mu));
    const double psi_dot = std::abs(char_psi_derivative(op, d.mu));
    const double b = *d.b;
    r_kpsi = std::max(r_kpsi, std::abs(d.kappa * psi0 - 1.0));
    r_aphi = std::max(r_aphi, std::abs(d.a - std::abs(d.phi_end) * phi_dot) / d.a);
    r_bpsi = std::max(r_bpsi, std::abs(b - std::abs(psi0) * psi_dot) / b);
    // kappa taken from the psi side, 1 / psi(0, mu_n), so this is not a copy of a_from_phi_end
    r_apsi = std::max(r_apsi, std::abs(d.a - phi_dot / std::abs(psi0)) / d.a);
    r_bak = std::max(r_bak, std::abs(b - d.a / (d.kappa * d.kappa)) / b);
  }
  CertificateReport r;
  r.theorem_id = TheoremId::kappa_relations;
  r.residuals = {{"kappa_psi0_product", r_kpsi, tol.kappa},
                 {"a_from_phi_end", r_aphi, tol.kappa},
                 {"b_from_psi0", r_bpsi, tol.kappa},
                 {"a_from_psi0", r_apsi, tol.kappa},
                 {"b_equals_a_over_kappa_sq", r_bak, tol.kappa}};
  r.verdict = grade(r.residuals);
  r.details = "Relative residuals of the norming-constant / characteristic-function identities for n <= " +
              std::to_string(n_max) + ".";
  return r;
}

CertificateReport thm52_certificate(const OperatorSpec& base, const OperatorSpec& candidate, int n_max,
                                    const Tolerances& tol, const CertificateOptions& opts) {
  if (opts.fix_beta) {
    require_same_angle(candidate.beta(), base.beta(), tol.angle, "beta (fixed endpoint)");
  } else {
    require_same_angle(candidate.alpha(), base.alpha(), tol.angle, "alpha (fixed endpoint)");
  }
  const SpectrumTable s0 = eigenvalues(base, n_max);
  const SpectrumTable s1 = eigenvalues(candidate, n_max);

  CertificateReport r;
  r.theorem_id = TheoremId::thm5_2;
  const Residual iso{"isospectral", max_abs_diff_mu(s0, s1), tol.iso};
  r.residuals.push_back(iso);

  std::vector<double> rel;
  double sum = 0.0;
  double scale = 1.0;
  double max_dev = 0.0;
  double last = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    // right endpoint: psi(0, mu_n) = 1 / kappa_n
    const double k0 = opts.right_endpoint ? 1.0 / std::abs(s0[n].kappa) : std::abs(s0[n].kappa);
    const double k1 = opts.right_endpoint ? 1.0 / std::abs(s1[n].kappa) : std::abs(s1[n].kappa);
    rel.push_back((k1 - k0) / k0);
    max_dev = std::max(max_dev, std::abs(k1 - k0) / k0);
    if (!opts.right_endpoint) {
      const double phi_dot = std::abs(char_derivative(base, s0[n].mu));
      last = opts.fix_beta ? (k0 - k1) / phi_dot : (1.0 / k1 - 1.0 / k0) / phi_dot;
      sum += last;
      scale += std::abs(1.0 / k1 - 1.0 / k0) / phi_dot;
    }
  }
  const double violation = one_sided_violation(rel);
  r.residuals.push_back({"one_sided_violation", violation, tol.norming});
  if (violation > tol.norming) r.flags.emplace_back("one_sidedness_violated");
  r.residuals.push_back({"max_kappa_difference", max_dev, tol.norming});
  if (!opts.right_endpoint) {
    r.residuals.push_back({opts.fix_beta ? "kappa_sum" : "inverse_kappa_sum", std::abs(sum), tol.sum * scale});
    r.diagnostics.emplace_back("tail_last_term", std::abs(last));
    if (std::abs(last) > 0.1 * tol.sum * scale) r.flags.emplace_back("truncation_tail");
  }
  r.diagnostics.emplace_back("max_q_difference", max_potential_difference(base.potential, candidate.potential));
  r.diagnostics.emplace_back("alpha_difference", std::abs(candidate.alpha() - base.alpha()));
  r.diagnostics.emplace_back("beta_difference", std::abs(candidate.beta() - base.beta()));
  r.verdict = finish(r, iso);

  std::ostringstream os;
  os << (opts.right_endpoint ? "psi(0, mu_n)" : "|kappa_n|") << " comparison over n <= " << n_max
     << "; fixed " << (opts.fix_beta ? "beta" : "alpha") << ". ";
  if (r.has_flag("one_sidedness_violated")) {
    os << "Differences change sign: the inequality hypothesis does not hold, no conclusion.";
  } else if (r.verdict == Verdict::pass) {
    os << "Data consistent with kappa_n = kappa_n^0 for all n, hence q = q0 and equal angles.";
  } else {
    os << "Residuals outside tolerance.";
  }
  r.details = os.str();
  return r;
}

CertificateReport marchenko_consistency(const OperatorSpec& base, const OperatorSpec& candidate,
                                        int n_max, const Tolerances& tol) {
  const SpectrumTable s0 = eigenvalues(base, n_max);
  const SpectrumTable s1 = eigenvalues(candidate, n_max);
  CertificateReport r;
  r.theorem_id = TheoremId::marchenko_consistency;
  const Residual iso{"isospectral", max_abs_diff_mu(s0, s1), tol.iso};
  double max_rel = 0.0;
  for (int n = 0; n <= n_max; ++n) max_rel = std::max(max_rel, std::abs(s1[n].a - s0[n].a) / s0[n].a);
  const Residual norming{"norming_equal", max_rel, tol.norming};
  r.residuals = {iso, norming};
  const bool hypotheses = iso.within() && norming.within();
  const double dq = max_potential_difference(base.potential, candidate.potential);
  r.residuals.push_back({"max_q_difference", dq, tol.potential});
  r.residuals.push_back({"alpha_difference", std::abs(candidate.alpha() - base.alpha()), 1e-6});
  r.residuals.push_back({"beta_difference", std::abs(candidate.beta() - base.beta()), 1e-6});
  if (hypotheses) {
    r.verdict = grade(r.residuals);
    r.details = "Spectral data coincide; operators compared directly.";
  } else {
    r.verdict = Verdict::inconclusive;
    r.flags.emplace_back("spectral_data_differ");
    r.details = "Spectral data differ, so uniqueness makes no claim.";
  }
  return r;
}

FamilyScan ambarzumyan_family_scan(double alpha, const Grid& grid, int n_max, int rays,
                                   std::uint64_t seed, const Tolerances& tol) {
  const OperatorSpec base{Potential::zero(grid), RobinAngles(alpha, pi - alpha)};
  const SpectrumTable s0 = eigenvalues(base, n_max);
  FamilyScan scan;
  scan.base_norming.reserve(s0.size());
  for (const auto& d : s0.data()) scan.base_norming.push_back(d.a);
  scan.min_curvature = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> index(0, n_max);
  std::uniform_int_distribution<int> support_size(2, std::min(8, n_max + 1));
  std::normal_distribution<double> gauss(0.0, 1.0);
  constexpr int steps = 50;

  for (int ray = 0; ray < rays; ++ray) {
    std::vector<double> d(static_cast<std::size_t>(n_max) + 1, 0.0);
    const int k = support_size(rng);
    std::vector<int> idx;
    while (static_cast<int>(idx.size()) < k) {
      const int n = index(rng);
      if (std::find(idx.begin(), idx.end(), n) == idx.end()) idx.push_back(n);
    }
    double mean = 0.0;
    for (int n : idx) {
      d[static_cast<std::size_t>(n)] = gauss(rng);
      mean += d[static_cast<std::size_t>(n)];
    }
    mean /= k;
    double norm = 0.0;
    for (int n : idx) {
      d[static_cast<std::size_t>(n)] -= mean;
      norm += d[static_cast<std::size_t>(n)] * d[static_cast<std::size_t>(n)];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    for (double& v : d) v /= norm;

    // Largest |t| keeping |c_n| <= 1 and 1 + c_n a_n^0 >= 0.05 in both directions.
    double t_pos = 1.0, t_neg = 1.0;
    for (int n : idx) {
      const double dn = d[static_cast<std::size_t>(n)];
      const double an = scan.base_norming[static_cast<std::size_t>(n)];
      t_pos = std::min(t_pos, 1.0 / std::abs(dn));
      t_neg = std::min(t_neg, 1.0 / std::abs(dn));
      if (dn < 0) t_pos = std::min(t_pos, 0.95 / (-dn * an));
      if (dn > 0) t_neg = std::min(t_neg, 0.95 / (dn * an));
    }
    ++scan.rays;
    for (int sgn : {1, -1}) {
      const double t_max = sgn > 0 ? t_pos : t_neg;
      for (int s = 1; s <= steps; ++s) {
        const double t = sgn * t_max * s / steps;
        std::vector<double> c(d.size());
        double l1 = 0.0, l2 = 0.0;
        for (std::size_t n = 0; n < d.size(); ++n) {
          c[n] = t * d[n];
          l1 += std::abs(c[n]);
          l2 += c[n] * c[n];
        }
        const AmbarzumyanSums sums = ambarzumyan_sums(PerturbationSeq(c), scan.base_norming);
        ++scan.samples;
        scan.max_identity_gap = std::max(scan.max_identity_gap, std::abs(sums.sum_alpha - sums.sum_beta - sums.gap));
        scan.min_curvature = std::min(scan.min_curvature, sums.gap / l2);
        if (std::abs(sums.sum_beta) <= tol.sum * (1.0 + l1)) ++scan.nonzero_solutions;
      }
    }
  }
  return scan;
}

}  // namespace isospec
