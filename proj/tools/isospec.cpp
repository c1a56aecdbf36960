// isospec: spectra, isospectral construction and theorem certificates from the command line.
//
// Exit codes: 0 ok / pass, 2 schema, I/O or usage, 3 inadmissible coefficients,
// 4 certificate fail or hypothesis violation, 5 inconclusive, 6 solver failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "isospec/error.hpp"
#include "isospec/forward_solver.hpp"
#include "isospec/gelfand_levitan.hpp"
#include "isospec/serialize.hpp"
#include "isospec/theorems.hpp"

namespace fs = std::filesystem;
using namespace isospec;
using io::json;

namespace {

enum Exit { ok = 0, usage = 2, inadmissible = 3, failed = 4, inconclusive = 5, solver = 6 };

struct RunConfig {
  std::string input, base, candidate, coeffs, out, csv;
  std::string theorem = "thm1_2";
  int n_max = 12;
  int solver_m = 2000;
  int gl_m = 400;
  bool fix_beta = false;
  bool right_endpoint = false;
  std::optional<double> alpha;
  Tolerances tol;
};

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::schema:
    case ErrorKind::io:
    case ErrorKind::grid:
    case ErrorKind::precondition:
    case ErrorKind::domain:
    case ErrorKind::coverage:
      return usage;
    case ErrorKind::admissibility: return inadmissible;
    case ErrorKind::hypothesis: return failed;
    default: return solver;
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.n_max < 0) throw Error(ErrorKind::schema, "--n-max must be >= 0");
  if (cfg.solver_m % 2 != 0) throw Error(ErrorKind::schema, "--solver-m must be even");
  if (cfg.gl_m % 2 != 0) throw Error(ErrorKind::schema, "--gl-m must be even");
}

OperatorSpec load_operator(const std::string& path, const char* flag, const RunConfig& cfg) {
  if (path.empty()) throw Error(ErrorKind::schema, std::string(flag) + " is required");
  OperatorSpec op = io::operator_from_json(io::read_json(path));
  const Grid g(cfg.solver_m);
  if (op.grid() == g) return op;
  return OperatorSpec{op.potential.resampled(g), op.angles};
}

/// Writes to `path`, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    io::write_text(path, text);
  }
}

fs::path sibling(const std::string& out, const std::string& suffix) {
  fs::path p(out);
  return p.parent_path() / (p.stem().string() + suffix);
}

int cmd_spectrum(const RunConfig& cfg) {
  const OperatorSpec op = load_operator(cfg.input, "--input", cfg);
  EigenOptions opts;
  opts.with_b = true;
  const SpectrumTable table = eigenvalues(op, cfg.n_max, opts);
  emit(cfg.out, io::dump(io::to_json(table)));
  if (!cfg.csv.empty()) io::write_text(cfg.csv, io::spectrum_csv(table));
  return ok;
}

struct Verification {
  json doc;
  double max_mu_diff = 0.0;
};

Verification verify(const OperatorSpec& base, const OperatorSpec& member, const PerturbationSeq& c,
                    int n_max) {
  const SpectrumTable s0 = eigenvalues(base, n_max);
  const SpectrumTable s1 = eigenvalues(member, n_max);
  Verification v;
  v.doc = json::object();
  json rows = json::array();
  double max_law = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double expected_a = s0[n].a / (1.0 + c[n] * s0[n].a);
    const double law = std::abs(s1[n].a - expected_a) / expected_a;
    const double dmu = std::abs(s1[n].mu - s0[n].mu);
    v.max_mu_diff = std::max(v.max_mu_diff, dmu);
    max_law = std::max(max_law, law);
    rows.push_back({{"n", n},
                    {"mu_base", s0[n].mu},
                    {"mu", s1[n].mu},
                    {"mu_residual", dmu},
                    {"a_base", s0[n].a},
                    {"a", s1[n].a},
                    {"a_expected", expected_a},
                    {"a_relative_residual", law}});
  }
  v.doc["rows"] = std::move(rows);
  v.doc["max_mu_residual"] = v.max_mu_diff;
  v.doc["max_norming_relative_residual"] = max_law;
  return v;
}

std::string verification_csv(const json& doc) {
  std::string out = "n,mu_base,mu,mu_residual,a_base,a,a_expected,a_relative_residual\n";
  for (const auto& r : doc["rows"]) {
    out += std::to_string(r["n"].get<int>());
    for (const char* k : {"mu_base", "mu", "mu_residual", "a_base", "a", "a_expected", "a_relative_residual"}) {
      out += ',' + io::format_double(r[k].get<double>());
    }
    out += '\n';
  }
  return out;
}

int cmd_construct(const RunConfig& cfg) {
  const OperatorSpec base = load_operator(cfg.base, "--base", cfg);
  if (cfg.coeffs.empty()) throw Error(ErrorKind::schema, "--coeffs is required");
  const PerturbationSeq c = io::coefficients_from_json(io::read_json(cfg.coeffs));
  GLOptions opts;
  opts.gl_intervals = cfg.gl_m;
  const OperatorSpec member = isospectral_construct(base, c, opts);
  const Verification v = verify(base, member, c, cfg.n_max);

  emit(cfg.out, io::dump(io::to_json(member)));
  if (!cfg.out.empty()) {
    io::write_text(cfg.csv.empty() ? sibling(cfg.out, ".potential.csv") : fs::path(cfg.csv),
                   io::potential_csv(member.potential));
    io::write_text(sibling(cfg.out, ".verification.json"), io::dump(v.doc));
  } else if (!cfg.csv.empty()) {
    io::write_text(cfg.csv, io::potential_csv(member.potential));
  }
  std::cerr << "max |mu_n - mu_n^0| (n <= " << cfg.n_max << ") = " << io::format_double(v.max_mu_diff) << '\n';
  return ok;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::pass: return ok;
    case Verdict::fail: return failed;
    case Verdict::inconclusive: return inconclusive;
  }
  return solver;
}

CertificateReport hypothesis_report(TheoremId id, const Error& e) {
  CertificateReport r;
  r.theorem_id = id;
  r.verdict = Verdict::fail;
  r.flags.emplace_back("hypothesis_violated");
  r.details = "hypothesis violated: " + e.message();
  return r;
}

int cmd_certify(const RunConfig& cfg) {
  const auto id = theorem_from_string(cfg.theorem);
  if (!id) throw Error(ErrorKind::schema, "unknown theorem '" + cfg.theorem + "'");
  const CertificateOptions opts{cfg.fix_beta, cfg.right_endpoint};
  CertificateReport report;
  try {
    switch (*id) {
      case TheoremId::thm1_2:
        report = thm12_certificate(load_operator(cfg.base, "--base", cfg),
                                   load_operator(cfg.candidate, "--candidate", cfg), cfg.n_max, cfg.tol, opts);
        break;
      case TheoremId::thm5_2:
        report = thm52_certificate(load_operator(cfg.base, "--base", cfg),
                                   load_operator(cfg.candidate, "--candidate", cfg), cfg.n_max, cfg.tol, opts);
        break;
      case TheoremId::thm1_4: {
        const OperatorSpec cand = load_operator(cfg.candidate, "--candidate", cfg);
        double alpha = cand.alpha();
        if (cfg.alpha) alpha = *cfg.alpha;
        else if (!cfg.base.empty()) alpha = load_operator(cfg.base, "--base", cfg).alpha();
        report = ambarzumyan_certificate(alpha, cand, cfg.n_max, cfg.tol);
        break;
      }
      case TheoremId::levinson: {
        const std::string& path = cfg.candidate.empty() ? cfg.input : cfg.candidate;
        report = levinson_even_check(load_operator(path, "--input", cfg), cfg.n_max, cfg.tol);
        break;
      }
      case TheoremId::kappa_relations: {
        const std::string& path = cfg.candidate.empty() ? cfg.input : cfg.candidate;
        report = kappa_relations_check(load_operator(path, "--input", cfg), cfg.n_max, cfg.tol);
        break;
      }
      case TheoremId::marchenko_consistency:
        report = marchenko_consistency(load_operator(cfg.base, "--base", cfg),
                                       load_operator(cfg.candidate, "--candidate", cfg), cfg.n_max, cfg.tol);
        break;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::hypothesis) throw;
    report = hypothesis_report(*id, e);
  }
  emit(cfg.out, io::dump(to_json(report)));
  std::cerr << to_string(report.theorem_id) << ": " << to_string(report.verdict) << " - " << report.details
            << '\n';
  return verdict_exit(report.verdict);
}

int cmd_demo(const RunConfig& cfg) {
  const fs::path dir = cfg.out.empty() ? fs::path("isospec-demo") : fs::path(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create output directory " + dir.string() + ": " + ec.message());

  const Grid grid(cfg.solver_m);
  const OperatorSpec base{Potential::zero(grid), RobinAngles(pi / 2, pi / 2)};
  const PerturbationSeq c({1.0});
  GLOptions opts;
  opts.gl_intervals = cfg.gl_m;
  const OperatorSpec member = isospectral_construct(base, c, opts);
  const Verification v = verify(base, member, c, cfg.n_max);
  const CertificateReport cert = ambarzumyan_certificate(pi / 2, base, cfg.n_max, cfg.tol);

  io::write_text(dir / "base_operator.json", io::dump(io::to_json(base)));
  io::write_text(dir / "member_operator.json", io::dump(io::to_json(member)));
  io::write_text(dir / "member_potential.csv", io::potential_csv(member.potential));
  io::write_text(dir / "spectrum_check.csv", verification_csv(v.doc));
  io::write_text(dir / "ambarzumyan_certificate.json", io::dump(to_json(cert)));

  std::cout << "c_0 = 1 on L(0, pi/2, pi/2): alpha = " << io::format_double(member.alpha())
            << ", cot beta = " << io::format_double(member.angles.cot_beta()) << '\n'
            << "max |mu_n - n^2| for n <= " << cfg.n_max << ": " << io::format_double(v.max_mu_diff) << '\n'
            << "Ambarzumyan certificate on the base: " << to_string(cert.verdict) << '\n'
            << "wrote 5 files to " << dir.string() << '\n';
  return cert.verdict == Verdict::pass ? ok : verdict_exit(cert.verdict);
}

std::string tolerance_table() {
  const Tolerances t;
  std::ostringstream os;
  os << "Tolerance defaults (override with --tol-<name>):\n"
     << "  iso        " << t.iso << "   max |mu_n - mu_n^0|\n"
     << "  norming    " << t.norming << "   relative norming-constant comparisons\n"
     << "  sum        " << t.sum << "   vanishing sums, times 1 + sum |c_n|\n"
     << "  kappa      " << t.kappa << "   characteristic-function identities\n"
     << "  even       " << t.even << "   max |q(x) - q(pi - x)|, times 1 + max |q|\n"
     << "  end        " << t.end << "   max |phi(pi, mu_n) - (-1)^n|\n"
     << "  angle      " << t.angle << "   alpha / beta hypothesis checks\n"
     << "  potential  " << t.potential << "   max |q - q0| in direct comparisons\n"
     << "Exit codes: 0 ok/pass, 2 input or usage, 3 inadmissible c, 4 fail or hypothesis,\n"
     << "            5 inconclusive, 6 solver error.";
  return os.str();
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--out", cfg.out, "Output file (directory for demo); stdout when omitted");
  app->add_option("--n-max", cfg.n_max, "Largest eigenvalue index")->capture_default_str();
  app->add_option("--solver-m", cfg.solver_m, "Shooting grid intervals (even)")->capture_default_str();
  app->add_option("--gl-m", cfg.gl_m, "Gelfand-Levitan grid intervals (even)")->capture_default_str();
  app->add_option("--tol-iso", cfg.tol.iso);
  app->add_option("--tol-norming", cfg.tol.norming);
  app->add_option("--tol-sum", cfg.tol.sum);
  app->add_option("--tol-kappa", cfg.tol.kappa);
  app->add_option("--tol-even", cfg.tol.even);
  app->add_option("--tol-end", cfg.tol.end);
  app->add_option("--tol-angle", cfg.tol.angle);
  app->add_option("--tol-potential", cfg.tol.potential);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sturm-Liouville spectra, isospectral families and theorem certificates"};
  app.footer(tolerance_table());
  app.require_subcommand(1);
  RunConfig cfg;

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and norming constants of an operator");
  spectrum->add_option("--input", cfg.input, "Operator document")->required();
  spectrum->add_option("--csv", cfg.csv, "Also write n,mu,a,b,kappa CSV here");
  add_common(spectrum, cfg);

  auto* construct = app.add_subcommand("construct", "Isospectral family member from coefficients c_n");
  construct->add_option("--base", cfg.base, "Base operator document")->required();
  construct->add_option("--coeffs", cfg.coeffs, "Coefficient document [{n, c}, ...]")->required();
  construct->add_option("--csv", cfg.csv, "Potential CSV path (default: next to --out)");
  add_common(construct, cfg);

  auto* certify = app.add_subcommand("certify", "Theorem certificate");
  certify->add_option("--theorem", cfg.theorem, "thm1_2|thm1_4|thm5_2|levinson|kappa_relations|marchenko_consistency")
      ->capture_default_str();
  certify->add_option("--base", cfg.base, "Base operator document");
  certify->add_option("--candidate", cfg.candidate, "Candidate operator document");
  certify->add_option("--input", cfg.input, "Operator document (levinson, kappa_relations)");
  certify->add_option("--alpha", cfg.alpha, "Angle alpha of the zero-potential base (thm1_4)");
  certify->add_flag("--fix-beta", cfg.fix_beta, "Mirrored hypothesis: beta fixed instead of alpha");
  certify->add_flag("--right-endpoint", cfg.right_endpoint, "Compare b_n / psi(0, mu_n) instead");
  add_common(certify, cfg);

  auto* demo = app.add_subcommand("demo", "Neumann base, c_0 = 1 member, spectrum check, Ambarzumyan");
  add_common(demo, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    validate(cfg);
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (construct->parsed()) return cmd_construct(cfg);
    if (certify->parsed()) return cmd_certify(cfg);
    return cmd_demo(cfg);
  } catch (const Error& e) {
    std::cerr << "isospec: " << e.what();
    if (e.index()) std::cerr << " (index " << *e.index() << ')';
    std::cerr << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "isospec: " << e.what() << '\n';
    return solver;
  }
}
