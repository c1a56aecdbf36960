#include "isospec/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "isospec/error.hpp"

namespace isospec::io {

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::schema, "field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) schema_error(field, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) schema_error(field, "expected an integer");
  const auto i = v.get<long long>();
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) {
    schema_error(field, "integer out of range");
  }
  return static_cast<int>(i);
}

// Re-labels value errors raised by type constructors with the document field.
template <class F>
auto with_field(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::schema) throw;
    if (e.message().rfind("field '", 0) == 0) throw;
    schema_error(field, e.message());
  }
}

}  // namespace

json to_json(const OperatorSpec& op) {
  json doc = json::object();
  doc["grid_nodes"] = op.grid().intervals();
  doc["potential"] = std::vector<double>(op.potential.values().begin(), op.potential.values().end());
  doc["alpha"] = op.alpha();
  doc["beta"] = op.beta();
  return doc;
}

OperatorSpec operator_from_json(const json& doc) {
  const int m = integer(require(doc, "grid_nodes", ""), "grid_nodes");
  const json& qv = require(doc, "potential", "");
  if (!qv.is_array()) schema_error("potential", "expected an array");
  std::vector<double> q;
  q.reserve(qv.size());
  for (std::size_t i = 0; i < qv.size(); ++i) {
    q.push_back(number(qv[i], "potential[" + std::to_string(i) + "]"));
  }
  const double alpha = number(require(doc, "alpha", ""), "alpha");
  const double beta = number(require(doc, "beta", ""), "beta");

  Grid grid = with_field("grid_nodes", [&] { return Grid(m); });
  Potential pot = with_field("potential", [&] { return Potential(grid, std::move(q)); });
  if (!(alpha > 0.0 && alpha < pi)) schema_error("alpha", "must lie in (0, pi)");
  if (!(beta > 0.0 && beta < pi)) schema_error("beta", "must lie in (0, pi)");
  return OperatorSpec{std::move(pot), RobinAngles(alpha, beta)};
}

json to_json(const SpectrumTable& table) {
  json doc = json::array();
  for (const auto& d : table.data()) {
    json rec = json::object();
    rec["n"] = d.n;
    rec["mu"] = d.mu;
    rec["a"] = d.a;
    if (d.b) rec["b"] = *d.b;
    rec["phi_end"] = d.phi_end;
    rec["kappa"] = d.kappa;
    doc.push_back(std::move(rec));
  }
  return doc;
}

SpectrumTable spectrum_from_json(const json& doc) {
  if (!doc.is_array()) schema_error("spectrum", "expected an array of records");
  SpectrumTable table;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string path = "[" + std::to_string(i) + "]";
    const json& rec = doc[i];
    SpectralDatum d;
    d.n = integer(require(rec, "n", path), path + ".n");
    d.mu = number(require(rec, "mu", path), path + ".mu");
    d.a = number(require(rec, "a", path), path + ".a");
    if (rec.contains("b")) d.b = number(rec["b"], path + ".b");
    d.phi_end = number(require(rec, "phi_end", path), path + ".phi_end");
    d.kappa = number(require(rec, "kappa", path), path + ".kappa");
    with_field(path, [&] {
      table.push_back(d);
      return 0;
    });
  }
  return table;
}

json to_json(const PerturbationSeq& c) {
  json doc = json::array();
  for (std::size_t n = 0; n < c.coeffs().size(); ++n) {
    doc.push_back(json{{"n", static_cast<int>(n)}, {"c", c.coeffs()[n]}});
  }
  return doc;
}

PerturbationSeq coefficients_from_json(const json& doc) {
  if (!doc.is_array()) schema_error("coefficients", "expected an array of {n, c} records");
  std::vector<double> coeffs;
  std::set<int> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string path = "[" + std::to_string(i) + "]";
    const int n = integer(require(doc[i], "n", path), path + ".n");
    const double c = number(require(doc[i], "c", path), path + ".c");
    if (n < 0) schema_error(path + ".n", "must be nonnegative");
    if (!seen.insert(n).second) schema_error(path + ".n", "duplicate index " + std::to_string(n));
    if (static_cast<std::size_t>(n) >= coeffs.size()) coeffs.resize(static_cast<std::size_t>(n) + 1, 0.0);
    coeffs[static_cast<std::size_t>(n)] = c;
  }
  return PerturbationSeq(std::move(coeffs));
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::schema, std::string("document is not valid JSON: ") + e.what());
  }
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string potential_csv(const Potential& q) {
  std::string out = "x,q\n";
  const auto& g = q.grid();
  for (int i = 0; i <= g.intervals(); ++i) {
    out += format_double(g.node(i));
    out += ',';
    out += format_double(q.values()[static_cast<std::size_t>(i)]);
    out += '\n';
  }
  return out;
}

std::string spectrum_csv(const SpectrumTable& table) {
  std::string out = "n,mu,a,b,kappa\n";
  for (const auto& d : table.data()) {
    out += std::to_string(d.n) + ',' + format_double(d.mu) + ',' + format_double(d.a) + ',' +
           (d.b ? format_double(*d.b) : std::string()) + ',' + format_double(d.kappa) + '\n';
  }
  return out;
}

}  // namespace isospec::io
