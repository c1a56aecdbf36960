#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "isospec/types.hpp"

namespace isospec::io {

using json = nlohmann::json;

// Operator document: {"grid_nodes": M, "potential": [M+1 floats], "alpha": a, "beta": b}
json to_json(const OperatorSpec& op);
OperatorSpec operator_from_json(const json& doc);

// Spectrum document: [{"n", "mu", "a", "b"?, "phi_end", "kappa"}, ...]
json to_json(const SpectrumTable& table);
SpectrumTable spectrum_from_json(const json& doc);

// Coefficient document: [{"n", "c"}, ...]
json to_json(const PerturbationSeq& c);
PerturbationSeq coefficients_from_json(const json& doc);

/// Two-space indented dump with a trailing newline. Doubles are written in
/// shortest round-trip form, so parse(dump(x)) is bit-exact.
std::string dump(const json& doc);
json parse(const std::string& text);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Header `x,q`, one row per grid node.
std::string potential_csv(const Potential& q);
/// Header `n,mu,a,b,kappa`; b is empty when absent.
std::string spectrum_csv(const SpectrumTable& table);

/// 17 significant digits.
std::string format_double(double v);

}  // namespace isospec::io
