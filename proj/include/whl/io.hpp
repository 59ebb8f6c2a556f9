#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "whl/atomic.hpp"
#include "whl/filtration.hpp"
#include "whl/grid.hpp"
#include "whl/walsh.hpp"

namespace whl::io {

using nlohmann::json;

// Exponent: {"resolution": N, "values": [...]} or
//           {"resolution": N, "formula": {"kind": "affine", "a": a, "c": c}}
//           (also "constant" with "p", "split" with "left"/"right").
VariableExponent exponent_from_json(const json& j);
json to_json(const VariableExponent& exp);

// Function: {"resolution": N, "values": [...]}
GridFunction function_from_json(const json& j);
json to_json(const GridFunction& f);

// Filtration: {"resolution": N, "levels": [[[cells...], ...], ...]} or
//             {"resolution": N, "kind": "dyadic"}.
DyadicFiltration filtration_from_json(const json& j);
json to_json(const DyadicFiltration& filt);

/// {"resolution": N, "coefficients": [...]}
json to_json(const WalshSpectrum& spec);

/// Entries carry k, mu_k, tau per cell (null for infinity) and the atom's terminal values.
json to_json(const AtomBundle& bundle);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/**
 * Exponent from a command-line spec: "const:p", "affine:a,c", "split:left,right",
 * or a path to a JSON exponent file. Formula specs are sampled at `resolution`;
 * a file must match it unless `resolution` is 0.
 */
VariableExponent parse_exponent_spec(const std::string& spec, unsigned resolution);

}  // namespace whl::io
