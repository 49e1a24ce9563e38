#pragma once

#include "hybrid/engine.hpp"
#include "hybrid/inverse.hpp"
#include "hybrid/model.hpp"

#include <iosfwd>
#include <string>

namespace hybrid {

/// Version stamp carried by every config and output document.
inline constexpr int kSchemaVersion = 1;

/// A parsed configuration: the hybrid geometry plus the boundary condition.
/// Boundary blocks may come from section-5 lambda triples, raw (A, B)
/// matrices, or a canonical unitary Phi (converted via A = 1 - Phi,
/// B = i(1 + Phi)).
struct LoadedConfig {
    HybridSpec hybrid;
    BoundaryCondition bc;
};

/// Reads the JSON config schema (see docs in README and the shipped example).
/// Throws ParseError on syntax or structural problems; domain validation is
/// the caller's job (validate / check_blocks / require_non_reducible).
LoadedConfig load_config(std::istream& in);
LoadedConfig load_config_file(const std::string& path);  // also ParseError on I/O

/// Serializes an expansion to deterministic JSON (sorted keys, exact
/// rationals as "p/q" strings).  l_tail_order >= 0 attaches a 1/L tail of
/// that order to every coefficient for which the tail exists.
std::string expansion_to_json(const ExpansionResult& result, int l_tail_order = -1);

/// Bit-exact inverse of expansion_to_json (tails are ignored on input, they
/// are derived data).  Throws ParseError.
ExpansionResult expansion_from_json(const std::string& text);

/// Deterministic JSON rendering of an inverse report.
std::string inverse_report_to_json(const InverseReport& report);

}  // namespace hybrid
