#pragma once

#include <mvi/circuit.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace mvi::cli {

inline constexpr const char* kNetlistFormat = "mvisynth-netlist";
inline constexpr int kNetlistVersion = 1;

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view data);

/// Hash over variables, qubits, bindings, gates and sections (not the cost block).
std::string content_hash(const Circuit& c);

/// JSON document described by schema/netlist.schema.json, two-space indented.
std::string export_netlist(const Circuit& c);

struct ImportedNetlist {
  Circuit circuit;
  CostReport stored_cost;
  std::string stored_hash;
};

/// Throws std::runtime_error on malformed input or a hash mismatch.
ImportedNetlist import_netlist(std::string_view text);

}  // namespace mvi::cli
