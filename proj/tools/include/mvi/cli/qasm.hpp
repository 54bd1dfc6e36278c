#pragma once

#include <mvi/circuit.hpp>

#include <string>
#include <string_view>

namespace mvi::cli {

/// OpenQASM 2.0 text using x, cx, ccx and opaque mcx_<k> gates. Structured
/// comments carry the variable context and line bindings for re-import.
std::string export_qasm(const Circuit& c);

/// Reads text produced by export_qasm; throws std::runtime_error otherwise.
Circuit import_qasm(std::string_view text);

}  // namespace mvi::cli
