#pragma once

#include <mvi/search.hpp>

#include <string>

namespace mvi::cli {

const char* to_string(SynthTarget t);
const char* to_string(SpectrumMethod m);
const char* to_string(Objective o);

/// "NOT 2, CNOT 3, Toffoli-3 2"
std::string gate_summary(const CostReport& r);

/// Plain key: value lines describing one verified solution.
std::string format_report(const Solution& s, const SearchConfig& cfg, std::size_t rank);

}  // namespace mvi::cli
