#pragma once

// Exact minimum-cost search for small NOT/CNOT/Toffoli circuits over a few lines.
// Line functions are truth tables over a local domain of at most 64 points.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace mvi::detail {

struct LsCost {
  std::int64_t maslov = 0;
  std::int64_t tqc = 0;

  friend auto operator<=>(const LsCost&, const LsCost&) = default;
  LsCost operator+(const LsCost& o) const { return {maslov + o.maslov, tqc + o.tqc}; }
};

/// Line indices: [0, F) free lines, [F, F+A) ancillas, [F+A, F+A+P) pinned, then target.
struct LsGate {
  std::vector<std::size_t> controls;
  std::size_t target = 0;
};

struct LsProblem {
  unsigned domain = 0;
  std::vector<std::uint64_t> free_lines;
  std::vector<std::uint64_t> pinned_lines;
  unsigned max_ancillas = 0;
  bool use_target = false;
  std::uint64_t target_goal = 0;
  /// Functions that must each be held by some free, ancilla or pinned line.
  std::vector<std::uint64_t> present;
  /// Gates writing a free line may only be controlled by free or pinned lines.
  bool free_targets_avoid_ancillas = false;
  /// Rank by TQC before Maslov.
  bool tqc_first = false;
  std::size_t node_limit = 400000;
  /// Prune paths whose cost exceeds this bound.
  std::optional<LsCost> upper_bound;
};

struct LsSolution {
  std::vector<LsGate> gates;
  LsCost cost;
  /// Final functions of free lines followed by ancillas.
  std::vector<std::uint64_t> final_lines;
  /// Line index (same numbering as gates) holding each present goal.
  std::vector<std::size_t> goal_line;
  /// Number of ancillas actually touched.
  unsigned ancillas_used = 0;
};

std::optional<LsSolution> line_search(const LsProblem& p);

/// Memoized, thread-safe wrapper.
std::optional<LsSolution> line_search_cached(const LsProblem& p);

}  // namespace mvi::detail
