#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace mvi {

/// Rows of a GF(2) matrix, column j stored in bit j of each row (at most 64 columns).
using Gf2Rows = std::vector<std::uint64_t>;

/// Rank over GF(2) by elimination.
std::size_t gf2_rank(const Gf2Rows& rows);

/// All x (bit r selects rows[r]) with XOR of selected rows equal to target.
/// Returns one particular solution and a basis of the null space.
struct Gf2Solution {
  std::uint64_t particular = 0;
  std::vector<std::uint64_t> null_basis;
};
std::optional<Gf2Solution> gf2_solve_combination(const Gf2Rows& rows, std::uint64_t target);

}  // namespace mvi
