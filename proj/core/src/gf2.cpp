#include <mvi/gf2.hpp>

#include <bit>

namespace mvi {

namespace {

struct Pivot {
  std::uint64_t vec;
  std::uint64_t comb;
  int bit;
};

int top_bit(std::uint64_t v) { return 63 - std::countl_zero(v); }

void reduce(const std::vector<Pivot>& basis, std::uint64_t& vec, std::uint64_t& comb) {
  for (const auto& p : basis)
    if ((vec >> p.bit) & 1u) {
      vec ^= p.vec;
      comb ^= p.comb;
    }
}

}  // namespace

std::size_t gf2_rank(const Gf2Rows& rows) {
  Gf2Rows basis;
  for (auto v : rows) {
    for (auto b : basis)
      if ((v >> top_bit(b)) & 1u) v ^= b;
    if (v) {
      // keep basis ordered by descending pivot so one pass reduces fully
      auto it = basis.begin();
      while (it != basis.end() && top_bit(*it) > top_bit(v)) ++it;
      basis.insert(it, v);
    }
  }
  return basis.size();
}

std::optional<Gf2Solution> gf2_solve_combination(const Gf2Rows& rows, std::uint64_t target) {
  std::vector<Pivot> basis;
  Gf2Solution sol;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::uint64_t vec = rows[r];
    std::uint64_t comb = std::uint64_t{1} << r;
    reduce(basis, vec, comb);
    if (vec == 0) {
      sol.null_basis.push_back(comb);
      continue;
    }
    const int bit = top_bit(vec);
    // eliminate the new pivot from existing basis vectors to keep reduction single-pass
    for (auto& p : basis)
      if ((p.vec >> bit) & 1u) {
        p.vec ^= vec;
        p.comb ^= comb;
      }
    basis.push_back({vec, comb, bit});
  }
  std::uint64_t vec = target;
  std::uint64_t comb = 0;
  reduce(basis, vec, comb);
  if (vec != 0) return std::nullopt;
  sol.particular = comb;
  return sol;
}

}  // namespace mvi
