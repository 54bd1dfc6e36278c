#include <mvi/polarity.hpp>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace mvi {

PolarityMatrix::PolarityMatrix(unsigned radix, std::vector<TruthSet> rows)
    : radix_(radix), rows_(std::move(rows)) {
  if (radix < 2 || radix > kMaxRadix)
    throw ContractViolation("polarity radix must be in 2.." + std::to_string(kMaxRadix));
  if (rows_.size() != radix)
    throw ContractViolation("polarity matrix for radix " + std::to_string(radix) + " needs " +
                            std::to_string(radix) + " rows, got " +
                            std::to_string(rows_.size()));
  for (const auto& r : rows_) {
    if (r.radix() != radix) throw ContractViolation("polarity row has the wrong width");
    if (r.is_empty()) throw ContractViolation("polarity row must be nonzero");
  }
  canonical_ = gf2_rank(*this) == radix;
}

PolarityMatrix PolarityMatrix::parse(std::string_view text) {
  std::vector<std::string> parts(1);
  for (char c : text) {
    if (c == '[' || c == ']' || c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    if (c == ';' || c == ',') {
      parts.emplace_back();
      continue;
    }
    if (c != '0' && c != '1') throw ContractViolation("polarity rows must contain only 0 and 1");
    parts.back().push_back(c);
  }
  std::vector<TruthSet> rows;
  for (const auto& p : parts) {
    if (p.empty()) throw ContractViolation("empty polarity row");
    rows.push_back(TruthSet::from_string(p));
  }
  const unsigned radix = rows.empty() ? 0 : rows.front().radix();
  return PolarityMatrix(radix, std::move(rows));
}

PolarityMatrix PolarityMatrix::identity(unsigned radix) {
  std::vector<TruthSet> rows;
  for (unsigned k = 0; k < radix; ++k) rows.push_back(TruthSet::of(radix, {k}));
  return PolarityMatrix(radix, std::move(rows));
}

std::string PolarityMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) s += ';';
    s += rows_[i].to_string();
  }
  return s + "]";
}

std::uint32_t row_key(const TruthSet& row) {
  std::uint32_t key = 0;
  for (unsigned k = 0; k < row.radix(); ++k) key = (key << 1) | (row.contains(k) ? 1u : 0u);
  return key;
}

bool polarity_less(const PolarityAssignment& a, const PolarityAssignment& b) {
  auto keys = [](const PolarityAssignment& pa) {
    std::vector<std::uint32_t> k;
    for (const auto& p : pa)
      for (const auto& r : p.rows()) k.push_back(row_key(r));
    return k;
  };
  return keys(a) < keys(b);
}

std::string NormalizedCode::to_string() const {
  std::string s(radix, '0');
  for (unsigned r = 1; r <= radix; ++r)
    if (has(r)) s[r - 1] = '1';
  return s;
}

NormalizedCode NormalizedCode::parse(std::string_view s) {
  NormalizedCode c;
  c.radix = static_cast<unsigned>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == '1') c.bits |= std::uint32_t{1} << i;
  return c;
}

std::size_t gf2_rank(const PolarityMatrix& p) {
  Gf2Rows rows;
  for (const auto& r : p.rows()) rows.push_back(r.bits());
  return gf2_rank(rows);
}

std::uint64_t count_polarities(unsigned v) {
  if (v < 2) throw ContractViolation("count_polarities: radix must be at least 2");
  if (v >= 63) throw std::overflow_error("count_polarities: 2^v exceeds 64 bits");
  unsigned __int128 num = 1;
  const unsigned __int128 limit = ~static_cast<unsigned __int128>(0) >> 1;
  const std::uint64_t pv = std::uint64_t{1} << v;
  for (unsigned k = 0; k < v; ++k) {
    const std::uint64_t f = pv - (std::uint64_t{1} << k);
    if (num > limit / f) throw std::overflow_error("count_polarities: product overflows");
    num *= f;
  }
  unsigned __int128 fact = 1;
  for (unsigned k = 2; k <= v; ++k) fact *= k;
  if (num % fact != 0) throw InternalError("count_polarities: product not divisible by v!");
  const unsigned __int128 q = num / fact;
  if (q > ~std::uint64_t{0}) throw std::overflow_error("count_polarities: result exceeds 64 bits");
  return static_cast<std::uint64_t>(q);
}

namespace {

void choose(const std::vector<std::uint32_t>& pool, std::size_t start, unsigned remaining,
            std::vector<std::uint32_t>& pick, std::vector<std::vector<std::uint32_t>>& out) {
  if (remaining == 0) {
    Gf2Rows rows(pick.begin(), pick.end());
    if (gf2_rank(rows) == pick.size()) out.push_back(pick);
    return;
  }
  for (std::size_t i = start; i + remaining <= pool.size(); ++i) {
    pick.push_back(pool[i]);
    // prune dependent prefixes early
    Gf2Rows rows(pick.begin(), pick.end());
    if (gf2_rank(rows) == pick.size()) choose(pool, i + 1, remaining - 1, pick, out);
    pick.pop_back();
  }
}

}  // namespace

void for_each_polarity(unsigned v, const EnumerateOptions& opt,
                       const std::function<void(const PolarityMatrix&)>& visit) {
  if (v < 2) throw ContractViolation("enumerate_polarities: radix must be at least 2");
  if (v > 5 || (v == 5 && !opt.allow_large))
    throw Refusal("enumerate_polarities: radix " + std::to_string(v) +
                  " exceeds the enumeration guard (v <= 4, v = 5 with opt-in)");
  const std::uint32_t full = TruthSet::full_mask(v);
  std::vector<std::uint32_t> pool;
  for (std::uint32_t m = 1; m <= full; ++m)
    if (!opt.first_row_all_ones || m != full) pool.push_back(m);
  auto key = [v](std::uint32_t m) { return row_key(TruthSet(v, m)); };
  std::sort(pool.begin(), pool.end(), [&](auto a, auto b) { return key(a) > key(b); });

  std::vector<std::vector<std::uint32_t>> sets;
  std::vector<std::uint32_t> pick;
  if (opt.first_row_all_ones) pick.push_back(full);
  choose(pool, 0, opt.first_row_all_ones ? v - 1 : v, pick, sets);

  std::vector<std::vector<std::uint32_t>> keyed;
  keyed.reserve(sets.size());
  for (const auto& s : sets) {
    std::vector<std::uint32_t> k;
    for (auto m : s) k.push_back(key(m));
    keyed.push_back(std::move(k));
  }
  std::vector<std::size_t> order(sets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return keyed[a] < keyed[b]; });
  for (auto i : order) {
    std::vector<TruthSet> rows;
    for (auto m : sets[i]) rows.emplace_back(v, m);
    visit(PolarityMatrix(v, std::move(rows)));
  }
}

std::vector<PolarityMatrix> enumerate_polarities(unsigned v, bool first_row_all_ones,
                                                 bool allow_large) {
  std::vector<PolarityMatrix> out;
  for_each_polarity(v, {first_row_all_ones, allow_large},
                    [&](const PolarityMatrix& p) { out.push_back(p); });
  return out;
}

NormalizedCode solve_normalized_code(const TruthSet& s, const PolarityMatrix& p) {
  if (s.radix() != p.radix())
    throw ContractViolation("solve_normalized_code: literal radix " + std::to_string(s.radix()) +
                            " vs polarity radix " + std::to_string(p.radix()));
  Gf2Rows rows;
  for (const auto& r : p.rows()) rows.push_back(r.bits());
  auto sol = gf2_solve_combination(rows, s.bits());
  if (!sol)
    throw UnrepresentableLiteral("literal X" + s.to_set_string() +
                                 " is not representable under polarity " + p.to_string());
  NormalizedCode code{p.radix(), static_cast<std::uint32_t>(sol->particular)};
  if (sol->null_basis.empty()) return code;
  // several representations: minimum weight, then smallest printed code
  const std::size_t dim = sol->null_basis.size();
  auto printed = [&](std::uint32_t bits) { return row_key(TruthSet(p.radix(), bits)); };
  std::uint32_t best = code.bits;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << dim); ++m) {
    std::uint64_t c = sol->particular;
    for (std::size_t j = 0; j < dim; ++j)
      if ((m >> j) & 1u) c ^= sol->null_basis[j];
    const auto cb = static_cast<std::uint32_t>(c);
    const int wc = std::popcount(cb);
    const int wb = std::popcount(best);
    if (wc < wb || (wc == wb && printed(cb) < printed(best))) best = cb;
  }
  code.bits = best;
  return code;
}

Gf2Rows polarity_kernel(const PolarityMatrix& p) {
  if (!p.is_canonical())
    throw Refusal("polarity_kernel: polarity " + p.to_string() + " is not canonical");
  const unsigned v = p.radix();
  Gf2Rows k(v, 0);
  for (unsigned value = 0; value < v; ++value) {
    const auto code = solve_normalized_code(TruthSet::of(v, {value}), p);
    for (unsigned r = 1; r <= v; ++r)
      if (code.has(r)) k[r - 1] |= std::uint64_t{1} << value;
  }
  return k;
}

}  // namespace mvi
