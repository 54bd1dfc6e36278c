#include <mvi/transform.hpp>

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace mvi {

std::uint64_t output_mask(unsigned num_outputs) {
  if (num_outputs > 64) throw ContractViolation("at most 64 outputs are supported");
  return num_outputs == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_outputs) - 1;
}

std::string MintermVector::to_string(unsigned output) const {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if ((bits[i] >> output) & 1u) s[i] = '1';
  return s;
}

Spectrum::Spectrum(PolarityAssignment pa, unsigned num_outputs)
    : pa_(std::move(pa)), num_outputs_(num_outputs) {
  output_mask(num_outputs);
  size_ = 1;
  for (const auto& p : pa_) {
    radices_.push_back(p.radix());
    size_ *= p.radix();
  }
  dense_ = size_ <= kDenseLimit;
  if (dense_) dense_bits_.assign(size_, 0);
}

std::uint64_t Spectrum::at(std::size_t index) const {
  if (index >= size_) throw ContractViolation("spectrum index out of range");
  if (dense_) return dense_bits_[index];
  auto it = sparse_bits_.find(index);
  return it == sparse_bits_.end() ? 0 : it->second;
}

void Spectrum::toggle(std::size_t index, std::uint64_t outputs) {
  if (index >= size_) throw ContractViolation("spectrum index out of range");
  if (dense_) {
    dense_bits_[index] ^= outputs;
    return;
  }
  auto& slot = sparse_bits_[index];
  slot ^= outputs;
  if (slot == 0) sparse_bits_.erase(index);
}

std::vector<unsigned> Spectrum::tuple_of(std::size_t index) const {
  std::vector<unsigned> r(radices_.size());
  for (std::size_t i = radices_.size(); i-- > 0;) {
    r[i] = static_cast<unsigned>(index % radices_[i]) + 1;
    index /= radices_[i];
  }
  return r;
}

std::size_t Spectrum::index_of(const std::vector<unsigned>& r) const {
  if (r.size() != radices_.size()) throw ContractViolation("spectrum tuple has the wrong arity");
  std::size_t index = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 1 || r[i] > radices_[i]) throw ContractViolation("spectrum tuple out of range");
    index = index * radices_[i] + (r[i] - 1);
  }
  return index;
}

void Spectrum::for_each_nonzero(
    const std::function<void(std::size_t, std::uint64_t)>& visit) const {
  if (dense_) {
    for (std::size_t i = 0; i < size_; ++i)
      if (dense_bits_[i]) visit(i, dense_bits_[i]);
  } else {
    for (const auto& [i, bits] : sparse_bits_) visit(i, bits);
  }
}

std::size_t Spectrum::nonzero_count() const {
  std::size_t n = 0;
  for_each_nonzero([&](std::size_t, std::uint64_t) { ++n; });
  return n;
}

bool operator==(const Spectrum& a, const Spectrum& b) {
  if (a.radices_ != b.radices_ || a.num_outputs_ != b.num_outputs_) return false;
  if (a.dense_ && b.dense_) return a.dense_bits_ == b.dense_bits_;
  for (std::size_t i = 0; i < a.size_; ++i)
    if (a.at(i) != b.at(i)) return false;
  return true;
}

void check_polarity(const VariableContext& ctx, const PolarityAssignment& pa,
                    bool allow_non_canonical) {
  if (pa.size() != ctx.size())
    throw ContractViolation("polarity assignment has " + std::to_string(pa.size()) +
                            " matrices for " + std::to_string(ctx.size()) + " variables");
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i].radix() != ctx[i].radix)
      throw ContractViolation("polarity for " + ctx[i].id + " has radix " +
                              std::to_string(pa[i].radix()));
    if (!pa[i].is_canonical() && !allow_non_canonical)
      throw Refusal("polarity " + pa[i].to_string() + " for " + ctx[i].id +
                    " is not canonical");
  }
}

MintermVector minterm_vector(const TruthTable& tt) {
  MintermVector mv;
  mv.radices = tt.ctx->radices();
  mv.num_outputs = static_cast<unsigned>(tt.outputs.size());
  output_mask(mv.num_outputs);
  mv.bits.assign(tt.ctx->assignment_count(), 0);
  for (std::size_t o = 0; o < tt.outputs.size(); ++o)
    for (std::size_t i = 0; i < mv.bits.size(); ++i)
      if (tt.outputs[o].get(i)) mv.bits[i] |= std::uint64_t{1} << o;
  return mv;
}

MintermVector minterm_vector(const std::vector<MviExpression>& exprs) {
  return minterm_vector(truth_table(exprs));
}

Spectrum butterfly_spectrum(const MintermVector& a, const PolarityAssignment& pa,
                            ButterflyOrder order, ButterflyTrace* trace) {
  if (pa.size() != a.radices.size())
    throw ContractViolation("butterfly: polarity assignment does not match the variables");
  std::vector<Gf2Rows> kernels;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i].radix() != a.radices[i])
      throw ContractViolation("butterfly: polarity radix mismatch");
    kernels.push_back(polarity_kernel(pa[i]));
  }
  std::vector<std::uint64_t> data = a.bits;
  const std::size_t n = pa.size();
  std::vector<std::size_t> layer_vars(n);
  for (std::size_t k = 0; k < n; ++k)
    layer_vars[k] = order == ButterflyOrder::Descending ? n - 1 - k : k;

  std::vector<std::uint64_t> in;
  for (std::size_t var : layer_vars) {
    const unsigned v = a.radices[var];
    std::size_t stride = 1;
    for (std::size_t j = var + 1; j < n; ++j) stride *= a.radices[j];
    const std::size_t block = stride * v;
    const auto& k = kernels[var];
    in.resize(v);
    std::size_t applications = 0;
    for (std::size_t base = 0; base < data.size(); base += block)
      for (std::size_t off = 0; off < stride; ++off) {
        for (unsigned x = 0; x < v; ++x) in[x] = data[base + x * stride + off];
        for (unsigned r = 0; r < v; ++r) {
          std::uint64_t acc = 0;
          for (std::uint64_t m = k[r]; m; m &= m - 1) acc ^= in[std::countr_zero(m)];
          data[base + r * stride + off] = acc;
        }
        ++applications;
      }
    if (trace) {
      trace->kernels_per_layer.push_back(applications);
      trace->layer_variable.push_back(var);
    }
  }
  if (trace) trace->layers = n;
  Spectrum sp(pa, a.num_outputs);
  for (std::size_t i = 0; i < data.size(); ++i)
    if (data[i]) sp.toggle(i, data[i]);
  return sp;
}

std::vector<OutputTerm> output_terms(const std::vector<MviExpression>& exprs) {
  std::vector<OutputTerm> out;
  output_mask(static_cast<unsigned>(exprs.size()));
  for (std::size_t o = 0; o < exprs.size(); ++o)
    for (const auto& t : exprs[o].terms()) out.emplace_back(t, std::uint64_t{1} << o);
  return out;
}

Spectrum products_matching(const std::vector<OutputTerm>& terms, const PolarityAssignment& pa,
                           unsigned num_outputs, const TransformOptions& opt) {
  const std::size_t n = pa.size();
  for (const auto& p : pa)
    if (!p.is_canonical() && !opt.allow_non_canonical)
      throw Refusal("products_matching: polarity " + p.to_string() + " is not canonical");
  // per-variable memo of literal -> normalized code
  std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> memo(n);
  auto code_of = [&](std::size_t var, const TruthSet& s) {
    auto it = memo[var].find(s.bits());
    if (it != memo[var].end()) return it->second;
    std::uint32_t c = 0;
    try {
      c = solve_normalized_code(s, pa[var]).bits;
    } catch (const UnrepresentableLiteral&) {
      throw UnrepresentableLiteral("products_matching: literal X" + std::to_string(var + 1) +
                                   s.to_set_string() + " has no representation under " +
                                   pa[var].to_string());
    }
    memo[var].emplace(s.bits(), c);
    return c;
  };

  Spectrum sp(pa, num_outputs);
  const auto& radices = sp.radices();
  std::vector<std::uint32_t> codes(n);
  for (const auto& [term, outs] : terms) {
    if (term.variable_count() != n)
      throw ContractViolation("products_matching: term arity does not match the polarity");
    if (outs == 0) continue;
    bool empty = false;
    for (std::size_t i = 0; i < n; ++i) {
      codes[i] = code_of(i, term.set(i));
      if (codes[i] == 0) empty = true;
    }
    if (empty) continue;
    // every index whose r_i lies in code_i for all i receives the term's outputs
    auto walk = [&](auto&& self, std::size_t var, std::size_t prefix) -> void {
      if (var == n) {
        sp.toggle(prefix, outs);
        return;
      }
      for (unsigned r = 0; r < radices[var]; ++r)
        if ((codes[var] >> r) & 1u) self(self, var + 1, prefix * radices[var] + r);
    };
    walk(walk, 0, 0);
  }
  return sp;
}

Spectrum oracle_spectrum(const TruthTable& tt, const PolarityAssignment& pa) {
  const auto& ctx = *tt.ctx;
  check_polarity(ctx, pa);
  const std::size_t n_rows = ctx.assignment_count();
  if (n_rows > (std::size_t{1} << 16))
    throw Refusal("oracle_spectrum: " + std::to_string(n_rows) +
                  " assignments exceed the 2^16 guard");
  const unsigned outs = static_cast<unsigned>(tt.outputs.size());
  Spectrum probe(pa, outs);

  const std::size_t words = (n_rows + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(n_rows, std::vector<std::uint64_t>(words, 0));
  std::vector<std::uint64_t> rhs(n_rows, 0);
  for (std::size_t x = 0; x < n_rows; ++x) {
    const auto values = ctx.decode(x);
    for (std::size_t t = 0; t < n_rows; ++t) {
      const auto r = probe.tuple_of(t);
      bool e = true;
      for (std::size_t i = 0; i < values.size() && e; ++i) e = pa[i].row(r[i]).contains(values[i]);
      if (e) rows[x][t >> 6] |= std::uint64_t{1} << (t & 63);
    }
    for (unsigned o = 0; o < outs; ++o)
      if (tt.outputs[o].get(x)) rhs[x] |= std::uint64_t{1} << o;
  }

  std::vector<std::size_t> pivot_row(n_rows, n_rows);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n_rows; ++col) {
    std::size_t sel = n_rows;
    for (std::size_t r = rank; r < n_rows; ++r)
      if ((rows[r][col >> 6] >> (col & 63)) & 1u) {
        sel = r;
        break;
      }
    if (sel == n_rows) throw InternalError("oracle_spectrum: evaluation matrix is singular");
    std::swap(rows[sel], rows[rank]);
    std::swap(rhs[sel], rhs[rank]);
    for (std::size_t r = 0; r < n_rows; ++r)
      if (r != rank && ((rows[r][col >> 6] >> (col & 63)) & 1u)) {
        for (std::size_t w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
        rhs[r] ^= rhs[rank];
      }
    pivot_row[col] = rank;
    ++rank;
  }
  Spectrum sp(pa, outs);
  for (std::size_t col = 0; col < n_rows; ++col)
    if (rhs[pivot_row[col]]) sp.toggle(col, rhs[pivot_row[col]]);
  return sp;
}

MviExpression spectrum_to_expression(const Spectrum& sp, unsigned output, ContextPtr ctx,
                                     std::string label) {
  if (ctx->size() != sp.radices().size())
    throw ContractViolation("spectrum_to_expression: context arity mismatch");
  MviExpression e(ctx, std::move(label));
  sp.for_each_nonzero([&](std::size_t index, std::uint64_t bits) {
    if (!((bits >> output) & 1u)) return;
    const auto r = sp.tuple_of(index);
    ProductTerm t(*ctx);
    for (std::size_t i = 0; i < r.size(); ++i) t.restrict(i, sp.polarity()[i].row(r[i]));
    e.add(t);
  });
  return e;
}

std::vector<MviExpression> spectrum_to_expressions(const Spectrum& sp, ContextPtr ctx,
                                                   const std::vector<std::string>& labels) {
  std::vector<MviExpression> out;
  for (unsigned o = 0; o < sp.num_outputs(); ++o)
    out.push_back(spectrum_to_expression(sp, o, ctx, o < labels.size() ? labels[o] : ""));
  return out;
}

std::string to_string(const Spectrum& sp) {
  std::string s;
  sp.for_each_nonzero([&](std::size_t index, std::uint64_t bits) {
    const auto r = sp.tuple_of(index);
    s += "(";
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(r[i]);
    }
    s += ") ";
    for (unsigned o = 0; o < sp.num_outputs(); ++o) s += ((bits >> o) & 1u) ? '1' : '0';
    s += '\n';
  });
  return s;
}

}  // namespace mvi
