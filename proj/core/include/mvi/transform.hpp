#pragma once

#include <mvi/expression.hpp>
#include <mvi/polarity.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mvi {

/// Per-index output masks in natural order (bit j = output j). Up to 64 outputs.
struct MintermVector {
  std::vector<unsigned> radices;
  unsigned num_outputs = 1;
  std::vector<std::uint64_t> bits;

  std::size_t size() const { return bits.size(); }
  /// One '0'/'1' character per index for the given output.
  std::string to_string(unsigned output = 0) const;
  friend bool operator==(const MintermVector&, const MintermVector&) = default;
};

/// MVI-FPRM coefficients indexed by polarity-literal tuples (r_1..r_n), r_i in 1..v_i.
class Spectrum {
public:
  static constexpr std::size_t kDenseLimit = std::size_t{1} << 16;

  Spectrum() = default;
  Spectrum(PolarityAssignment pa, unsigned num_outputs);

  const PolarityAssignment& polarity() const { return pa_; }
  const std::vector<unsigned>& radices() const { return radices_; }
  unsigned num_outputs() const { return num_outputs_; }
  std::size_t size() const { return size_; }
  bool is_dense() const { return dense_; }

  std::uint64_t at(std::size_t index) const;
  std::uint64_t at(const std::vector<unsigned>& r) const { return at(index_of(r)); }
  void toggle(std::size_t index, std::uint64_t outputs);

  /// 1-based tuple for a flat index and back.
  std::vector<unsigned> tuple_of(std::size_t index) const;
  std::size_t index_of(const std::vector<unsigned>& r) const;

  /// Visits nonzero coefficients in increasing index order.
  void for_each_nonzero(const std::function<void(std::size_t, std::uint64_t)>& visit) const;
  std::size_t nonzero_count() const;

  friend bool operator==(const Spectrum& a, const Spectrum& b);

private:
  PolarityAssignment pa_;
  std::vector<unsigned> radices_;
  unsigned num_outputs_ = 1;
  std::size_t size_ = 0;
  bool dense_ = true;
  std::vector<std::uint64_t> dense_bits_;
  std::map<std::size_t, std::uint64_t> sparse_bits_;
};

std::uint64_t output_mask(unsigned num_outputs);

MintermVector minterm_vector(const std::vector<MviExpression>& exprs);
MintermVector minterm_vector(const TruthTable& tt);

enum class ButterflyOrder { Descending, Ascending };

struct ButterflyTrace {
  std::size_t layers = 0;
  /// Kernel applications per layer, in execution order.
  std::vector<std::size_t> kernels_per_layer;
  /// Variable index processed by each layer.
  std::vector<std::size_t> layer_variable;
};

struct TransformOptions {
  bool allow_non_canonical = false;
};

Spectrum butterfly_spectrum(const MintermVector& a, const PolarityAssignment& pa,
                            ButterflyOrder order = ButterflyOrder::Descending,
                            ButterflyTrace* trace = nullptr);

using OutputTerm = std::pair<ProductTerm, std::uint64_t>;

/// Terms paired with the outputs they feed.
std::vector<OutputTerm> output_terms(const std::vector<MviExpression>& exprs);

Spectrum products_matching(const std::vector<OutputTerm>& terms, const PolarityAssignment& pa,
                           unsigned num_outputs, const TransformOptions& opt = {});

/// Brute-force reference by GF(2) elimination over the evaluation matrix.
Spectrum oracle_spectrum(const TruthTable& tt, const PolarityAssignment& pa);

MviExpression spectrum_to_expression(const Spectrum& sp, unsigned output, ContextPtr ctx,
                                     std::string label = {});
std::vector<MviExpression> spectrum_to_expressions(const Spectrum& sp, ContextPtr ctx,
                                                   const std::vector<std::string>& labels);

/// Text dump, one "(r1,...,rn) bits" line per nonzero coefficient.
std::string to_string(const Spectrum& sp);

/// Throws Refusal unless every matrix matches its variable and is canonical.
void check_polarity(const VariableContext& ctx, const PolarityAssignment& pa,
                    bool allow_non_canonical = false);

}  // namespace mvi
