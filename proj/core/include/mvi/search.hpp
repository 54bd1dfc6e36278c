#pragma once

#include <mvi/factor.hpp>
#include <mvi/synth.hpp>
#include <mvi/transform.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mvi {

/// Grouping of encoding bits into multi-valued variables.
struct Pairing {
  struct Group {
    std::string name;
    std::vector<std::string> bits;  // most significant first

    friend auto operator<=>(const Group&, const Group&) = default;
  };
  std::vector<Group> groups;

  /// "X6=a,b;X7=c,d"
  std::string to_string() const;
  static Pairing parse(const std::string& text);

  friend auto operator<=>(const Pairing&, const Pairing&) = default;
};

/// Set partitions of the bits into groups of at most max_group (exactly max_group
/// when exact is set). Members keep declaration order; groups are named X1, X2, ...
std::vector<Pairing> enumerate_pairings(const std::vector<std::string>& bits, unsigned max_group,
                                        bool exact = false);

/// Re-expresses f over the variables of a pairing. Every encoding bit must be
/// used once and every source variable must have radix 2^bits.
MviFunction regroup(const MviFunction& f, const Pairing& p);

enum class SpectrumMethod { ProductsMatching, Butterfly };
enum class SynthTarget { Fprm, Grm, Esop };

struct SearchConfig {
  SpectrumMethod method = SpectrumMethod::ProductsMatching;
  SynthTarget target = SynthTarget::Fprm;
  Objective objective = Objective::Maslov;

  enum class PolarityScope { Exhaustive, Sampled, Fixed };
  PolarityScope polarity_scope = PolarityScope::Exhaustive;
  std::size_t samples = 0;
  std::vector<PolarityAssignment> fixed_polarities;
  bool first_row_all_ones = true;
  bool allow_large = false;
  bool allow_non_canonical = false;

  enum class PairingScope { Exhaustive, Fixed };
  PairingScope pairing_scope = PairingScope::Fixed;
  std::optional<Pairing> pairing;
  unsigned max_group = 2;
  bool exact_group = false;

  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;
  std::size_t top = 5;
  bool mirror = false;
  DecoderStyle decoder = DecoderStyle::Compact;

  /// Called with a key=value line every progress_every evaluations (0 disables).
  std::size_t progress_every = 0;
  std::function<void(const std::string&)> progress;
};

struct Solution {
  std::optional<Pairing> pairing;
  MviFunction function;  // over the (possibly regrouped) context
  PolarityAssignment polarity;
  Spectrum spectrum;
  std::vector<MviExpression> fprm;
  std::vector<FactoredExpression> factored;
  bool grm = false;
  Circuit circuit;
  CostReport cost;
};

/// Transform, optional factorization, synthesis, verification and costing of one
/// candidate. Throws InternalError if the circuit does not match f.
Solution evaluate_candidate(const MviFunction& f, const std::optional<Pairing>& pairing,
                            const PolarityAssignment& pa, const SearchConfig& cfg);

struct SearchResult {
  std::vector<Solution> ranked;
  std::size_t evaluated = 0;
  std::size_t candidates_per_pairing = 0;
  std::size_t pairings = 0;
};

/// Evaluates the configured candidates and returns the best cfg.top of them.
/// Ties: other metric, then polarity row keys, then pairing.
SearchResult search_best(const MviFunction& f, const SearchConfig& cfg);

/// Uniform integer in [0, n) by rejection; identical across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

}  // namespace mvi
