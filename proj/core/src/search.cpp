#include <mvi/search.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace mvi {

std::string Pairing::to_string() const {
  std::string s;
  for (const auto& g : groups) {
    if (!s.empty()) s += ";";
    s += g.name + "=";
    for (std::size_t i = 0; i < g.bits.size(); ++i) s += (i ? "," : "") + g.bits[i];
  }
  return s;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

}  // namespace

Pairing Pairing::parse(const std::string& text) {
  Pairing p;
  for (const auto& part : split(text, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ContractViolation("pairing group '" + part + "' lacks '='");
    Group g{trim(part.substr(0, eq)), split(part.substr(eq + 1), ',')};
    if (g.name.empty() || g.bits.empty() ||
        std::any_of(g.bits.begin(), g.bits.end(), [](const std::string& b) { return b.empty(); }))
      throw ContractViolation("malformed pairing group '" + part + "'");
    p.groups.push_back(std::move(g));
  }
  if (p.groups.empty()) throw ContractViolation("empty pairing");
  return p;
}

std::vector<Pairing> enumerate_pairings(const std::vector<std::string>& bits, unsigned max_group,
                                        bool exact) {
  if (bits.empty()) throw ContractViolation("enumerate_pairings: no variables");
  if (max_group == 0) throw ContractViolation("enumerate_pairings: group size must be positive");
  std::vector<Pairing> out;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<bool> used(bits.size(), false);

  std::function<void()> rec = [&] {
    auto first = std::find(used.begin(), used.end(), false);
    if (first == used.end()) {
      Pairing p;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        Pairing::Group grp{"X" + std::to_string(g + 1), {}};
        for (auto i : groups[g]) grp.bits.push_back(bits[i]);
        p.groups.push_back(std::move(grp));
      }
      out.push_back(std::move(p));
      return;
    }
    const auto lead = static_cast<std::size_t>(first - used.begin());
    used[lead] = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = lead + 1; i < bits.size(); ++i)
      if (!used[i]) rest.push_back(i);
    // subsets of the remaining bits joining the lead bit, smallest groups first
    for (unsigned extra = 0; extra + 1 <= max_group && extra <= rest.size(); ++extra) {
      if (exact && extra + 1 != max_group) continue;
      std::vector<bool> pick(rest.size(), false);
      std::fill(pick.begin(), pick.begin() + extra, true);
      do {
        std::vector<std::size_t> grp{lead};
        for (std::size_t k = 0; k < rest.size(); ++k)
          if (pick[k]) grp.push_back(rest[k]);
        for (std::size_t k = 1; k < grp.size(); ++k) used[grp[k]] = true;
        groups.push_back(grp);
        rec();
        groups.pop_back();
        for (std::size_t k = 1; k < grp.size(); ++k) used[grp[k]] = false;
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    used[lead] = false;
  };
  rec();
  return out;
}

MviFunction regroup(const MviFunction& f, const Pairing& p) {
  const auto& src = *f.ctx;
  std::map<std::string, std::pair<std::size_t, unsigned>> where;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i].radix != (1u << src[i].bit_count()))
      throw Refusal("regroup: variable " + src[i].id + " does not use every code of its encoding");
    for (unsigned j = 0; j < src[i].bit_count(); ++j) where[src[i].encoding_bits[j]] = {i, j};
  }
  std::set<std::string> seen;
  std::vector<MviVariable> vars;
  for (const auto& g : p.groups) {
    if (g.bits.size() > 3) throw Refusal("regroup: group " + g.name + " exceeds three bits");
    for (const auto& b : g.bits) {
      if (!where.count(b)) throw ContractViolation("regroup: unknown encoding bit " + b);
      if (!seen.insert(b).second) throw ContractViolation("regroup: bit " + b + " used twice");
    }
    vars.push_back({g.name, 1u << g.bits.size(), g.bits});
  }
  if (seen.size() != where.size()) throw ContractViolation("regroup: pairing leaves bits unused");
  auto ctx = make_context(vars);

  MviFunction out{ctx, {}};
  const bool binary = std::all_of(src.variables().begin(), src.variables().end(),
                                  [](const MviVariable& v) { return v.radix == 2; });
  if (binary) {
    for (const auto& e : f.outputs) {
      MviExpression ne(ctx, e.label());
      for (const auto& t : e.terms()) {
        ProductTerm nt(*ctx);
        bool alive = true;
        for (std::size_t g = 0; g < vars.size() && alive; ++g) {
          const auto& grp = p.groups[g];
          std::uint32_t allowed = 0;
          for (unsigned val = 0; val < vars[g].radix; ++val) {
            bool ok = true;
            for (std::size_t k = 0; k < grp.bits.size(); ++k) {
              const unsigned bit = (val >> (grp.bits.size() - 1 - k)) & 1u;
              ok = ok && t.set(where[grp.bits[k]].first).contains(bit);
            }
            if (ok) allowed |= 1u << val;
          }
          alive = nt.restrict(g, TruthSet(vars[g].radix, allowed));
        }
        if (alive) ne.add(nt);
      }
      out.outputs.push_back(std::move(ne));
    }
    return out;
  }
  // general case: minterms of the regrouped truth table
  const auto tt = truth_table(f.outputs);
  for (std::size_t o = 0; o < f.outputs.size(); ++o) {
    MviExpression ne(ctx, f.outputs[o].label());
    for (std::size_t a = 0; a < ctx->assignment_count(); ++a) {
      const auto nv = ctx->decode(a);
      std::vector<unsigned> sv(src.size(), 0);
      for (std::size_t g = 0; g < vars.size(); ++g)
        for (unsigned k = 0; k < vars[g].bit_count(); ++k)
          if (vars[g].code_bit(nv[g], k)) {
            const auto [i, j] = where[vars[g].encoding_bits[k]];
            sv[i] |= 1u << (src[i].bit_count() - 1 - j);
          }
      if (!tt.outputs[o].get(src.encode(sv))) continue;
      std::vector<MviLiteral> lits;
      for (std::size_t g = 0; g < vars.size(); ++g)
        lits.push_back({g, TruthSet(vars[g].radix, 1u << nv[g])});
      ne.add(lits);
    }
    out.outputs.push_back(std::move(ne));
  }
  return out;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw ContractViolation("uniform_below: empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

Solution evaluate_candidate(const MviFunction& f, const std::optional<Pairing>& pairing,
                            const PolarityAssignment& pa, const SearchConfig& cfg) {
  Solution s;
  s.pairing = pairing;
  s.function = f;
  s.polarity = pa;
  const auto& ctx = f.ctx;
  std::vector<std::string> labels;
  for (const auto& e : f.outputs) labels.push_back(e.label());
  const auto tt = truth_table(f.outputs);

  if (cfg.target != SynthTarget::Esop) {
    check_polarity(*ctx, pa, cfg.allow_non_canonical);
    if (cfg.method == SpectrumMethod::Butterfly)
      s.spectrum = butterfly_spectrum(minterm_vector(tt), pa);
    else
      s.spectrum = products_matching(output_terms(f.outputs), pa,
                                     static_cast<unsigned>(f.outputs.size()),
                                     {cfg.allow_non_canonical});
    s.fprm = spectrum_to_expressions(s.spectrum, ctx, labels);
  }
  switch (cfg.target) {
    case SynthTarget::Fprm:
      s.circuit = synthesize_fprm(s.spectrum, ctx, labels,
                                  {cfg.mirror, cfg.decoder, cfg.allow_non_canonical, cfg.objective});
      break;
    case SynthTarget::Grm: {
      s.grm = true;
      for (const auto& e : s.fprm) {
        s.factored.push_back(factorize_grm(e));
        s.grm = s.grm && is_grm(s.factored.back());
      }
      s.circuit = synthesize_factored(s.factored, {cfg.mirror});
      break;
    }
    case SynthTarget::Esop: {
      std::vector<BinaryEsop> esops;
      for (const auto& e : f.outputs) esops.push_back(expand_to_binary_esop(e));
      s.circuit = synthesize_esop_baseline(esops, ctx, labels);
      break;
    }
  }
  const auto verdict = equivalence(s.circuit, tt);
  if (!verdict.equivalent)
    throw InternalError("synthesized circuit differs from the function at assignment " +
                        std::to_string(*verdict.counterexample));
  if (cfg.mirror && cfg.target != SynthTarget::Esop && !ancillas_clean(s.circuit))
    throw InternalError("mirrored circuit leaves an ancilla dirty");
  s.cost = cost_report(s.circuit);
  return s;
}

namespace {

struct Candidate {
  std::size_t pairing = 0;
  std::size_t index = 0;  // mixed-radix polarity index, or fixed-list position
};

struct Scored {
  std::int64_t primary = 0;
  std::int64_t secondary = 0;
  std::size_t slot = 0;
};

struct Space {
  std::optional<Pairing> pairing;
  MviFunction function;
  std::vector<std::vector<PolarityMatrix>> lists;  // per variable
  std::size_t size = 0;
};

PolarityAssignment assignment_at(const Space& sp, std::size_t index) {
  PolarityAssignment pa(sp.lists.size());
  for (std::size_t i = sp.lists.size(); i-- > 0;) {
    pa[i] = sp.lists[i][index % sp.lists[i].size()];
    index /= sp.lists[i].size();
  }
  return pa;
}

}  // namespace

SearchResult search_best(const MviFunction& f, const SearchConfig& cfg) {
  if (cfg.polarity_scope == SearchConfig::PolarityScope::Sampled && !cfg.seed)
    throw ContractViolation("sampled polarity scope requires a seed");
  std::vector<Space> spaces;
  auto add_space = [&](std::optional<Pairing> p) {
    Space sp;
    sp.function = p ? regroup(f, *p) : f;
    sp.pairing = std::move(p);
    if (cfg.target == SynthTarget::Esop) {
      sp.size = 1;
    } else if (cfg.polarity_scope == SearchConfig::PolarityScope::Fixed) {
      sp.size = cfg.fixed_polarities.size();
    } else {
      std::map<unsigned, std::vector<PolarityMatrix>> cache;
      sp.size = 1;
      for (const auto& v : sp.function.ctx->variables()) {
        auto it = cache.find(v.radix);
        if (it == cache.end())
          it = cache.emplace(v.radix, enumerate_polarities(v.radix, cfg.first_row_all_ones,
                                                           cfg.allow_large)).first;
        sp.lists.push_back(it->second);
        if (it->second.empty()) throw Refusal("no polarities for radix " + std::to_string(v.radix));
        if (sp.size > (std::size_t{1} << 40) / it->second.size())
          throw Refusal("polarity space too large to index; use sampling on fewer variables");
        sp.size *= it->second.size();
      }
    }
    spaces.push_back(std::move(sp));
  };
  if (cfg.pairing_scope == SearchConfig::PairingScope::Exhaustive) {
    std::vector<std::string> bits;
    for (const auto& v : f.ctx->variables())
      bits.insert(bits.end(), v.encoding_bits.begin(), v.encoding_bits.end());
    for (auto& p : enumerate_pairings(bits, cfg.max_group, cfg.exact_group)) add_space(p);
  } else {
    add_space(cfg.pairing);
  }

  std::vector<Candidate> cands;
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    const std::size_t n = spaces[s].size;
    if (cfg.polarity_scope == SearchConfig::PolarityScope::Sampled && cfg.target != SynthTarget::Esop &&
        cfg.samples < n) {
      std::mt19937_64 rng(*cfg.seed + s);
      std::set<std::size_t> picked;
      while (picked.size() < cfg.samples) picked.insert(uniform_below(rng, n));
      for (auto i : picked) cands.push_back({s, i});
    } else {
      for (std::size_t i = 0; i < n; ++i) cands.push_back({s, i});
    }
  }
  if (cands.empty()) throw Refusal("search has no candidates");

  auto polarity_of = [&](const Candidate& c) -> PolarityAssignment {
    const auto& sp = spaces[c.pairing];
    if (cfg.target == SynthTarget::Esop) return {};
    if (cfg.polarity_scope == SearchConfig::PolarityScope::Fixed) return cfg.fixed_polarities[c.index];
    return assignment_at(sp, c.index);
  };

  std::vector<Scored> scores(cands.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex mu;
  std::exception_ptr failure;
  std::optional<std::pair<std::int64_t, std::int64_t>> best;  // (maslov, tqc) of best so far
  const bool tqc_first = cfg.objective == Objective::Tqc;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cands.size()) return;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (failure) return;
      }
      try {
        const auto& c = cands[i];
        const auto sol = evaluate_candidate(spaces[c.pairing].function, spaces[c.pairing].pairing,
                                            polarity_of(c), cfg);
        const auto m = sol.cost.maslov;
        const auto t = sol.cost.tqc;
        scores[i] = {tqc_first ? t : m, tqc_first ? m : t, i};
        const std::size_t n = done.fetch_add(1) + 1;
        std::lock_guard<std::mutex> lock(mu);
        const std::pair<std::int64_t, std::int64_t> key{scores[i].primary, scores[i].secondary};
        if (!best || key < *best) best = key;
        if (cfg.progress && cfg.progress_every && (n % cfg.progress_every == 0 || n == cands.size())) {
          const auto bm = tqc_first ? best->second : best->first;
          const auto bt = tqc_first ? best->first : best->second;
          cfg.progress("event=progress evaluated=" + std::to_string(n) +
                       " total=" + std::to_string(cands.size()) + " best_maslov=" +
                       std::to_string(bm) + " best_tqc=" + std::to_string(bt));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const unsigned jobs = std::max(1u, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<PolarityAssignment> pols(cands.size());
  auto less = [&](const Scored& a, const Scored& b) {
    if (a.primary != b.primary) return a.primary < b.primary;
    if (a.secondary != b.secondary) return a.secondary < b.secondary;
    const auto pa = polarity_of(cands[a.slot]);
    const auto pb = polarity_of(cands[b.slot]);
    if (polarity_less(pa, pb)) return true;
    if (polarity_less(pb, pa)) return false;
    const auto& qa = spaces[cands[a.slot].pairing].pairing;
    const auto& qb = spaces[cands[b.slot].pairing].pairing;
    if (qa != qb) return qa < qb;
    return a.slot < b.slot;
  };
  const std::size_t k = std::min(cfg.top, scores.size());
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(k), scores.end(),
                    less);

  SearchResult r;
  r.evaluated = cands.size();
  r.pairings = spaces.size();
  r.candidates_per_pairing = spaces.front().size;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& c = cands[scores[i].slot];
    r.ranked.push_back(evaluate_candidate(spaces[c.pairing].function, spaces[c.pairing].pairing,
                                          polarity_of(c), cfg));
  }
  return r;
}

}  // namespace mvi
