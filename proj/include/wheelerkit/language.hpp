#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wheelerkit/alphabet.hpp"
#include "wheelerkit/automaton.hpp"
#include "wheelerkit/error.hpp"
#include "wheelerkit/min_wdfa.hpp"
#include "wheelerkit/ops.hpp"
#include "wheelerkit/wheeler.hpp"

namespace wheelerkit {

/// (mu, nu, gamma) with the states u, v reached by mu and nu.
struct Witness {
  Word mu, nu, gamma;
  State u = 0, v = 0;
};

/// n^3 + 2n^2 + n + 2, saturating.
inline std::size_t witness_length_bound(std::size_t n) {
  const long double b = static_cast<long double>(n) * n * n + 2.0L * n * n + n + 2;
  if (b >= static_cast<long double>(std::numeric_limits<std::size_t>::max() / 2))
    return std::numeric_limits<std::size_t>::max() / 2;
  return static_cast<std::size_t>(b);
}

struct SearchCaps {
  std::size_t gamma_bound;
  std::size_t cycle_len_cap;
  std::size_t pump_cap;
  std::size_t path_count_cap;

  static SearchCaps defaults(std::size_t n) {
    return {witness_length_bound(n), std::max<std::size_t>(1, n * n), n + 1, 100'000};
  }

  SearchCaps enlarged() const {
    return {gamma_bound, cycle_len_cap * 2, pump_cap * 2, path_count_cap * 10};
  }
};

/// Co-lex comparison where symbol s has rank rank[s].
inline std::strong_ordering colex_compare_ranked(const Word& x, const Word& y, const std::vector<std::size_t>& rank) {
  auto a = x.rbegin();
  auto b = y.rbegin();
  for (; a != x.rend() && b != y.rend(); ++a, ++b) {
    if (*a != *b) return rank[*a] <=> rank[*b];
  }
  return x.size() <=> y.size();
}

struct WitnessCheck {
  bool holds = false;         // the three conditions
  bool within_bound = false;  // the length condition
};

/// Checks the three witness conditions on a minimum DFA, with distinct
/// states standing in for Myhill-Nerode inequivalence, and separately the
/// length bound |mu|, |nu| <= |gamma| <= n^3 + 2n^2 + n + 2.
inline WitnessCheck check_witness_dfa(const Automaton& min_dfa, const Witness& w) {
  if (!min_dfa.deterministic()) throw Error(ErrorKind::NotDeterministic, "check_witness_dfa needs a DFA");
  WitnessCheck out;
  const std::size_t n = min_dfa.state_count();
  out.within_bound =
      w.mu.size() <= w.gamma.size() && w.nu.size() <= w.gamma.size() && w.gamma.size() <= witness_length_bound(n);
  if (w.gamma.empty()) return out;
  if (is_suffix(w.gamma, w.mu) || is_suffix(w.gamma, w.nu)) return out;
  auto u = dfa_run(min_dfa, min_dfa.initial(), w.mu);
  auto v = dfa_run(min_dfa, min_dfa.initial(), w.nu);
  if (!u || !v || *u == *v) return out;
  if (dfa_run(min_dfa, *u, w.gamma) != u || dfa_run(min_dfa, *v, w.gamma) != v) return out;
  const bool below = colex_compare(w.mu, w.gamma) < 0 && colex_compare(w.nu, w.gamma) < 0;
  const bool above = colex_compare(w.gamma, w.mu) < 0 && colex_compare(w.gamma, w.nu) < 0;
  out.holds = below || above;
  return out;
}

/// NFA form of the witness conditions. Condition 1 is checked for all
/// i, j <= min(ijcap, 2^n) by walking mu.gamma^i and nu.gamma^j through the
/// minimum DFA; within_bound reports the strict |mu|, |nu| < |gamma|.
inline WitnessCheck check_witness_nfa(const Automaton& a, const Witness& w, std::uint64_t ijcap,
                                      std::size_t state_cap = kDefaultSubsetCap) {
  WitnessCheck out;
  out.within_bound = w.mu.size() < w.gamma.size() && w.nu.size() < w.gamma.size();
  if (w.gamma.empty()) return out;
  if (is_suffix(w.gamma, w.mu) || is_suffix(w.gamma, w.nu)) return out;
  const bool below = colex_compare(w.mu, w.gamma) < 0 && colex_compare(w.nu, w.gamma) < 0;
  const bool above = colex_compare(w.gamma, w.mu) < 0 && colex_compare(w.gamma, w.nu) < 0;
  if (!below && !above) return out;

  auto cycles_somewhere = [&](const Word& prefix) {
    for (State p : run(a, prefix)) {
      const StateSet back = run_from(a, {p}, w.gamma);
      if (std::binary_search(back.begin(), back.end(), p)) return true;
    }
    return false;
  };
  if (!cycles_somewhere(w.mu) || !cycles_somewhere(w.nu)) return out;

  const std::uint64_t pow_cap =
      a.state_count() >= 63 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << a.state_count());
  const std::uint64_t limit = std::min(ijcap, pow_cap);
  const Automaton d = minimum_dfa(a, state_cap);
  // States visited by word.gamma^i for i = 0..limit; the sequence is
  // eventually periodic, so the walk stops at the first repeat.
  auto visited = [&](const Word& start) {
    std::set<State> seen;
    auto q = dfa_run(d, d.initial(), start);
    for (std::uint64_t i = 0; q && i <= limit; ++i) {
      if (!seen.insert(*q).second) break;
      q = dfa_run(d, *q, w.gamma);
    }
    return seen;
  };
  const auto xs = visited(w.mu);
  const auto ys = visited(w.nu);
  for (State x : xs)
    if (ys.count(x)) return out;
  out.holds = true;
  return out;
}

namespace detail {

enum Cmp : std::uint8_t { kEq = 0, kLt = 1, kGt = 2 };

}  // namespace detail

/// Witness search on a minimum DFA. The order-independent part (cycle
/// labels shared by two states, pumped) is computed once, so the same
/// searcher can be queried under several alphabet orders.
class WitnessSearch {
 public:
  WitnessSearch(const Automaton& min_dfa, SearchCaps caps) : d_(min_dfa), caps_(caps) {
    if (!d_.deterministic()) throw Error(ErrorKind::NotDeterministic, "witness search needs a DFA");
    collect_candidates();
  }

  const SearchCaps& caps() const noexcept { return caps_; }
  std::size_t candidate_count() const noexcept { return candidates_.size(); }

  /// Smallest witness by (|gamma|, gamma, mu, nu) among the candidates, with
  /// co-lex comparisons under the given symbol ranks.
  std::optional<Witness> find(const std::vector<std::size_t>& rank) const {
    std::vector<std::size_t> idx(candidates_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      const Word& gx = candidates_[x].gamma;
      const Word& gy = candidates_[y].gamma;
      if (gx.size() != gy.size()) return gx.size() < gy.size();
      return colex_compare_ranked(gx, gy, rank) < 0;
    });
    std::vector<Symbol> by_rank(rank.size());
    for (Symbol s = 0; s < rank.size(); ++s) by_rank[rank[s]] = s;

    for (std::size_t i : idx) {
      const Candidate& cand = candidates_[i];
      std::optional<Witness> best;
      for (const bool less_side : {true, false}) {
        auto table = feasibility(cand.gamma, less_side, rank);
        std::vector<std::pair<Word, State>> options;
        for (State p : cand.cycling) {
          if (auto mu = smallest_entering(p, cand.gamma, less_side, rank, by_rank, table)) options.emplace_back(*mu, p);
        }
        if (options.size() < 2) continue;
        std::sort(options.begin(), options.end(), [&](const auto& x, const auto& y) {
          return colex_compare_ranked(x.first, y.first, rank) < 0;
        });
        Witness w{options[0].first, options[1].first, cand.gamma, options[0].second, options[1].second};
        if (!best || better(w, *best, rank)) best = std::move(w);
      }
      if (best) return best;
    }
    return std::nullopt;
  }

  std::optional<Witness> find() const {
    std::vector<std::size_t> rank(d_.alphabet().size());
    for (std::size_t s = 0; s < rank.size(); ++s) rank[s] = s;
    return find(rank);
  }

 private:
  struct Candidate {
    Word gamma;
    std::vector<State> cycling;  // states p with delta(p, gamma) = p
  };

  static bool better(const Witness& x, const Witness& y, const std::vector<std::size_t>& rank) {
    if (auto c = colex_compare_ranked(x.mu, y.mu, rank); c != 0) return c < 0;
    return colex_compare_ranked(x.nu, y.nu, rank) < 0;
  }

  /// Labels of simple cycles through each pair (u, v), u < v, of the
  /// product automaton, pumped up to pump_cap times.
  void collect_candidates() {
    const std::size_t n = d_.state_count();
    std::set<Word> labels;
    std::vector<bool> on_path(n * n, false);
    Word label;
    for (State u = 0; u < n; ++u) {
      for (State v = u + 1; v < n; ++v) {
        std::size_t steps = 0;
        auto dfs = [&](auto&& self, State x, State y) -> void {
          for (const Edge& e : d_.out(x)) {
            if (steps >= caps_.path_count_cap) return;
            auto y2 = d_.next(y, e.symbol);
            if (!y2) continue;
            ++steps;
            const State x2 = e.target;
            label.push_back(e.symbol);
            if (x2 == u && *y2 == v) {
              labels.insert(label);
            } else if (!on_path[x2 * n + *y2] && label.size() < caps_.cycle_len_cap) {
              on_path[x2 * n + *y2] = true;
              self(self, x2, *y2);
              on_path[x2 * n + *y2] = false;
            }
            label.pop_back();
          }
        };
        on_path[u * n + v] = true;
        dfs(dfs, u, v);
        on_path[u * n + v] = false;
      }
    }
    std::set<Word> pumped;
    for (const Word& base : labels) {
      for (std::size_t k = 1; k <= caps_.pump_cap && base.size() * k <= caps_.gamma_bound; ++k)
        pumped.insert(power(base, k));
    }
    for (const Word& g : pumped) {
      Candidate c{g, {}};
      for (State p = 0; p < n; ++p)
        if (dfa_run(d_, p, g) == std::optional<State>(p)) c.cycling.push_back(p);
      if (c.cycling.size() >= 2) candidates_.push_back(std::move(c));
    }
  }

  // table[(i * 3 + status) * n + p]: from state p, having fixed the last i
  // symbols of mu with the given comparison status against gamma, some way
  // back to the initial state keeps |mu| <= |gamma| and ends on the wanted side.
  std::vector<std::uint8_t> feasibility(const Word& gamma, bool less_side, const std::vector<std::size_t>& rank) const {
    const std::size_t n = d_.state_count();
    const std::size_t g = gamma.size();
    std::vector<std::uint8_t> table((g + 1) * 3 * n, 0);
    auto at = [&](std::size_t i, int st, State p) -> std::uint8_t& { return table[(i * 3 + st) * n + p]; };
    for (std::size_t i = g + 1; i-- > 0;) {
      const Symbol gi = i < g ? gamma[g - 1 - i] : 0;
      for (int st = 0; st < 3; ++st) {
        const bool valid = less_side ? (st == detail::kLt || (st == detail::kEq && i < g)) : st == detail::kGt;
        for (State p = 0; p < n; ++p) {
          bool ok = valid && p == d_.initial();
          if (!ok && i < g) {
            for (const Edge& e : d_.in(p)) {
              int next = st;
              if (st == detail::kEq && e.symbol != gi) next = rank[e.symbol] < rank[gi] ? detail::kLt : detail::kGt;
              if (at(i + 1, next, e.source)) {
                ok = true;
                break;
              }
            }
          }
          at(i, st, p) = ok;
        }
      }
    }
    return table;
  }

  /// Co-lex smallest mu reaching p with |mu| <= |gamma| on the wanted side,
  /// built from its last symbol backwards over the set of possible states.
  std::optional<Word> smallest_entering(State p, const Word& gamma, bool less_side, const std::vector<std::size_t>& rank,
                                        const std::vector<Symbol>& by_rank, const std::vector<std::uint8_t>& table) const {
    const std::size_t n = d_.state_count();
    const std::size_t g = gamma.size();
    auto at = [&](std::size_t i, int st, State q) { return table[(i * 3 + st) * n + q] != 0; };
    if (!at(0, detail::kEq, p)) return std::nullopt;
    std::vector<State> current{p};
    int st = detail::kEq;
    Word reversed;
    for (std::size_t i = 0;; ++i) {
      const bool valid = less_side ? (st == detail::kLt || (st == detail::kEq && i < g)) : st == detail::kGt;
      if (valid && std::find(current.begin(), current.end(), d_.initial()) != current.end()) break;
      if (i >= g) return std::nullopt;
      const Symbol gi = gamma[g - 1 - i];
      bool advanced = false;
      for (Symbol c : by_rank) {
        std::vector<State> prev;
        for (State q : current)
          for (const Edge& e : d_.in(q, c)) prev.push_back(e.source);
        if (prev.empty()) continue;
        int next = st;
        if (st == detail::kEq && c != gi) next = rank[c] < rank[gi] ? detail::kLt : detail::kGt;
        if (std::none_of(prev.begin(), prev.end(), [&](State q) { return at(i + 1, next, q); })) continue;
        std::sort(prev.begin(), prev.end());
        prev.erase(std::unique(prev.begin(), prev.end()), prev.end());
        current.swap(prev);
        st = next;
        reversed.push_back(c);
        advanced = true;
        break;
      }
      if (!advanced) return std::nullopt;
    }
    return Word(reversed.rbegin(), reversed.rend());
  }

  const Automaton& d_;
  SearchCaps caps_;
  std::vector<Candidate> candidates_;
};

/// Smallest witness among the capped candidates, or nullopt.
inline std::optional<Witness> find_witness(const Automaton& min_dfa, const SearchCaps& caps) {
  return WitnessSearch(min_dfa, caps).find();
}

inline std::optional<Witness> find_witness(const Automaton& min_dfa) {
  return find_witness(min_dfa, SearchCaps::defaults(min_dfa.state_count()));
}

enum class LanguageStatus { Wheeler, NotWheeler, BoundedWheeler };

inline std::string to_string(LanguageStatus s) {
  switch (s) {
    case LanguageStatus::Wheeler: return "Wheeler";
    case LanguageStatus::NotWheeler: return "NotWheeler";
    case LanguageStatus::BoundedWheeler: return "BoundedWheeler";
  }
  return "?";
}

enum class Method { WitnessSearch, ConstructVerify, Both };

struct LanguageVerdict {
  LanguageStatus status;
  Automaton minimum;                 // the minimum DFA the verdict refers to
  std::optional<Witness> witness;    // NotWheeler found by search
  std::optional<Wdfa> certificate;   // Wheeler
  std::optional<std::string> refutation;  // NotWheeler found by construction
  SearchCaps caps;
};

namespace detail {

struct ConstructOutcome {
  std::optional<Wdfa> certificate;
  std::string refutation;
  bool conclusive = true;  // a failure below the n + n^2 depth proves nothing
};

/// A verified, language-equal construction proves Wheelerness at any depth;
/// a failure only refutes it at the certifying depth.
inline ConstructOutcome construct_and_verify(const Automaton& min_dfa, const WdfaOptions& opt) {
  const std::size_t full = certifying_depth(min_dfa.state_count());
  const bool certifying = opt.depth.value_or(full) >= full;
  try {
    Wdfa w = build_min_wdfa(min_dfa, opt);
    if (auto v = verify_wheeler(w.automaton, w.order))
      return {std::nullopt, "constructed automaton is not Wheeler: " + describe(w.automaton, *v), certifying};
    if (!language_equal(w.automaton, min_dfa))
      return {std::nullopt, "constructed automaton recognizes a different language", certifying};
    return {std::move(w), {}, true};
  } catch (const ConstructionInconsistent& e) {
    return {std::nullopt,
            std::string("construction inconsistent at ") + format_word(min_dfa.alphabet(), e.beta()) + " . " +
                min_dfa.alphabet().name(e.symbol()) + ": " + e.what(),
            certifying};
  }
}

}  // namespace detail

/// Decides whether L(d) is Wheeler for the alphabet order of d.
inline LanguageVerdict is_language_wheeler_dfa(const Automaton& d, Method method = Method::Both,
                                               std::optional<SearchCaps> caps = std::nullopt,
                                               const WdfaOptions& opt = {}) {
  if (!d.deterministic()) throw Error(ErrorKind::NotDeterministic, "is_language_wheeler_dfa needs a DFA");
  Automaton min_dfa = minimize(d);
  const SearchCaps used = caps.value_or(SearchCaps::defaults(min_dfa.state_count()));
  LanguageVerdict verdict{LanguageStatus::BoundedWheeler, min_dfa, std::nullopt, std::nullopt, std::nullopt, used};

  if (method == Method::WitnessSearch) {
    if (auto w = find_witness(min_dfa, used)) {
      verdict.status = LanguageStatus::NotWheeler;
      verdict.witness = std::move(w);
    }
    return verdict;
  }
  if (method == Method::ConstructVerify) {
    auto outcome = detail::construct_and_verify(min_dfa, opt);
    if (outcome.certificate) {
      verdict.status = LanguageStatus::Wheeler;
      verdict.certificate = std::move(outcome.certificate);
    } else {
      verdict.status = outcome.conclusive ? LanguageStatus::NotWheeler : LanguageStatus::BoundedWheeler;
      verdict.refutation = std::move(outcome.refutation);
    }
    return verdict;
  }

  auto witness = find_witness(min_dfa, used);
  std::optional<detail::ConstructOutcome> outcome;
  try {
    outcome = detail::construct_and_verify(min_dfa, opt);
  } catch (const Error& e) {
    // An infeasible construction still leaves a found witness conclusive.
    if (e.kind() != ErrorKind::InfeasibleEnumeration || !witness) throw;
  }
  if (witness) {
    if (outcome && outcome->certificate)
      throw Error(ErrorKind::InternalDisagreement, "witness found but the constructed WDFA verifies");
    verdict.status = LanguageStatus::NotWheeler;
    verdict.witness = std::move(witness);
    if (outcome && outcome->conclusive) verdict.refutation = std::move(outcome->refutation);
    return verdict;
  }
  if (outcome->certificate) {
    verdict.status = LanguageStatus::Wheeler;
    verdict.certificate = std::move(outcome->certificate);
    return verdict;
  }
  if (!outcome->conclusive) return verdict;
  // Construction refutes but the capped search missed: retry wider once.
  verdict.caps = used.enlarged();
  if (auto w = find_witness(min_dfa, verdict.caps)) {
    verdict.status = LanguageStatus::NotWheeler;
    verdict.witness = std::move(w);
    verdict.refutation = std::move(outcome->refutation);
    return verdict;
  }
  throw Error(ErrorKind::InternalDisagreement,
              "construction refutes Wheelerness but no witness was found: " + outcome->refutation);
}

/// Language Wheelerness of an arbitrary automaton, through its minimum DFA.
inline LanguageVerdict is_language_wheeler_nfa(const Automaton& a, std::size_t state_cap = kDefaultSubsetCap,
                                               std::optional<SearchCaps> caps = std::nullopt,
                                               const WdfaOptions& opt = {}) {
  return is_language_wheeler_dfa(minimum_dfa(a, state_cap), Method::Both, caps, opt);
}

}  // namespace wheelerkit
