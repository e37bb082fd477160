#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wheelerkit/alphabet.hpp"
#include "wheelerkit/automaton.hpp"
#include "wheelerkit/error.hpp"

namespace wheelerkit {

using StateSet = std::vector<State>;  // sorted, duplicate free

struct TrimResult {
  Automaton automaton;
  /// original_id[q] is the id of trimmed state q in the input automaton.
  std::vector<State> original_id;
};

/// Keeps exactly the states reachable from the initial state and
/// co-reachable to a final state, renumbered in increasing original order.
/// An automaton whose initial state does not survive becomes the one-state
/// empty-language automaton.
inline TrimResult trim_basic_with_map(const Automaton& a) {
  const std::size_t n = a.state_count();
  std::vector<bool> reach(n, false), coreach(n, false);
  std::vector<State> stack{a.initial()};
  reach[a.initial()] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (const Edge& e : a.out(q)) {
      if (!reach[e.target]) {
        reach[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  for (State f : a.finals()) {
    if (!coreach[f]) {
      coreach[f] = true;
      stack.push_back(f);
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (const Edge& e : a.in(q)) {
      if (!coreach[e.source]) {
        coreach[e.source] = true;
        stack.push_back(e.source);
      }
    }
  }
  if (!coreach[a.initial()]) return {empty_language_automaton(a.alphabet()), {a.initial()}};

  std::vector<State> new_id(n, static_cast<State>(-1));
  std::vector<State> original;
  for (State q = 0; q < n; ++q) {
    if (reach[q] && coreach[q]) {
      new_id[q] = static_cast<State>(original.size());
      original.push_back(q);
    }
  }
  std::vector<State> finals;
  for (State f : a.finals())
    if (new_id[f] != static_cast<State>(-1)) finals.push_back(new_id[f]);
  std::vector<Edge> edges;
  for (const Edge& e : a.edges()) {
    if (new_id[e.source] != static_cast<State>(-1) && new_id[e.target] != static_cast<State>(-1))
      edges.push_back({new_id[e.source], e.symbol, new_id[e.target]});
  }
  return {Automaton(a.alphabet(), original.size(), new_id[a.initial()], std::move(finals), std::move(edges)),
          std::move(original)};
}

inline Automaton trim_basic(const Automaton& a) { return trim_basic_with_map(a).automaton; }

/// The set of states reached from `from` by reading `word`; empty if the
/// word cannot be read.
inline StateSet run_from(const Automaton& a, StateSet from, const Word& word) {
  StateSet current = std::move(from);
  std::sort(current.begin(), current.end());
  current.erase(std::unique(current.begin(), current.end()), current.end());
  StateSet next;
  for (Symbol s : word) {
    next.clear();
    for (State q : current)
      for (const Edge& e : a.out(q, s)) next.push_back(e.target);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current.swap(next);
    if (current.empty()) break;
  }
  return current;
}

inline StateSet run(const Automaton& a, const Word& word) { return run_from(a, {a.initial()}, word); }

inline bool accepts(const Automaton& a, const Word& word) {
  for (State q : run(a, word))
    if (a.is_final(q)) return true;
  return false;
}

/// State reached by a word in a DFA, or nullopt when the word is not readable.
inline std::optional<State> dfa_run(const Automaton& d, State from, const Word& word) {
  State q = from;
  for (Symbol s : word) {
    auto nq = d.next(q, s);
    if (!nq) return std::nullopt;
    q = *nq;
  }
  return q;
}

inline constexpr std::size_t kDefaultSubsetCap = std::size_t{1} << 18;

/// Powerset construction restricted to reachable subsets. Subset states are
/// numbered in breadth-first discovery order (symbols in alphabet order).
inline Automaton determinize(const Automaton& a, std::size_t state_cap = kDefaultSubsetCap) {
  std::map<StateSet, State> index;
  std::vector<StateSet> subsets;
  std::vector<Edge> edges;
  std::vector<State> finals;
  subsets.push_back({a.initial()});
  index.emplace(subsets.front(), 0);
  StateSet target;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const StateSet current = subsets[i];
    for (State q : current) {
      if (a.is_final(q)) {
        finals.push_back(static_cast<State>(i));
        break;
      }
    }
    for (Symbol s = 0; s < a.alphabet().size(); ++s) {
      target.clear();
      for (State q : current)
        for (const Edge& e : a.out(q, s)) target.push_back(e.target);
      if (target.empty()) continue;
      std::sort(target.begin(), target.end());
      target.erase(std::unique(target.begin(), target.end()), target.end());
      auto [it, inserted] = index.emplace(target, static_cast<State>(subsets.size()));
      if (inserted) {
        if (subsets.size() >= state_cap)
          throw Error(ErrorKind::StateBlowupExceeded,
                      "subset construction exceeded " + std::to_string(state_cap) + " states");
        subsets.push_back(target);
      }
      edges.push_back({static_cast<State>(i), s, it->second});
    }
  }
  return trim_basic(Automaton(a.alphabet(), subsets.size(), 0, std::move(finals), std::move(edges)));
}

/// Renumbers a DFA's reachable part in breadth-first order from the initial
/// state, symbols in alphabet order. Two trimmed DFAs are isomorphic exactly
/// when their canonical forms are identical.
inline Automaton canonical_dfa(const Automaton& d) {
  if (!d.deterministic()) throw Error(ErrorKind::NotDeterministic, "canonical form needs a DFA");
  std::vector<State> id(d.state_count(), static_cast<State>(-1));
  std::vector<State> order{d.initial()};
  id[d.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const Edge& e : d.out(order[i])) {
      if (id[e.target] == static_cast<State>(-1)) {
        id[e.target] = static_cast<State>(order.size());
        order.push_back(e.target);
      }
    }
  }
  std::vector<State> finals;
  std::vector<Edge> edges;
  for (State q : order) {
    if (d.is_final(q)) finals.push_back(id[q]);
    for (const Edge& e : d.out(q)) edges.push_back({id[q], e.symbol, id[e.target]});
  }
  return Automaton(d.alphabet(), order.size(), 0, std::move(finals), std::move(edges));
}

namespace detail {

/// Refinable partition over 0..n-1 (Valmari-Lehtinen style arrays).
class RefinablePartition {
 public:
  explicit RefinablePartition(std::size_t n) : elems_(n), loc_(n), block_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) elems_[i] = loc_[i] = i;
    if (n > 0) blocks_.push_back({0, n, 0});
  }

  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block_of(std::size_t x) const { return block_[x]; }
  std::size_t size(std::size_t b) const { return blocks_[b].end - blocks_[b].begin; }

  std::vector<std::size_t> members(std::size_t b) const {
    return {elems_.begin() + static_cast<std::ptrdiff_t>(blocks_[b].begin),
            elems_.begin() + static_cast<std::ptrdiff_t>(blocks_[b].end)};
  }

  void mark(std::size_t x) {
    Block& b = blocks_[block_[x]];
    std::size_t pos = loc_[x];
    if (pos < b.marked_end) return;
    std::size_t target = b.marked_end++;
    std::swap(elems_[pos], elems_[target]);
    loc_[elems_[pos]] = pos;
    loc_[elems_[target]] = target;
    if (b.marked_end - b.begin == 1) touched_.push_back(block_[x]);
  }

  /// Splits every touched block into marked and unmarked parts. Returns
  /// (old block, new block) for every real split; the new block holds the
  /// marked states.
  std::vector<std::pair<std::size_t, std::size_t>> split_marked() {
    std::vector<std::pair<std::size_t, std::size_t>> splits;
    for (std::size_t b : touched_) {
      Block& blk = blocks_[b];
      std::size_t mid = blk.marked_end;
      blk.marked_end = blk.begin;
      if (mid == blk.end) continue;
      const std::size_t nb = blocks_.size();
      blocks_.push_back({blk.begin, mid, blk.begin});
      blocks_[b].begin = mid;
      blocks_[b].marked_end = mid;
      for (std::size_t i = blocks_[nb].begin; i < blocks_[nb].end; ++i) block_[elems_[i]] = nb;
      splits.emplace_back(b, nb);
    }
    touched_.clear();
    return splits;
  }

 private:
  struct Block {
    std::size_t begin, end, marked_end;
  };
  std::vector<std::size_t> elems_, loc_, block_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> touched_;
};

}  // namespace detail

/// Minimum DFA by Hopcroft's partition refinement over the completed
/// automaton (an implicit dead state makes the transition function total).
/// The result is trimmed and canonically numbered.
inline Automaton minimize(const Automaton& input) {
  if (!input.deterministic()) throw Error(ErrorKind::NotDeterministic, "minimize needs a DFA");
  const Automaton d = trim_basic(input);
  if (d.finals().empty()) return empty_language_automaton(d.alphabet());

  const std::size_t n = d.state_count();
  const std::size_t total = n + 1;  // state n is the dead state
  const std::size_t sigma = d.alphabet().size();
  // inverse[a][q] = predecessors of q on a in the completed automaton
  std::vector<std::vector<std::vector<std::size_t>>> inverse(sigma, std::vector<std::vector<std::size_t>>(total));
  for (std::size_t q = 0; q < total; ++q) {
    for (Symbol a = 0; a < sigma; ++a) {
      std::size_t t = n;
      if (q < n) {
        if (auto nq = d.next(static_cast<State>(q), a)) t = *nq;
      }
      inverse[a][t].push_back(q);
    }
  }

  detail::RefinablePartition part(total);
  for (State f : d.finals()) part.mark(f);
  part.split_marked();

  std::deque<std::pair<std::size_t, Symbol>> work;
  std::vector<std::vector<bool>> queued;
  auto ensure = [&](std::size_t b) {
    while (queued.size() <= b) queued.emplace_back(sigma, false);
  };
  auto enqueue = [&](std::size_t b, Symbol a) {
    ensure(b);
    if (!queued[b][a]) {
      queued[b][a] = true;
      work.emplace_back(b, a);
    }
  };
  for (std::size_t b = 0; b < part.block_count(); ++b)
    for (Symbol a = 0; a < sigma; ++a) enqueue(b, a);

  while (!work.empty()) {
    auto [splitter, a] = work.front();
    work.pop_front();
    queued[splitter][a] = false;
    for (std::size_t x : part.members(splitter))
      for (std::size_t p : inverse[a][x]) part.mark(p);
    for (auto [old_block, new_block] : part.split_marked()) {
      ensure(new_block);
      for (Symbol c = 0; c < sigma; ++c) {
        if (queued[old_block][c]) {
          enqueue(new_block, c);
        } else {
          enqueue(part.size(old_block) <= part.size(new_block) ? old_block : new_block, c);
        }
      }
    }
  }

  const std::size_t dead_block = part.block_of(n);
  std::vector<State> block_id(part.block_count(), static_cast<State>(-1));
  std::size_t count = 0;
  for (std::size_t b = 0; b < part.block_count(); ++b)
    if (b != dead_block) block_id[b] = static_cast<State>(count++);
  std::vector<State> finals;
  std::vector<Edge> edges;
  for (State q = 0; q < n; ++q) {
    const State bq = block_id[part.block_of(q)];
    if (d.is_final(q)) finals.push_back(bq);
    for (const Edge& e : d.out(q)) {
      const State bt = block_id[part.block_of(e.target)];
      if (bt != static_cast<State>(-1)) edges.push_back({bq, e.symbol, bt});
    }
  }
  Automaton quotient(d.alphabet(), count, block_id[part.block_of(d.initial())], std::move(finals),
                     std::move(edges));
  return canonical_dfa(quotient);
}

/// Re-expresses `a` over `target`, which must hold the same symbol names in
/// some order. Edge symbols are remapped by name.
inline Automaton with_alphabet(const Automaton& a, const OrderedAlphabet& target) {
  if (target.size() != a.alphabet().size())
    throw Error(ErrorKind::InvalidArgument, "alphabets differ in size");
  std::vector<Symbol> map(a.alphabet().size());
  for (Symbol s = 0; s < a.alphabet().size(); ++s) {
    auto t = target.find(a.alphabet().name(s));
    if (!t) throw Error(ErrorKind::InvalidArgument, "symbol '" + a.alphabet().name(s) + "' missing");
    map[s] = *t;
  }
  std::vector<Edge> edges;
  edges.reserve(a.edges().size());
  for (const Edge& e : a.edges()) edges.push_back({e.source, map[e.symbol], e.target});
  return Automaton(target, a.state_count(), a.initial(), a.finals(), std::move(edges));
}

/// Minimum DFA of the language of any automaton.
inline Automaton minimum_dfa(const Automaton& a, std::size_t state_cap = kDefaultSubsetCap) {
  const Automaton t = trim_basic(a);
  return minimize(t.deterministic() ? t : determinize(t, state_cap));
}

/// L(a) = L(b), decided through canonical minimum DFAs.
inline bool language_equal(const Automaton& a, const Automaton& b,
                           std::size_t state_cap = kDefaultSubsetCap) {
  const Automaton mb = with_alphabet(b, a.alphabet());
  return minimum_dfa(a, state_cap).identical(minimum_dfa(mb, state_cap));
}

/// Myhill-Nerode equivalence of two readable words, read off a minimum DFA.
inline bool right_context_equal(const Automaton& min_dfa, const Word& alpha, const Word& beta) {
  if (!min_dfa.deterministic()) throw Error(ErrorKind::NotDeterministic, "right_context_equal needs a DFA");
  auto u = dfa_run(min_dfa, min_dfa.initial(), alpha);
  auto v = dfa_run(min_dfa, min_dfa.initial(), beta);
  if (!u || !v) throw Error(ErrorKind::NotReadable, "word is not a prefix of the language");
  return *u == *v;
}

}  // namespace wheelerkit
