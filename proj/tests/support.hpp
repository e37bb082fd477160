#pragma once

// Generators and brute-force oracles shared by the unit tests and the
// acceptance runner. Oracles here deliberately avoid the library's own
// algorithms (no sweeps, no partition refinement, no witness logic).

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wheelerkit/wheelerkit.hpp"

namespace wk_test {

using namespace wheelerkit;

inline std::string fixture(const std::string& name) { return std::string(WHEELERKIT_FIXTURES) + "/" + name; }

inline OrderedAlphabet letters(std::size_t sigma) {
  std::vector<std::string> s;
  for (std::size_t i = 0; i < sigma; ++i) s.push_back(std::string(1, static_cast<char>('a' + i)));
  return OrderedAlphabet(s);
}

/// Random partial DFA, initial 0, at least one final state. Not trimmed.
inline Automaton random_dfa(std::mt19937& rng, std::size_t n, std::size_t sigma, double density = 0.7) {
  std::bernoulli_distribution has_edge(density), is_final(0.4);
  std::uniform_int_distribution<State> target(0, static_cast<State>(n - 1));
  std::vector<Edge> edges;
  std::vector<State> finals;
  for (State q = 0; q < n; ++q) {
    for (Symbol a = 0; a < sigma; ++a)
      if (has_edge(rng)) edges.push_back({q, a, target(rng)});
    if (is_final(rng)) finals.push_back(q);
  }
  if (finals.empty()) finals.push_back(target(rng));
  return Automaton(letters(sigma), n, 0, finals, edges);
}

/// Random NFA, initial 0, each possible edge present with probability p.
inline Automaton random_nfa(std::mt19937& rng, std::size_t n, std::size_t sigma, double p, bool initial_final = false) {
  std::bernoulli_distribution has_edge(p), is_final(0.4);
  std::vector<Edge> edges;
  std::vector<State> finals;
  for (State q = 0; q < n; ++q) {
    for (Symbol a = 0; a < sigma; ++a)
      for (State r = 0; r < n; ++r)
        if (has_edge(rng)) edges.push_back({q, a, r});
    if ((q == 0 && initial_final) || is_final(rng)) finals.push_back(q);
  }
  if (finals.empty()) finals.push_back(0);
  return Automaton(letters(sigma), n, 0, finals, edges);
}

/// Direct transcription of the two Wheeler conditions, quadratic in edges.
inline bool wheeler_by_definition(const Automaton& a, const std::vector<std::size_t>& rank) {
  if (rank[a.initial()] != 0) return false;
  for (const Edge& e : a.edges())
    if (e.target == a.initial()) return false;
  for (const Edge& e1 : a.edges())
    for (const Edge& e2 : a.edges()) {
      if (e1.symbol < e2.symbol && !(rank[e1.target] < rank[e2.target])) return false;
      if (e1.symbol == e2.symbol && rank[e1.source] < rank[e2.source] && !(rank[e1.target] <= rank[e2.target]))
        return false;
    }
  return true;
}

/// Every order with q0 first, tried exhaustively.
inline bool wheeler_exists_brute(const Automaton& a) {
  const std::size_t n = a.state_count();
  if (n == 0) return true;
  std::vector<State> rest;
  for (State q = 0; q < n; ++q)
    if (q != a.initial()) rest.push_back(q);
  std::vector<std::size_t> rank(n);
  do {
    rank[a.initial()] = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) rank[rest[i]] = i + 1;
    if (wheeler_by_definition(a, rank)) return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

/// All words of length <= len, shortlex.
inline std::vector<Word> all_words(std::size_t sigma, std::size_t len) {
  std::vector<Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t l = 1; l <= len; ++l) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (Symbol a = 0; a < sigma; ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

/// Membership by simulating the NFA on every word up to `len`.
inline bool same_language_up_to(const Automaton& x, const Automaton& y, std::size_t len) {
  for (const Word& w : all_words(x.alphabet().size(), len))
    if (accepts(x, w) != accepts(y, w)) return false;
  return true;
}

/// Random trimmed NFA that is Wheeler under the identity order: states are
/// sorted by their entering label and every candidate edge is kept only if it
/// keeps condition (ii) true for the edges already chosen.
inline Automaton random_wnfa(std::mt19937& rng, std::size_t n, std::size_t sigma, double p) {
  std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(sigma - 1));
  std::vector<Symbol> lambda(n, 0);
  for (State q = 1; q < n; ++q) lambda[q] = sym(rng);
  std::sort(lambda.begin() + 1, lambda.end());
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::vector<std::tuple<State, Symbol, State>> candidates;
  for (State u = 0; u < n; ++u)
    for (State v = 1; v < n; ++v) candidates.emplace_back(u, lambda[v], v);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::bernoulli_distribution keep(p), is_final(0.4);
  std::vector<Edge> edges;
  // Make every state reachable along a chain first when possible.
  for (State v = 1; v < n; ++v) {
    std::vector<State> sources;
    for (State u = 0; u < v; ++u) sources.push_back(u);
    std::shuffle(sources.begin(), sources.end(), rng);
    for (State u : sources) {
      edges.push_back({u, lambda[v], v});
      if (wheeler_by_definition(Automaton(letters(sigma), n, 0, {}, edges), rank)) break;
      edges.pop_back();
    }
  }
  for (auto [u, a, v] : candidates) {
    if (!keep(rng)) continue;
    edges.push_back({u, a, v});
    if (!wheeler_by_definition(Automaton(letters(sigma), n, 0, {}, edges), rank)) edges.pop_back();
  }
  std::vector<State> finals;
  for (State q = 0; q < n; ++q)
    if (is_final(rng)) finals.push_back(q);
  if (finals.empty()) finals.push_back(static_cast<State>(n - 1));
  return trim_basic(Automaton(letters(sigma), n, 0, finals, edges));
}

/// Labels of all simple cycles (each cycle once per starting state).
inline std::vector<Word> simple_cycle_labels(const Automaton& a) {
  std::vector<Word> out;
  const std::size_t n = a.state_count();
  for (State start = 0; start < n; ++start) {
    std::vector<bool> on(n, false);
    Word label;
    std::function<void(State)> dfs = [&](State q) {
      for (const Edge& e : a.out(q)) {
        label.push_back(e.symbol);
        if (e.target == start) out.push_back(label);
        else if (e.target > start && !on[e.target]) {
          on[e.target] = true;
          dfs(e.target);
          on[e.target] = false;
        }
        label.pop_back();
      }
    };
    on[start] = true;
    dfs(start);
  }
  return out;
}

}  // namespace wk_test
