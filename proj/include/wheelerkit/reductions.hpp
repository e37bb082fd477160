#pragma once

#include <set>
#include <string>
#include <vector>

#include "wheelerkit/alphabet.hpp"
#include "wheelerkit/automaton.hpp"
#include "wheelerkit/error.hpp"
#include "wheelerkit/gw.hpp"
#include "wheelerkit/ops.hpp"

namespace wheelerkit {

struct ReductionReport {
  Automaton automaton;
  std::vector<std::string> fresh_symbols;
  std::size_t states_added = 0;  // zero when trimming removed more than was added
  std::size_t symbols_added = 0;
};

namespace detail {

/// `base`, or base followed by enough '!' to avoid every taken token.
inline std::string mint(const std::string& base, std::set<std::string>& taken) {
  std::string s = base;
  while (taken.count(s)) s += '!';
  taken.insert(s);
  return s;
}

inline ReductionReport report(Automaton out, std::vector<std::string> fresh, std::size_t input_states,
                              std::size_t input_symbols) {
  Automaton trimmed = trim_basic(out);
  const std::size_t states = trimmed.state_count();
  const std::size_t symbols = trimmed.alphabet().size();
  return {std::move(trimmed), std::move(fresh), states > input_states ? states - input_states : 0,
          symbols > input_symbols ? symbols - input_symbols : 0};
}

}  // namespace detail

/// a.(Lc)*.L + b.(Sigma + c)*, with fresh a < b < c placed after the input
/// symbols. The language is universal exactly when the output language is
/// Wheeler. Requires the empty word in L.
inline ReductionReport reduce_universality(const Automaton& input) {
  const Automaton a = trim_basic(input);
  if (!a.is_final(a.initial()))
    throw Error(ErrorKind::PreconditionEpsilonNotAccepted, "the initial state must be final");
  std::set<std::string> taken(a.alphabet().symbols().begin(), a.alphabet().symbols().end());
  std::vector<std::string> fresh{detail::mint("a", taken), detail::mint("b", taken), detail::mint("c", taken)};
  std::vector<std::string> symbols = a.alphabet().symbols();
  symbols.insert(symbols.end(), fresh.begin(), fresh.end());
  const OrderedAlphabet alphabet(symbols);
  const std::size_t sigma = a.alphabet().size();
  const Symbol sa = static_cast<Symbol>(sigma), sb = sa + 1, sc = sa + 2;

  const std::size_t n = a.state_count();
  const State start = 0;
  const State sink = static_cast<State>(n + 1);
  auto shifted = [](State q) { return static_cast<State>(q + 1); };
  std::vector<Edge> edges;
  for (const Edge& e : a.edges()) edges.push_back({shifted(e.source), e.symbol, shifted(e.target)});
  for (State f : a.finals()) edges.push_back({shifted(f), sc, shifted(a.initial())});
  edges.push_back({start, sa, shifted(a.initial())});
  edges.push_back({start, sb, sink});
  for (Symbol s = 0; s < sigma; ++s) edges.push_back({sink, s, sink});
  edges.push_back({sink, sc, sink});
  std::vector<State> finals;
  for (State f : a.finals()) finals.push_back(shifted(f));
  finals.push_back(sink);
  return detail::report(Automaton(alphabet, n + 2, start, std::move(finals), std::move(edges)), std::move(fresh),
                        n, sigma);
}

/// Adds one seven-state gadget per pair of consecutive symbols (a_i, a_{i+1})
/// and two accepting sinks q_e, q_f. The output alphabet is
/// a_1 < ... < a_s < x_1 < ... < x_{s-1} < e < f. The input is Wheeler for
/// its order exactly when the output is Wheeler for some order.
inline ReductionReport reduce_nfa_wheeler_to_gw(const Automaton& input) {
  const Automaton a = trim_basic(input);
  if (!a.in(a.initial()).empty())
    throw Error(ErrorKind::InvalidArgument, "the initial state must have no in-edges");
  const std::size_t sigma = a.alphabet().size();
  const std::size_t gadgets = sigma > 0 ? sigma - 1 : 0;
  std::set<std::string> taken(a.alphabet().symbols().begin(), a.alphabet().symbols().end());
  std::vector<std::string> fresh;
  for (std::size_t i = 1; i <= gadgets; ++i) fresh.push_back(detail::mint("x" + std::to_string(i), taken));
  fresh.push_back(detail::mint("e", taken));
  fresh.push_back(detail::mint("f", taken));
  std::vector<std::string> symbols = a.alphabet().symbols();
  symbols.insert(symbols.end(), fresh.begin(), fresh.end());
  const OrderedAlphabet alphabet(symbols);
  const Symbol sym_e = static_cast<Symbol>(sigma + gadgets);
  const Symbol sym_f = sym_e + 1;

  const std::size_t n = a.state_count();
  const State q0 = a.initial();
  const State qe = static_cast<State>(n + 7 * gadgets);
  const State qf = qe + 1;
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  for (std::size_t g = 0; g < gadgets; ++g) {
    // q(k) is the gadget state with superscript k (1..7).
    auto q = [&](int k) { return static_cast<State>(n + 7 * g + static_cast<std::size_t>(k - 1)); };
    const Symbol ai = static_cast<Symbol>(g);
    const Symbol ai1 = static_cast<Symbol>(g + 1);
    const Symbol xi = static_cast<Symbol>(sigma + g);
    edges.push_back({q0, ai1, q(3)});
    edges.push_back({q(3), xi, q(5)});
    edges.push_back({q(5), xi, q(7)});
    edges.push_back({q(7), ai, q(2)});
    edges.push_back({q(2), xi, q(5)});
    edges.push_back({q(5), sym_e, qe});
    edges.push_back({q0, xi, q(4)});
    edges.push_back({q(4), xi, q(6)});
    edges.push_back({q(6), ai, q(1)});
    edges.push_back({q(1), xi, q(4)});
    edges.push_back({q(4), sym_f, qf});
  }
  std::vector<State> finals(a.finals());
  finals.push_back(qe);
  finals.push_back(qf);
  return detail::report(Automaton(alphabet, n + 7 * gadgets + 2, q0, std::move(finals), std::move(edges)),
                        std::move(fresh), n, sigma);
}

/// DFA over Y + x_1..x_k + e + f that is GW exactly when the instance is
/// satisfiable. States: q0, one q_j per element occurring as a first or last
/// member of a triple, six per triple, then q_e and q_f.
inline ReductionReport reduce_betweenness_to_dfa(const BetweennessInstance& inst) {
  validate(inst);
  const std::size_t ny = inst.elements.size();
  const std::size_t k = inst.triples.size();
  std::set<std::string> taken(inst.elements.begin(), inst.elements.end());
  std::vector<std::string> fresh;
  for (std::size_t i = 1; i <= k; ++i) fresh.push_back(detail::mint("x" + std::to_string(i), taken));
  fresh.push_back(detail::mint("e", taken));
  fresh.push_back(detail::mint("f", taken));
  std::vector<std::string> symbols = inst.elements;
  symbols.insert(symbols.end(), fresh.begin(), fresh.end());
  const OrderedAlphabet alphabet(symbols);
  const Symbol sym_e = static_cast<Symbol>(ny + k);
  const Symbol sym_f = sym_e + 1;

  std::vector<bool> used(ny, false);
  for (const Triple& t : inst.triples) used[t.a] = used[t.c] = true;
  std::vector<State> q_of(ny, 0);
  State next = 1;
  for (std::size_t j = 0; j < ny; ++j)
    if (used[j]) q_of[j] = next++;
  const State first_gadget = next;
  const State qe = static_cast<State>(first_gadget + 6 * k);
  const State qf = qe + 1;

  std::vector<Edge> edges;
  for (std::size_t j = 0; j < ny; ++j)
    if (used[j]) edges.push_back({0, static_cast<Symbol>(j), q_of[j]});
  for (std::size_t i = 0; i < k; ++i) {
    const Triple& t = inst.triples[i];
    // q(1), q(3), q(5) hang off a_i; q(2), q(4), q(6) off c_i.
    auto q = [&](int s) { return static_cast<State>(first_gadget + 6 * i + static_cast<std::size_t>(s - 1)); };
    const Symbol xi = static_cast<Symbol>(ny + i);
    const Symbol bi = static_cast<Symbol>(t.b);
    edges.push_back({q_of[t.a], xi, q(1)});
    edges.push_back({q(1), xi, q(3)});
    edges.push_back({q(3), bi, q(5)});
    edges.push_back({q(5), xi, q(1)});
    edges.push_back({q(1), sym_e, qe});
    edges.push_back({q_of[t.c], xi, q(2)});
    edges.push_back({q(2), xi, q(4)});
    edges.push_back({q(4), bi, q(6)});
    edges.push_back({q(6), xi, q(2)});
    edges.push_back({q(2), sym_f, qf});
  }
  return detail::report(Automaton(alphabet, qf + 1, 0, {qe, qf}, std::move(edges)), std::move(fresh), 0, ny);
}

}  // namespace wheelerkit
