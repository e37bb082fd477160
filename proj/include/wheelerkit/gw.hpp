#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wheelerkit/alphabet.hpp"
#include "wheelerkit/automaton.hpp"
#include "wheelerkit/error.hpp"
#include "wheelerkit/io.hpp"
#include "wheelerkit/language.hpp"
#include "wheelerkit/min_wdfa.hpp"
#include "wheelerkit/ops.hpp"
#include "wheelerkit/wheeler.hpp"

namespace wheelerkit {

/// A candidate symbol order, smallest first.
using AlphabetOrder = std::vector<std::string>;

inline constexpr std::size_t kMaxOrderedAlphabet = 8;

/// The same automaton over the alphabet listed in `order`.
inline Automaton reorder(const Automaton& a, const AlphabetOrder& order) {
  return with_alphabet(a, OrderedAlphabet(order));
}

namespace detail {

inline void check_alphabet_size(const Automaton& a, std::size_t max_sigma) {
  if (a.alphabet().size() > max_sigma)
    throw Error(ErrorKind::AlphabetTooLarge, "alphabet has " + std::to_string(a.alphabet().size()) +
                                                 " symbols, order search is limited to " + std::to_string(max_sigma));
}

/// Calls visit(perm) for the permutations of 0..sigma-1 in lexicographic
/// order until it returns true.
template <class Visit>
bool for_each_order(std::size_t sigma, Visit&& visit) {
  std::vector<Symbol> perm(sigma);
  std::iota(perm.begin(), perm.end(), Symbol{0});
  do {
    if (visit(perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline AlphabetOrder names_of(const OrderedAlphabet& alphabet, const std::vector<Symbol>& perm) {
  AlphabetOrder out;
  for (Symbol s : perm) out.push_back(alphabet.name(s));
  return out;
}

}  // namespace detail

/// First alphabet order (permutations of the listed order, lexicographic)
/// under which the automaton itself is Wheeler.
inline std::optional<AlphabetOrder> gw_automaton_check(const Automaton& input, std::size_t budget = kDefaultSearchBudget,
                                                       std::size_t max_sigma = kMaxOrderedAlphabet) {
  detail::check_alphabet_size(input, max_sigma);
  const Automaton a = trim_basic(input);
  std::optional<AlphabetOrder> found;
  detail::for_each_order(a.alphabet().size(), [&](const std::vector<Symbol>& perm) {
    AlphabetOrder order = detail::names_of(a.alphabet(), perm);
    const Automaton r = reorder(a, order);
    bool ok;
    if (r.deterministic()) ok = std::holds_alternative<WheelerOrder>(dfa_wheeler_order(r));
    else ok = std::holds_alternative<WheelerOrder>(nfa_wheeler_search(r, budget));
    if (ok) found = std::move(order);
    return ok;
  });
  return found;
}

/// Is L Wheeler under the given symbol ranks? The minimum DFA being Wheeler
/// is a direct proof; a witness is a direct refutation; otherwise the
/// construction decides.
inline bool language_wheeler_under(const Automaton& min_dfa, const WitnessSearch& search,
                                   const std::vector<Symbol>& perm, const WdfaOptions& opt = {}) {
  const AlphabetOrder order = detail::names_of(min_dfa.alphabet(), perm);
  const Automaton r = reorder(min_dfa, order);
  if (std::holds_alternative<WheelerOrder>(dfa_wheeler_order(r))) return true;
  std::vector<std::size_t> rank(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) rank[perm[i]] = i;
  if (search.find(rank)) return false;
  const auto verdict = is_language_wheeler_dfa(r, Method::ConstructVerify, std::nullopt, opt);
  return verdict.status == LanguageStatus::Wheeler;
}

/// First alphabet order under which L(d) is a Wheeler language.
inline std::optional<AlphabetOrder> gw_language_check(const Automaton& d, std::size_t max_sigma = kMaxOrderedAlphabet,
                                                      const WdfaOptions& opt = {}) {
  detail::check_alphabet_size(d, max_sigma);
  const Automaton min_dfa = minimum_dfa(d);
  const WitnessSearch search(min_dfa, SearchCaps::defaults(min_dfa.state_count()));
  std::optional<AlphabetOrder> found;
  detail::for_each_order(min_dfa.alphabet().size(), [&](const std::vector<Symbol>& perm) {
    if (!language_wheeler_under(min_dfa, search, perm, opt)) return false;
    found = detail::names_of(min_dfa.alphabet(), perm);
    return true;
  });
  return found;
}

struct Triple {
  std::size_t a, b, c;  // indices into elements
  bool operator==(const Triple&) const = default;
};

struct BetweennessInstance {
  std::vector<std::string> elements;
  std::vector<Triple> triples;
};

inline constexpr std::size_t kMaxBetweennessElements = 10;

/// Elements distinct, triple members distinct, and k < n^3.
inline void validate(const BetweennessInstance& inst) {
  std::set<std::string> seen;
  for (const auto& y : inst.elements) {
    if (y.empty()) throw Error(ErrorKind::MalformedInstance, "empty element name");
    if (!seen.insert(y).second) throw Error(ErrorKind::MalformedInstance, "duplicate element '" + y + "'");
  }
  const std::size_t n = inst.elements.size();
  for (const Triple& t : inst.triples) {
    if (t.a >= n || t.b >= n || t.c >= n) throw Error(ErrorKind::MalformedInstance, "triple refers to unknown element");
    if (t.a == t.b || t.b == t.c || t.a == t.c)
      throw Error(ErrorKind::MalformedInstance, "elements of a triple must be distinct");
  }
  if (!inst.triples.empty() && inst.triples.size() >= n * n * n)
    throw Error(ErrorKind::MalformedInstance, "too many triples for " + std::to_string(n) + " elements");
}

/// Reads `elements y1 y2 ...` followed by `triple a b c` lines.
inline BetweennessInstance parse_betweenness(std::string_view text) {
  const auto lines = detail::tokenize(text);
  const auto& head = detail::expect_header(lines, 0, "elements");
  BetweennessInstance inst;
  for (std::size_t i = 1; i < head.tokens.size(); ++i) {
    const std::string name(head.tokens[i].text);
    if (std::find(inst.elements.begin(), inst.elements.end(), name) != inst.elements.end())
      throw ParseError(head.number, head.tokens[i].column, "duplicate element '" + name + "'");
    inst.elements.push_back(name);
  }
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& line = lines[li];
    if (line.tokens.front().text != "triple")
      throw ParseError(line.number, line.tokens.front().column,
                       "unexpected keyword '" + std::string(line.tokens.front().text) + "'");
    if (line.tokens.size() != 4) throw ParseError(line.number, 1, "expected 'triple <a> <b> <c>'");
    std::size_t idx[3];
    for (int k = 0; k < 3; ++k) {
      const auto& tok = line.tokens[k + 1];
      auto it = std::find(inst.elements.begin(), inst.elements.end(), tok.text);
      if (it == inst.elements.end())
        throw ParseError(line.number, tok.column, "undefined element '" + std::string(tok.text) + "'");
      idx[k] = static_cast<std::size_t>(it - inst.elements.begin());
    }
    if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2])
      throw ParseError(line.number, 1, "elements of a triple must be distinct");
    inst.triples.push_back({idx[0], idx[1], idx[2]});
  }
  validate(inst);
  return inst;
}

inline std::string serialize_betweenness(const BetweennessInstance& inst) {
  std::ostringstream out;
  out << "elements";
  for (const auto& y : inst.elements) out << ' ' << y;
  out << '\n';
  for (const Triple& t : inst.triples)
    out << "triple " << inst.elements[t.a] << ' ' << inst.elements[t.b] << ' ' << inst.elements[t.c] << '\n';
  return out.str();
}

inline bool satisfies(const BetweennessInstance& inst, const std::vector<std::size_t>& position) {
  for (const Triple& t : inst.triples) {
    const auto pa = position[t.a], pb = position[t.b], pc = position[t.c];
    if (!((pa < pb && pb < pc) || (pa > pb && pb > pc))) return false;
  }
  return true;
}

/// First satisfying total order of the elements (smallest first), trying
/// permutations in lexicographic order, or nullopt.
inline std::optional<std::vector<std::string>> solve_betweenness(const BetweennessInstance& inst) {
  validate(inst);
  const std::size_t n = inst.elements.size();
  if (n > kMaxBetweennessElements)
    throw Error(ErrorKind::TooManyElements,
                std::to_string(n) + " elements, exhaustive search is limited to " +
                    std::to_string(kMaxBetweennessElements));
  std::vector<std::size_t> perm(n), position(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    for (std::size_t i = 0; i < n; ++i) position[perm[i]] = i;
    if (satisfies(inst, position)) {
      std::vector<std::string> order;
      for (std::size_t i : perm) order.push_back(inst.elements[i]);
      return order;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace wheelerkit
