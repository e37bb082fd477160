#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wheelerkit/alphabet.hpp"
#include "wheelerkit/automaton.hpp"
#include "wheelerkit/error.hpp"
#include "wheelerkit/ops.hpp"

namespace wheelerkit {

/// A total order on the states, stored as rank per state.
class WheelerOrder {
 public:
  WheelerOrder() = default;

  /// rank[q] is the position of state q; must be a permutation of 0..n-1.
  explicit WheelerOrder(std::vector<std::size_t> rank) : rank_(std::move(rank)), by_rank_(rank_.size()) {
    std::vector<bool> used(rank_.size(), false);
    for (State q = 0; q < rank_.size(); ++q) {
      if (rank_[q] >= rank_.size() || used[rank_[q]])
        throw Error(ErrorKind::InvalidArgument, "ranking is not a bijection onto 0..n-1");
      used[rank_[q]] = true;
      by_rank_[rank_[q]] = q;
    }
  }

  /// Builds the order listing `states` from smallest to largest.
  static WheelerOrder from_sequence(const std::vector<State>& states) {
    std::vector<std::size_t> rank(states.size(), states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i] >= states.size())
        throw Error(ErrorKind::InvalidArgument, "state id out of range in order sequence");
      rank[states[i]] = i;
    }
    return WheelerOrder(std::move(rank));
  }

  static WheelerOrder identity(std::size_t n) {
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[i] = i;
    return WheelerOrder(std::move(rank));
  }

  std::size_t size() const noexcept { return rank_.size(); }
  std::size_t rank(State q) const { return rank_.at(q); }
  State at(std::size_t r) const { return by_rank_.at(r); }
  const std::vector<std::size_t>& ranks() const noexcept { return rank_; }
  const std::vector<State>& sequence() const noexcept { return by_rank_; }

  bool operator==(const WheelerOrder& other) const { return rank_ == other.rank_; }

 private:
  std::vector<std::size_t> rank_;
  std::vector<State> by_rank_;
};

/// lambda[q] is the common label of the in-edges of q; nullopt stands for
/// the initial marker "#".
using LambdaMap = std::vector<std::optional<Symbol>>;

enum class ViolationKind { InitialHasInEdge, InputInconsistent, ConditionI, ConditionII, OrderContradiction };

inline std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::InitialHasInEdge: return "InitialHasInEdge";
    case ViolationKind::InputInconsistent: return "InputInconsistent";
    case ViolationKind::ConditionI: return "ConditionI";
    case ViolationKind::ConditionII: return "ConditionII";
    case ViolationKind::OrderContradiction: return "OrderContradiction";
  }
  return "?";
}

/// Evidence is a pair of edges for the edge clauses, the offending in-edge
/// for InitialHasInEdge, and the initial state for OrderContradiction.
struct WheelerViolation {
  ViolationKind kind;
  std::vector<Edge> edges;
  std::vector<State> states;
};

inline std::string describe(const Automaton& a, const WheelerViolation& v) {
  auto edge_text = [&](const Edge& e) {
    return "(q" + std::to_string(e.source) + ", " + a.alphabet().name(e.symbol) + ", q" +
           std::to_string(e.target) + ")";
  };
  std::string out = to_string(v.kind);
  if (!v.edges.empty()) {
    out += ":";
    for (const Edge& e : v.edges) out += " " + edge_text(e);
  }
  if (!v.states.empty()) {
    out += " states";
    for (State q : v.states) out += " q" + std::to_string(q);
  }
  return out;
}

/// Lambda labels, or the first state whose in-edges disagree. The initial
/// state must have no in-edges at all.
inline std::variant<LambdaMap, WheelerViolation> input_consistency(const Automaton& a) {
  auto into_initial = a.in(a.initial());
  if (!into_initial.empty())
    return WheelerViolation{ViolationKind::InitialHasInEdge, {into_initial.front()}, {a.initial()}};
  LambdaMap lambda(a.state_count());
  for (State q = 0; q < a.state_count(); ++q) {
    auto in = a.in(q);
    if (in.empty()) continue;
    if (in.front().symbol != in.back().symbol)
      return WheelerViolation{ViolationKind::InputInconsistent, {in.front(), in.back()}, {q}};
    lambda[q] = in.front().symbol;
  }
  return lambda;
}

/// Checks the order against both Wheeler conditions on every pair of edges,
/// in O(E log E). Works for NFAs.
inline std::optional<WheelerViolation> verify_wheeler(const Automaton& a, const WheelerOrder& o) {
  if (o.size() != a.state_count()) throw Error(ErrorKind::InvalidArgument, "order size differs from state count");
  auto into_initial = a.in(a.initial());
  if (!into_initial.empty())
    return WheelerViolation{ViolationKind::InitialHasInEdge, {into_initial.front()}, {a.initial()}};
  if (o.rank(a.initial()) != 0)
    return WheelerViolation{ViolationKind::OrderContradiction, {}, {a.initial(), o.at(0)}};

  const std::size_t sigma = a.alphabet().size();
  std::vector<std::vector<Edge>> by_label(sigma);
  for (const Edge& e : a.edges()) by_label[e.symbol].push_back(e);

  // (i): every target under a smaller label precedes every target under a larger one.
  std::optional<Edge> prev_max;
  for (Symbol s = 0; s < sigma; ++s) {
    if (by_label[s].empty()) continue;
    const auto [lo, hi] = std::minmax_element(by_label[s].begin(), by_label[s].end(),
                                              [&](const Edge& x, const Edge& y) {
                                                return o.rank(x.target) < o.rank(y.target);
                                              });
    if (prev_max && o.rank(prev_max->target) >= o.rank(lo->target))
      return WheelerViolation{ViolationKind::ConditionI, {*prev_max, *lo}, {}};
    prev_max = *hi;
  }

  // (ii): same label, smaller source implies target not larger.
  for (Symbol s = 0; s < sigma; ++s) {
    auto& es = by_label[s];
    std::sort(es.begin(), es.end(), [&](const Edge& x, const Edge& y) {
      return o.rank(x.source) < o.rank(y.source);
    });
    std::optional<Edge> best;  // max target among strictly smaller sources
    std::size_t i = 0;
    while (i < es.size()) {
      std::size_t j = i;
      while (j < es.size() && es[j].source == es[i].source) ++j;
      if (best) {
        for (std::size_t k = i; k < j; ++k) {
          if (o.rank(es[k].target) < o.rank(best->target))
            return WheelerViolation{ViolationKind::ConditionII, {*best, es[k]}, {}};
        }
      }
      for (std::size_t k = i; k < j; ++k)
        if (!best || o.rank(es[k].target) > o.rank(best->target)) best = es[k];
      i = j;
    }
  }
  return std::nullopt;
}

/// Re-evaluates the clause named by a violation on its own evidence; true
/// when the evidence really breaks that clause.
inline bool violation_is_evident(const Automaton& a, const WheelerOrder& o, const WheelerViolation& v) {
  switch (v.kind) {
    case ViolationKind::InitialHasInEdge:
      return v.edges.size() == 1 && v.edges[0].target == a.initial();
    case ViolationKind::InputInconsistent:
      return v.edges.size() == 2 && v.edges[0].target == v.edges[1].target &&
             v.edges[0].symbol != v.edges[1].symbol;
    case ViolationKind::ConditionI: {
      if (v.edges.size() != 2) return false;
      const Edge& e1 = v.edges[0];
      const Edge& e2 = v.edges[1];
      return e1.symbol < e2.symbol && !(o.rank(e1.target) < o.rank(e2.target));
    }
    case ViolationKind::ConditionII: {
      if (v.edges.size() != 2) return false;
      const Edge& e1 = v.edges[0];
      const Edge& e2 = v.edges[1];
      return e1.symbol == e2.symbol && o.rank(e1.source) < o.rank(e2.source) &&
             o.rank(e1.target) > o.rank(e2.target);
    }
    case ViolationKind::OrderContradiction:
      return o.rank(a.initial()) != 0;
  }
  return false;
}

/// For each state, the shortest word reaching it, ties broken co-lex
/// smallest. Unreachable states get nullopt.
inline std::vector<std::optional<Word>> entering_words(const Automaton& d) {
  std::vector<std::optional<Word>> alpha(d.state_count());
  alpha[d.initial()] = Word{};
  std::vector<State> level{d.initial()};
  while (!level.empty()) {
    std::vector<State> next;
    for (State p : level) {
      for (const Edge& e : d.out(p)) {
        if (alpha[e.target] && alpha[e.target]->size() <= alpha[p]->size()) continue;
        Word candidate = *alpha[p];
        candidate.push_back(e.symbol);
        if (!alpha[e.target]) {
          alpha[e.target] = std::move(candidate);
          next.push_back(e.target);
        } else if (colex_compare(candidate, *alpha[e.target]) < 0) {
          alpha[e.target] = std::move(candidate);
        }
      }
    }
    level.swap(next);
  }
  return alpha;
}

/// The only possible Wheeler order of a trimmed DFA: sort states by their
/// entering words co-lexicographically, then verify.
inline std::variant<WheelerOrder, WheelerViolation> dfa_wheeler_order(const Automaton& d) {
  if (!d.deterministic()) throw Error(ErrorKind::NotDeterministic, "dfa_wheeler_order needs a DFA");
  auto lambda = input_consistency(d);
  if (auto* v = std::get_if<WheelerViolation>(&lambda)) return *v;
  const auto alpha = entering_words(d);
  std::vector<State> states(d.state_count());
  for (State q = 0; q < d.state_count(); ++q) {
    if (!alpha[q]) throw Error(ErrorKind::InvalidArgument, "state q" + std::to_string(q) + " is unreachable");
    states[q] = q;
  }
  std::sort(states.begin(), states.end(),
            [&](State x, State y) { return colex_compare(*alpha[x], *alpha[y]) < 0; });
  WheelerOrder order = WheelerOrder::from_sequence(states);
  if (auto v = verify_wheeler(d, order)) return *v;
  return order;
}

struct NotWheeler {
  std::optional<WheelerViolation> violation;  // set when a single clause already rules it out
};

inline constexpr std::size_t kDefaultSearchBudget = 1'000'000;

namespace detail {

/// Backtracking over the relative order of states sharing a lambda label.
class OrderSearch {
 public:
  OrderSearch(const Automaton& a, const LambdaMap& lambda, std::size_t budget)
      : a_(a), n_(a.state_count()), budget_(budget), block_(n_) {
    for (State q = 0; q < n_; ++q) {
      if (q == a.initial()) block_[q] = 0;
      else block_[q] = lambda[q] ? *lambda[q] + 2 : 1;  // label-less states follow q0
    }
  }

  std::optional<WheelerOrder> run() {
    std::vector<std::int8_t> rel(n_ * n_, 0);
    work_.clear();
    for (Symbol s = 0; s < a_.alphabet().size(); ++s) {
      std::vector<Edge> es;
      for (const Edge& e : a_.edges())
        if (e.symbol == s) es.push_back(e);
      for (const Edge& e1 : es)
        for (const Edge& e2 : es)
          if (block_[e1.source] < block_[e2.source] && e1.target != e2.target)
            if (!require_less(rel, e1.target, e2.target)) return std::nullopt;
    }
    if (!propagate(rel)) return std::nullopt;
    return branch(rel);
  }

 private:
  std::int8_t compare(const std::vector<std::int8_t>& rel, State x, State y) const {
    if (x == y) return 0;
    if (block_[x] != block_[y]) return block_[x] < block_[y] ? 1 : -1;
    if (x == a_.initial()) return 1;
    if (y == a_.initial()) return -1;
    return rel[x * n_ + y];
  }

  bool require_less(std::vector<std::int8_t>& rel, State x, State y) {
    const std::int8_t c = compare(rel, x, y);
    if (x == y || c == -1) return false;
    if (c == 1) return true;
    rel[x * n_ + y] = 1;
    rel[y * n_ + x] = -1;
    work_.emplace_back(x, y);
    return true;
  }

  bool propagate(std::vector<std::int8_t>& rel) {
    while (!work_.empty()) {
      auto [x, y] = work_.back();
      work_.pop_back();
      for (State z = 0; z < n_; ++z) {
        if (block_[z] != block_[x]) continue;
        if (compare(rel, z, x) == 1 && !require_less(rel, z, y)) return false;
        if (compare(rel, y, z) == 1 && !require_less(rel, x, z)) return false;
      }
      // x < y pushes their same-label successors apart.
      for (const Edge& e1 : a_.out(x))
        for (const Edge& e2 : a_.out(y, e1.symbol))
          if (e1.target != e2.target && !require_less(rel, e1.target, e2.target)) return false;
      // and forbids predecessors in the opposite order.
      auto in_x = a_.in(x);
      auto in_y = a_.in(y);
      for (const Edge& e1 : in_x)
        for (const Edge& e2 : in_y)
          if (e1.symbol == e2.symbol && e1.source != e2.source && !require_less(rel, e1.source, e2.source))
            return false;
    }
    return true;
  }

  std::optional<WheelerOrder> branch(std::vector<std::int8_t>& rel) {
    if (++nodes_ > budget_)
      throw Error(ErrorKind::SearchBudgetExceeded,
                  "order search exceeded " + std::to_string(budget_) + " nodes");
    for (State x = 0; x < n_; ++x) {
      for (State y = x + 1; y < n_; ++y) {
        if (compare(rel, x, y) != 0) continue;
        for (const bool x_first : {true, false}) {
          std::vector<std::int8_t> next = rel;
          work_.clear();
          const bool ok = x_first ? require_less(next, x, y) : require_less(next, y, x);
          if (ok && propagate(next)) {
            if (auto found = branch(next)) return found;
          }
        }
        return std::nullopt;
      }
    }
    std::vector<State> states(n_);
    for (State q = 0; q < n_; ++q) states[q] = q;
    std::sort(states.begin(), states.end(), [&](State x, State y) { return compare(rel, x, y) == 1; });
    return WheelerOrder::from_sequence(states);
  }

  const Automaton& a_;
  std::size_t n_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<std::size_t> block_;
  std::vector<std::pair<State, State>> work_;
};

}  // namespace detail

/// Searches for a Wheeler order of an arbitrary automaton. Label blocks are
/// fixed by condition (i); inside each block the relative order is found by
/// branching on undecided pairs with propagation of condition (ii) and
/// transitivity. Throws SearchBudgetExceeded after `budget` branch nodes.
inline std::variant<WheelerOrder, NotWheeler> nfa_wheeler_search(const Automaton& a,
                                                                 std::size_t budget = kDefaultSearchBudget) {
  auto lambda = input_consistency(a);
  if (auto* v = std::get_if<WheelerViolation>(&lambda)) return NotWheeler{*v};
  detail::OrderSearch search(a, std::get<LambdaMap>(lambda), budget);
  auto order = search.run();
  if (!order) return NotWheeler{};
  if (auto v = verify_wheeler(a, *order))
    throw Error(ErrorKind::InternalDisagreement, "search produced an order that fails verification: " + describe(a, *v));
  return *order;
}

struct CoherenceCounterexample {
  std::size_t lo, hi;  // ranks, inclusive
  Word word;
  StateSet image;
};

/// Checks that every interval of states maps to an interval (possibly
/// empty) under every word of length at most maxlen.
inline std::optional<CoherenceCounterexample> path_coherence_check(const Automaton& a, const WheelerOrder& o,
                                                                   std::size_t maxlen) {
  const std::size_t n = a.state_count();
  // explored[(lo*n+hi)] = largest remaining depth already explored from that interval
  std::vector<std::ptrdiff_t> explored(n * n, -1);
  std::optional<CoherenceCounterexample> found;
  Word word;

  auto interval_states = [&](std::size_t lo, std::size_t hi) {
    StateSet s;
    for (std::size_t r = lo; r <= hi; ++r) s.push_back(o.at(r));
    std::sort(s.begin(), s.end());
    return s;
  };

  auto visit = [&](auto&& self, std::size_t lo, std::size_t hi, std::size_t remaining, std::size_t start_lo,
                   std::size_t start_hi) -> void {
    if (found || remaining == 0) return;
    auto& seen = explored[lo * n + hi];
    if (seen >= static_cast<std::ptrdiff_t>(remaining)) return;
    seen = static_cast<std::ptrdiff_t>(remaining);
    const StateSet current = interval_states(lo, hi);
    for (Symbol c = 0; c < a.alphabet().size() && !found; ++c) {
      word.push_back(c);
      StateSet image = run_from(a, current, {c});
      if (!image.empty()) {
        std::size_t mn = n, mx = 0;
        for (State q : image) {
          mn = std::min(mn, o.rank(q));
          mx = std::max(mx, o.rank(q));
        }
        if (mx - mn + 1 != image.size()) {
          found = CoherenceCounterexample{start_lo, start_hi, word, std::move(image)};
        } else {
          self(self, mn, mx, remaining - 1, start_lo, start_hi);
        }
      }
      word.pop_back();
    }
  };

  for (std::size_t lo = 0; lo < n && !found; ++lo) {
    for (std::size_t hi = lo; hi < n && !found; ++hi) {
      // An explored entry means no counterexample within that depth, so the
      // table stays valid across start intervals.
      visit(visit, lo, hi, maxlen, lo, hi);
    }
  }
  return found;
}

/// Graphviz rendering; finals are double circles, and an order, when given,
/// is shown as a rank annotation on each node.
inline std::string to_dot(const Automaton& a, const std::optional<WheelerOrder>& order = std::nullopt) {
  std::string out = "digraph automaton {\n  rankdir=LR;\n  start [shape=point];\n";
  for (State q = 0; q < a.state_count(); ++q) {
    out += "  q" + std::to_string(q) + " [shape=" + (a.is_final(q) ? "doublecircle" : "circle");
    out += ", label=\"q" + std::to_string(q);
    if (order) out += "\\nrank " + std::to_string(order->rank(q));
    out += "\"];\n";
  }
  out += "  start -> q" + std::to_string(a.initial()) + ";\n";
  for (const Edge& e : a.edges()) {
    std::string label = a.alphabet().name(e.symbol);
    std::string escaped;
    for (char ch : label) {
      if (ch == '"' || ch == '\\') escaped += '\\';
      escaped += ch;
    }
    out += "  q" + std::to_string(e.source) + " -> q" + std::to_string(e.target) + " [label=\"" + escaped +
           "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace wheelerkit
