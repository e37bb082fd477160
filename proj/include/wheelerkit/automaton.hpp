#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <tuple>
#include <string>
#include <vector>

#include "wheelerkit/alphabet.hpp"
#include "wheelerkit/error.hpp"

namespace wheelerkit {

using State = std::uint32_t;

struct Edge {
  State source;
  Symbol symbol;
  State target;

  auto operator<=>(const Edge&) const = default;
};

/// Finite automaton with a single initial state. Immutable once built: the
/// constructor validates, sorts and deduplicates, and derives the adjacency
/// indices and the deterministic flag.
class Automaton {
 public:
  Automaton(OrderedAlphabet alphabet, std::size_t state_count, State initial,
            std::vector<State> finals, std::vector<Edge> edges)
      : alphabet_(std::move(alphabet)),
        state_count_(state_count),
        initial_(initial),
        finals_(std::move(finals)),
        edges_(std::move(edges)) {
    if (state_count_ == 0) throw Error(ErrorKind::InvalidArgument, "automaton needs at least one state");
    if (initial_ >= state_count_) throw Error(ErrorKind::InvalidArgument, "initial state out of range");
    std::sort(finals_.begin(), finals_.end());
    finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
    for (State f : finals_) {
      if (f >= state_count_) throw Error(ErrorKind::InvalidArgument, "final state out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const Edge& e : edges_) {
      if (e.source >= state_count_ || e.target >= state_count_)
        throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
      if (e.symbol >= alphabet_.size()) throw Error(ErrorKind::InvalidArgument, "edge symbol out of range");
    }
    is_final_.assign(state_count_, false);
    for (State f : finals_) is_final_[f] = true;

    out_offset_.assign(state_count_ + 1, 0);
    for (const Edge& e : edges_) ++out_offset_[e.source + 1];
    for (std::size_t q = 0; q < state_count_; ++q) out_offset_[q + 1] += out_offset_[q];

    in_edges_ = edges_;
    std::sort(in_edges_.begin(), in_edges_.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.target, a.symbol, a.source) < std::tie(b.target, b.symbol, b.source);
    });
    in_offset_.assign(state_count_ + 1, 0);
    for (const Edge& e : in_edges_) ++in_offset_[e.target + 1];
    for (std::size_t q = 0; q < state_count_; ++q) in_offset_[q + 1] += in_offset_[q];

    deterministic_ = true;
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i].source == edges_[i - 1].source && edges_[i].symbol == edges_[i - 1].symbol) {
        deterministic_ = false;
        break;
      }
    }
  }

  const OrderedAlphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return state_count_; }
  State initial() const noexcept { return initial_; }
  const std::vector<State>& finals() const noexcept { return finals_; }
  bool is_final(State q) const { return is_final_.at(q); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool deterministic() const noexcept { return deterministic_; }

  /// Outgoing edges of q, sorted by (symbol, target).
  std::span<const Edge> out(State q) const {
    return {edges_.data() + out_offset_[q], edges_.data() + out_offset_[q + 1]};
  }

  /// Outgoing edges of q labeled a.
  std::span<const Edge> out(State q, Symbol a) const {
    auto all = out(q);
    auto lo = std::lower_bound(all.begin(), all.end(), a,
                               [](const Edge& e, Symbol s) { return e.symbol < s; });
    auto hi = std::upper_bound(lo, all.end(), a, [](Symbol s, const Edge& e) { return s < e.symbol; });
    return {lo, hi};
  }

  /// Incoming edges of q, sorted by (symbol, source).
  std::span<const Edge> in(State q) const {
    return {in_edges_.data() + in_offset_[q], in_edges_.data() + in_offset_[q + 1]};
  }

  std::span<const Edge> in(State q, Symbol a) const {
    auto all = in(q);
    auto lo = std::lower_bound(all.begin(), all.end(), a,
                               [](const Edge& e, Symbol s) { return e.symbol < s; });
    auto hi = std::upper_bound(lo, all.end(), a, [](Symbol s, const Edge& e) { return s < e.symbol; });
    return {lo, hi};
  }

  /// First target of q on a; for a DFA the unique one.
  std::optional<State> next(State q, Symbol a) const {
    auto es = out(q, a);
    if (es.empty()) return std::nullopt;
    return es.front().target;
  }

  /// Same states, initial state, finals and edges, in the same numbering.
  bool identical(const Automaton& other) const {
    return alphabet_ == other.alphabet_ && state_count_ == other.state_count_ &&
           initial_ == other.initial_ && finals_ == other.finals_ && edges_ == other.edges_;
  }

 private:
  OrderedAlphabet alphabet_;
  std::size_t state_count_;
  State initial_;
  std::vector<State> finals_;
  std::vector<Edge> edges_;
  std::vector<bool> is_final_;
  std::vector<std::size_t> out_offset_;
  std::vector<Edge> in_edges_;
  std::vector<std::size_t> in_offset_;
  bool deterministic_ = true;
};

/// The canonical automaton for the empty language: one state, nothing else.
inline Automaton empty_language_automaton(OrderedAlphabet alphabet) {
  return Automaton(std::move(alphabet), 1, 0, {}, {});
}

}  // namespace wheelerkit
