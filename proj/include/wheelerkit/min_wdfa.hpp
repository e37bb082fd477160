#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wheelerkit/alphabet.hpp"
#include "wheelerkit/automaton.hpp"
#include "wheelerkit/error.hpp"
#include "wheelerkit/ops.hpp"
#include "wheelerkit/wheeler.hpp"

namespace wheelerkit {

/// Bounded prefix set in co-lex order, with the min-DFA state and last
/// symbol of every word (nullopt for the empty word).
struct PrefixList {
  std::vector<Word> words;
  std::size_t depth = 0;
  std::vector<State> class_of;
  std::vector<std::optional<Symbol>> last_sym;
};

/// One representative per run, in co-lex order.
struct Fingerprint {
  std::vector<Word> representatives;
  std::vector<State> classes;
  std::vector<std::optional<Symbol>> last;
  std::size_t depth = 0;

  std::size_t m() const noexcept { return representatives.size(); }
};

/// Depth that suffices for every class representative, n + n^2.
inline std::size_t certifying_depth(std::size_t n) { return n + n * n; }

inline constexpr std::uint64_t kDefaultWordCap = 10'000'000;
/// Above this many words the fingerprint is computed without materializing
/// the prefix list.
inline constexpr std::uint64_t kExplicitWordLimit = std::uint64_t{1} << 18;

/// Number of readable words of length at most d, saturating at `limit`.
inline std::uint64_t count_readable_words(const Automaton& d_aut, std::size_t d, std::uint64_t limit) {
  std::vector<std::uint64_t> ways(d_aut.state_count(), 0), next(d_aut.state_count(), 0);
  ways[d_aut.initial()] = 1;
  std::uint64_t total = 1;
  auto add = [&](std::uint64_t x, std::uint64_t y) { return x > limit - std::min(limit, y) ? limit : x + y; };
  for (std::size_t len = 1; len <= d && total < limit; ++len) {
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    for (State q = 0; q < d_aut.state_count(); ++q) {
      if (ways[q] == 0) continue;
      for (const Edge& e : d_aut.out(q)) {
        next[e.target] = add(next[e.target], ways[q]);
        any = true;
      }
    }
    if (!any) break;
    ways.swap(next);
    for (std::uint64_t w : ways) total = add(total, w);
  }
  return std::min(total, limit);
}

/// All readable words of length at most d, sorted co-lexicographically.
inline PrefixList enumerate_prefixes(const Automaton& min_dfa, std::size_t d,
                                     std::uint64_t word_cap = kDefaultWordCap) {
  if (!min_dfa.deterministic()) throw Error(ErrorKind::NotDeterministic, "prefix enumeration needs a DFA");
  const std::uint64_t count = count_readable_words(min_dfa, d, word_cap + 1);
  if (count > word_cap)
    throw Error(ErrorKind::InfeasibleEnumeration,
                "more than " + std::to_string(word_cap) + " readable words of length <= " + std::to_string(d));
  std::vector<std::pair<Word, State>> found;
  found.reserve(count);
  Word word;
  auto walk = [&](auto&& self, State q) -> void {
    found.emplace_back(word, q);
    if (word.size() == d) return;
    for (const Edge& e : min_dfa.out(q)) {
      word.push_back(e.symbol);
      self(self, e.target);
      word.pop_back();
    }
  };
  walk(walk, min_dfa.initial());
  std::sort(found.begin(), found.end(),
            [](const auto& x, const auto& y) { return colex_compare(x.first, y.first) < 0; });
  PrefixList out;
  out.depth = d;
  out.words.reserve(found.size());
  for (auto& [w, q] : found) {
    out.class_of.push_back(q);
    out.last_sym.push_back(w.empty() ? std::nullopt : std::optional<Symbol>(w.back()));
    out.words.push_back(std::move(w));
  }
  return out;
}

/// Splits the sorted list into maximal runs of equal (class, last symbol)
/// and keeps one word per run: the shortest, earliest among equals.
inline Fingerprint compute_fingerprint(const PrefixList& p) {
  Fingerprint fp;
  fp.depth = p.depth;
  for (std::size_t i = 0; i < p.words.size(); ++i) {
    const bool new_run = i == 0 || p.class_of[i] != p.class_of[i - 1] || p.last_sym[i] != p.last_sym[i - 1];
    if (new_run) {
      fp.representatives.push_back(p.words[i]);
      fp.classes.push_back(p.class_of[i]);
      fp.last.push_back(p.last_sym[i]);
    } else if (p.words[i].size() < fp.representatives.back().size()) {
      fp.representatives.back() = p.words[i];
    }
  }
  return fp;
}

namespace detail {

/// Same runs as compute_fingerprint, without listing the words. The sorted
/// list is a pre-order walk of the trie of reversed words; a subtree only
/// depends on the map p -> delta(p, word) and on the remaining depth, so
/// subtree run summaries are memoized on that pair.
class CompressedScan {
 public:
  struct Run {
    State cls;
    Word ext;  // shortest word of the run is ext . (subtree root word)
  };
  using Summary = std::vector<Run>;

  CompressedScan(const Automaton& d, std::uint64_t work_cap) : d_(d), work_cap_(work_cap) {}

  Fingerprint scan(std::size_t depth) {
    Fingerprint fp;
    fp.depth = depth;
    fp.representatives.push_back({});
    fp.classes.push_back(d_.initial());
    fp.last.push_back(std::nullopt);
    if (depth == 0) return fp;
    Transform id(d_.state_count());
    for (State p = 0; p < d_.state_count(); ++p) id[p] = p;
    for (Symbol c = 0; c < d_.alphabet().size(); ++c) {
      Transform t = prepend(id, c);
      if (dead(t)) continue;
      const Summary& sub = solve(t, depth - 1);
      for (const Run& r : sub) {
        Word w = r.ext;
        w.push_back(c);
        fp.representatives.push_back(std::move(w));
        fp.classes.push_back(r.cls);
        fp.last.push_back(c);
      }
    }
    return fp;
  }

 private:
  static constexpr State kNone = std::numeric_limits<State>::max();
  using Transform = std::vector<State>;  // p -> delta(p, word), kNone if undefined

  Transform prepend(const Transform& t, Symbol c) const {
    Transform out(t.size(), kNone);
    for (State p = 0; p < t.size(); ++p) {
      auto q = d_.next(p, c);
      if (q) out[p] = t[*q];
    }
    return out;
  }

  static bool dead(const Transform& t) {
    return std::all_of(t.begin(), t.end(), [](State q) { return q == kNone; });
  }

  void charge(std::size_t units) {
    work_ += units;
    if (work_ > work_cap_)
      throw Error(ErrorKind::InfeasibleEnumeration,
                  "compressed prefix scan exceeded " + std::to_string(work_cap_) + " work units");
  }

  static void append(Summary& out, State cls, Word ext) {
    if (!out.empty() && out.back().cls == cls) {
      if (ext.size() < out.back().ext.size()) out.back().ext = std::move(ext);
      return;
    }
    out.push_back({cls, std::move(ext)});
  }

  const Summary& solve(const Transform& t, std::size_t remaining) {
    auto key = std::make_pair(t, remaining);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Summary out;
    if (t[d_.initial()] != kNone) append(out, t[d_.initial()], {});
    if (remaining > 0) {
      for (Symbol c = 0; c < d_.alphabet().size(); ++c) {
        Transform child = prepend(t, c);
        if (dead(child)) continue;
        const Summary& sub = solve(child, remaining - 1);
        charge(sub.size());
        for (const Run& r : sub) {
          Word ext = r.ext;
          ext.push_back(c);
          append(out, r.cls, std::move(ext));
        }
      }
    }
    charge(1);
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  const Automaton& d_;
  std::uint64_t work_cap_;
  std::uint64_t work_ = 0;
  std::map<std::pair<Transform, std::size_t>, Summary> memo_;
};

}  // namespace detail

/// Fingerprint at depth d computed by the memoized trie scan; agrees with
/// compute_fingerprint(enumerate_prefixes(...)) word for word.
inline Fingerprint compute_fingerprint_compressed(const Automaton& min_dfa, std::size_t d,
                                                  std::uint64_t work_cap = kDefaultWordCap) {
  if (!min_dfa.deterministic()) throw Error(ErrorKind::NotDeterministic, "prefix scan needs a DFA");
  return detail::CompressedScan(min_dfa, work_cap).scan(d);
}

/// Raised when a transition of the fingerprint automaton cannot be resolved.
/// Under the Wheeler hypothesis this cannot happen, so callers read it as
/// evidence that the language is not Wheeler.
class ConstructionInconsistent : public Error {
 public:
  ConstructionInconsistent(Word beta, Symbol c, const std::string& what)
      : Error(ErrorKind::ConstructionInconsistent, what), beta_(std::move(beta)), symbol_(c) {}
  const Word& beta() const noexcept { return beta_; }
  Symbol symbol() const noexcept { return symbol_; }

 private:
  Word beta_;
  Symbol symbol_;
};

struct Wdfa {
  Automaton automaton;
  WheelerOrder order;  // states are numbered by rank, so this is the identity
  Fingerprint fingerprint;
  bool certifying = true;  // false when built below the n + n^2 depth
};

enum class FingerprintStrategy { Auto, Explicit, Compressed };

struct WdfaOptions {
  std::optional<std::size_t> depth;  // defaults to n + n^2
  std::uint64_t word_cap = kDefaultWordCap;
  FingerprintStrategy strategy = FingerprintStrategy::Auto;
};

/// Assembles the automaton on the fingerprint: states are representatives,
/// targets of beta_j . c are found by binary search among them.
inline Automaton assemble_wdfa(const Automaton& min_dfa, const Fingerprint& fp) {
  const std::size_t m = fp.m();
  if (m == 0 || !fp.representatives.front().empty())
    throw Error(ErrorKind::InvalidArgument, "fingerprint must start with the empty word");
  std::vector<State> finals;
  std::vector<Edge> edges;
  Word probe;
  for (State j = 0; j < m; ++j) {
    const State cls = fp.classes[j];
    if (min_dfa.is_final(cls)) finals.push_back(j);
    for (const Edge& e : min_dfa.out(cls)) {
      const Symbol c = e.symbol;
      const State target_cls = e.target;
      probe = fp.representatives[j];
      probe.push_back(c);
      const auto it = std::lower_bound(fp.representatives.begin(), fp.representatives.end(), probe, ColexLess{});
      const std::size_t idx = static_cast<std::size_t>(it - fp.representatives.begin());
      auto matches = [&](std::size_t s) { return fp.classes[s] == target_cls && fp.last[s] == c; };
      std::optional<std::size_t> target;
      if (idx < m && fp.representatives[idx] == probe) {
        target = idx;
      } else if (idx == 0) {
        if (matches(0)) target = 0;  // probe precedes beta_1
      } else if (idx == m) {
        if (matches(m - 1)) target = m - 1;  // probe follows beta_m
      } else if (matches(idx - 1)) {
        target = idx - 1;
      } else if (matches(idx)) {
        target = idx;
      }
      if (!target)
        throw ConstructionInconsistent(fp.representatives[j], c,
                                       "no neighbouring representative matches " +
                                           format_word(min_dfa.alphabet(), probe));
      edges.push_back({j, c, static_cast<State>(*target)});
    }
  }
  return Automaton(min_dfa.alphabet(), m, 0, std::move(finals), std::move(edges));
}

/// Fingerprint with the strategy chosen by the options.
inline Fingerprint fingerprint_of(const Automaton& min_dfa, const WdfaOptions& opt) {
  const std::size_t d = opt.depth.value_or(certifying_depth(min_dfa.state_count()));
  FingerprintStrategy strategy = opt.strategy;
  if (strategy == FingerprintStrategy::Auto) {
    const std::uint64_t limit = std::min(opt.word_cap, kExplicitWordLimit);
    strategy = count_readable_words(min_dfa, d, limit + 1) <= limit ? FingerprintStrategy::Explicit
                                                                    : FingerprintStrategy::Compressed;
  }
  if (strategy == FingerprintStrategy::Explicit) return compute_fingerprint(enumerate_prefixes(min_dfa, d, opt.word_cap));
  return compute_fingerprint_compressed(min_dfa, d, opt.word_cap);
}

/// Minimum WDFA of L(min_dfa). The input is minimized first, so any DFA is
/// accepted. Throws ConstructionInconsistent when a transition cannot be
/// resolved; a successful return is not by itself a proof of Wheelerness
/// unless the caller verifies it.
inline Wdfa build_min_wdfa(const Automaton& dfa, const WdfaOptions& opt = {}) {
  const Automaton min_dfa = minimize(dfa);
  Fingerprint fp = fingerprint_of(min_dfa, opt);
  Automaton a = assemble_wdfa(min_dfa, fp);
  const bool certifying = fp.depth >= certifying_depth(min_dfa.state_count());
  WheelerOrder order = WheelerOrder::identity(a.state_count());
  return Wdfa{std::move(a), std::move(order), std::move(fp), certifying};
}

}  // namespace wheelerkit
