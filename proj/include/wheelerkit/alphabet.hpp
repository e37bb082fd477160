#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wheelerkit/error.hpp"

namespace wheelerkit {

/// A symbol is identified by its rank in the owning alphabet, so comparing
/// two symbols numerically is comparing them under the alphabet order.
using Symbol = std::uint32_t;

/// Finite word over an OrderedAlphabet; the empty vector is the empty word.
using Word = std::vector<Symbol>;

/// Label of the initial state in a lambda map. Never a legal symbol.
inline constexpr std::string_view kInitialMarker = "#";

class OrderedAlphabet {
 public:
  OrderedAlphabet() = default;

  /// The listed order is the alphabet order, leftmost smallest.
  explicit OrderedAlphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (Symbol i = 0; i < symbols_.size(); ++i) {
      const std::string& s = symbols_[i];
      if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty symbol token");
      if (s == kInitialMarker)
        throw Error(ErrorKind::InvalidArgument, "'#' is reserved for the initial state label");
      for (char ch : s) {
        if (static_cast<unsigned char>(ch) <= ' ')
          throw Error(ErrorKind::InvalidArgument, "symbol '" + s + "' contains whitespace");
      }
      if (!position_.emplace(s, i).second)
        throw Error(ErrorKind::InvalidArgument, "duplicate symbol '" + s + "'");
    }
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& name(Symbol s) const { return symbols_.at(s); }

  std::optional<Symbol> find(std::string_view token) const {
    auto it = position_.find(token);
    if (it == position_.end()) return std::nullopt;
    return it->second;
  }

  Symbol at(std::string_view token) const {
    auto s = find(token);
    if (!s) throw Error(ErrorKind::InvalidArgument, "unknown symbol '" + std::string(token) + "'");
    return *s;
  }

  bool contains(std::string_view token) const { return find(token).has_value(); }

  /// True when every token is one character long, which lets words be
  /// written and read without separators.
  bool single_char() const {
    return std::all_of(symbols_.begin(), symbols_.end(),
                       [](const std::string& s) { return s.size() == 1; });
  }

  bool operator==(const OrderedAlphabet& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, Symbol, std::less<>> position_;
};

/// Co-lexicographic comparison: compare the reversed words lexicographically.
inline std::strong_ordering colex_compare(const Word& alpha, const Word& beta) {
  auto a = alpha.rbegin();
  auto b = beta.rbegin();
  for (; a != alpha.rend() && b != beta.rend(); ++a, ++b) {
    if (*a != *b) return *a <=> *b;
  }
  return alpha.size() <=> beta.size();
}

struct ColexLess {
  bool operator()(const Word& a, const Word& b) const { return colex_compare(a, b) < 0; }
};

/// alpha is a suffix of beta.
inline bool is_suffix(const Word& alpha, const Word& beta) {
  return alpha.size() <= beta.size() && std::equal(alpha.rbegin(), alpha.rend(), beta.rbegin());
}

/// No shorter nonempty beta and i > 1 with alpha = beta^i.
inline bool is_primitive(const Word& alpha) {
  if (alpha.empty()) throw Error(ErrorKind::InvalidArgument, "primitivity of the empty word");
  const std::size_t n = alpha.size();
  for (std::size_t period = 1; period < n; ++period) {
    if (n % period != 0) continue;
    bool repeats = true;
    for (std::size_t i = period; i < n && repeats; ++i) repeats = alpha[i] == alpha[i - period];
    if (repeats) return false;
  }
  return true;
}

inline Word power(const Word& w, std::size_t k) {
  Word out;
  out.reserve(w.size() * k);
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// Renders a word; tokens are concatenated when the alphabet is
/// single-character and joined with '.' otherwise. The empty word is "ε".
inline std::string format_word(const OrderedAlphabet& alphabet, const Word& w) {
  if (w.empty()) return "ε";
  const bool compact = alphabet.single_char();
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !compact) out += '.';
    out += alphabet.name(w[i]);
  }
  return out;
}

/// Inverse of format_word. Accepts "", "ε" for the empty word, '.' or ' '
/// separated tokens, or (single-character alphabets) bare character runs.
inline Word parse_word(const OrderedAlphabet& alphabet, std::string_view text) {
  Word out;
  if (text.empty() || text == "ε") return out;
  if (text.find_first_of(". ") != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t next = text.find_first_of(". ", pos);
      if (next == std::string_view::npos) next = text.size();
      if (next > pos) out.push_back(alphabet.at(text.substr(pos, next - pos)));
      pos = next + 1;
    }
    return out;
  }
  if (alphabet.single_char()) {
    for (char ch : text) out.push_back(alphabet.at(std::string_view(&ch, 1)));
    return out;
  }
  out.push_back(alphabet.at(text));
  return out;
}

}  // namespace wheelerkit
