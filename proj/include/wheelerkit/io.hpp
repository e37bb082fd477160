#pragma once

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wheelerkit/automaton.hpp"
#include "wheelerkit/error.hpp"

namespace wheelerkit {

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

/// Splits into whitespace-separated tokens, dropping blank and '#' comment lines.
/// Token views point into `text`, which must outlive the result.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  bool more = true;
  while (more) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
      more = false;
    }
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      if (i >= raw.size()) break;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t') ++j;
      line.tokens.push_back({raw.substr(i, j - i), i + 1});
      i = j;
    }
    if (line.tokens.empty() || line.tokens.front().text.front() == '#') continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

inline std::size_t parse_count(const Line& line, const Token& tok) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
    throw ParseError(line.number, tok.column, "expected a non-negative integer, got '" + std::string(tok.text) + "'");
  return value;
}

inline State parse_state(const Line& line, const Token& tok, std::size_t state_count) {
  std::size_t id = parse_count(line, tok);
  if (id >= state_count)
    throw ParseError(line.number, tok.column,
                     "undefined state " + std::string(tok.text) + " (states 0.." +
                         std::to_string(state_count - 1) + ")");
  return static_cast<State>(id);
}

inline const Line& expect_header(const std::vector<Line>& lines, std::size_t index, std::string_view keyword) {
  if (index >= lines.size())
    throw ParseError(lines.empty() ? 1 : lines.back().number + 1, 1,
                     "missing header '" + std::string(keyword) + "'");
  const Line& line = lines[index];
  if (line.tokens.front().text != keyword)
    throw ParseError(line.number, 1,
                     "missing header '" + std::string(keyword) + "' (found '" +
                         std::string(line.tokens.front().text) + "')");
  return line;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << content;
}

}  // namespace detail

/// Reads the line-oriented automaton format:
///
///   alphabet <sym> <sym> ...     listed order is the symbol order
///   states <n>
///   initial <id>
///   final <id> ...               possibly empty
///   edge <src> <sym> <dst>       one per edge
///
/// Lines starting with '#' are comments.
inline Automaton parse_automaton(std::string_view text) {
  const auto lines = detail::tokenize(text);

  const auto& alpha_line = detail::expect_header(lines, 0, "alphabet");
  std::vector<std::string> symbols;
  std::set<std::string_view> seen;
  for (std::size_t i = 1; i < alpha_line.tokens.size(); ++i) {
    const auto& tok = alpha_line.tokens[i];
    if (tok.text == kInitialMarker)
      throw ParseError(alpha_line.number, tok.column, "'#' is reserved and cannot be a symbol");
    if (!seen.insert(tok.text).second)
      throw ParseError(alpha_line.number, tok.column, "duplicate symbol '" + std::string(tok.text) + "'");
    symbols.emplace_back(tok.text);
  }
  OrderedAlphabet alphabet(std::move(symbols));

  const auto& states_line = detail::expect_header(lines, 1, "states");
  if (states_line.tokens.size() != 2)
    throw ParseError(states_line.number, 1, "expected 'states <n>'");
  const std::size_t n = detail::parse_count(states_line, states_line.tokens[1]);
  if (n == 0) throw ParseError(states_line.number, states_line.tokens[1].column, "state count must be positive");

  const auto& initial_line = detail::expect_header(lines, 2, "initial");
  if (initial_line.tokens.size() != 2)
    throw ParseError(initial_line.number, 1, "expected 'initial <id>'");
  const State initial = detail::parse_state(initial_line, initial_line.tokens[1], n);

  const auto& final_line = detail::expect_header(lines, 3, "final");
  std::vector<State> finals;
  for (std::size_t i = 1; i < final_line.tokens.size(); ++i)
    finals.push_back(detail::parse_state(final_line, final_line.tokens[i], n));

  std::vector<Edge> edges;
  std::set<Edge> seen_edges;
  for (std::size_t li = 4; li < lines.size(); ++li) {
    const auto& line = lines[li];
    const auto& head = line.tokens.front();
    if (head.text != "edge")
      throw ParseError(line.number, head.column, "unexpected keyword '" + std::string(head.text) + "'");
    if (line.tokens.size() != 4)
      throw ParseError(line.number, head.column, "expected 'edge <src> <sym> <dst>'");
    const State src = detail::parse_state(line, line.tokens[1], n);
    auto sym = alphabet.find(line.tokens[2].text);
    if (!sym)
      throw ParseError(line.number, line.tokens[2].column,
                       "undefined symbol '" + std::string(line.tokens[2].text) + "'");
    const State dst = detail::parse_state(line, line.tokens[3], n);
    Edge e{src, *sym, dst};
    if (!seen_edges.insert(e).second)
      throw ParseError(line.number, head.column, "duplicate edge");
    edges.push_back(e);
  }
  return Automaton(std::move(alphabet), n, initial, std::move(finals), std::move(edges));
}

/// Emits the format read by parse_automaton. Each comment string becomes a
/// '# ' line ahead of the header.
inline std::string serialize_automaton(const Automaton& a, const std::vector<std::string>& comments = {}) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "alphabet";
  for (const auto& s : a.alphabet().symbols()) out << ' ' << s;
  out << "\nstates " << a.state_count() << "\ninitial " << a.initial() << "\nfinal";
  for (State f : a.finals()) out << ' ' << f;
  out << '\n';
  for (const Edge& e : a.edges())
    out << "edge " << e.source << ' ' << a.alphabet().name(e.symbol) << ' ' << e.target << '\n';
  return out.str();
}

inline Automaton load_automaton(const std::string& path) {
  return parse_automaton(detail::read_file(path));
}

}  // namespace wheelerkit
