#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wheelerkit/alphabet.hpp"
#include "wheelerkit/automaton.hpp"
#include "wheelerkit/error.hpp"
#include "wheelerkit/gw.hpp"
#include "wheelerkit/io.hpp"
#include "wheelerkit/language.hpp"
#include "wheelerkit/min_wdfa.hpp"
#include "wheelerkit/ops.hpp"
#include "wheelerkit/reductions.hpp"
#include "wheelerkit/wheeler.hpp"

namespace wheelerkit::cli {

enum Exit : int { kPositive = 0, kNegative = 1, kBudget = 2, kInputError = 3 };

struct CommandResult {
  int exit_code = kPositive;
  std::string text;
  std::vector<std::pair<std::string, std::string>> fields;

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }

  /// Human text, then "---" and one "key: value" line per field.
  std::string render() const {
    std::string out = text;
    if (!out.empty() && out.back() != '\n') out += '\n';
    if (!fields.empty()) {
      out += "---\n";
      for (const auto& [k, v] : fields) out += k + ": " + v + "\n";
    }
    return out;
  }
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline std::string elapsed_since(Clock::time_point start) {
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, "time: %.3f ms", ms);
  return buf;
}

inline std::string state_name(State q) { return "q" + std::to_string(q); }

inline std::string join_states(const std::vector<State>& qs) {
  std::string out;
  for (State q : qs) out += (out.empty() ? "" : " ") + state_name(q);
  return out;
}

inline Edge to_original(const Edge& e, const std::vector<State>& original) {
  return {original[e.source], e.symbol, original[e.target]};
}

inline WheelerViolation to_original(WheelerViolation v, const std::vector<State>& original) {
  for (Edge& e : v.edges) e = to_original(e, original);
  for (State& q : v.states) q = original[q];
  return v;
}

inline void report_violation(CommandResult& r, const Automaton& input, const WheelerViolation& v) {
  r.exit_code = kNegative;
  r.text += "not Wheeler: " + describe(input, v) + "\n";
  r.add("verdict", "NotWheeler");
  r.add("violation", to_string(v.kind));
  std::string evidence;
  for (const Edge& e : v.edges)
    evidence += (evidence.empty() ? "" : "; ") + state_name(e.source) + " " + input.alphabet().name(e.symbol) + " " +
                state_name(e.target);
  for (State q : v.states) evidence += (evidence.empty() ? "" : "; ") + state_name(q);
  r.add("evidence", evidence);
}

inline void report_order(CommandResult& r, const WheelerOrder& order, const std::vector<State>& original) {
  std::vector<State> seq;
  for (State q : order.sequence()) seq.push_back(original[q]);
  r.text += "Wheeler; order (smallest first):\n";
  for (State q : seq) r.text += state_name(q) + "\n";
  r.add("verdict", "Wheeler");
  r.add("order", join_states(seq));
}

inline void note_trim(CommandResult& r, const Automaton& input, const TrimResult& t) {
  if (t.automaton.state_count() != input.state_count() || t.automaton.edges().size() != input.edges().size())
    r.text += "note: trimmed to " + std::to_string(t.automaton.state_count()) + " useful states\n";
}

inline SearchCaps parse_caps(const std::string& spec, SearchCaps caps) {
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "cap '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoull(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "cap '" + item + "' needs a positive integer");
    }
    if (value == 0) throw Error(ErrorKind::InvalidArgument, "cap '" + key + "' must be positive");
    if (key == "gamma") caps.gamma_bound = value;
    else if (key == "cycle") caps.cycle_len_cap = value;
    else if (key == "pump") caps.pump_cap = value;
    else if (key == "paths") caps.path_count_cap = value;
    else throw Error(ErrorKind::InvalidArgument, "unknown cap '" + key + "'");
  }
  return caps;
}

inline std::string caps_text(const SearchCaps& c) {
  return "gamma=" + std::to_string(c.gamma_bound) + ",cycle=" + std::to_string(c.cycle_len_cap) +
         ",pump=" + std::to_string(c.pump_cap) + ",paths=" + std::to_string(c.path_count_cap);
}

inline std::string order_text(const std::vector<std::string>& order) {
  std::string out;
  for (const auto& s : order) out += (out.empty() ? "" : " < ") + s;
  return out;
}

inline void emit_automaton(CommandResult& r, const Automaton& a, const std::string& out_path,
                           const std::vector<std::string>& comments = {}) {
  const std::string body = serialize_automaton(a, comments);
  if (out_path.empty()) {
    r.text += body;
  } else {
    wheelerkit::detail::write_file(out_path, body);
    r.text += "wrote " + out_path + "\n";
    r.add("output", out_path);
  }
}

struct Options {
  std::string file;
  std::string out;
  std::size_t budget = kDefaultSearchBudget;
  bool nfa = false;
  std::string method = "both";
  std::string caps;
  std::optional<std::size_t> depth;
  std::uint64_t word_cap = kDefaultWordCap;
  std::size_t state_cap = kDefaultSubsetCap;
  bool automaton = false;
  bool language = false;
  bool with_order = false;
  std::string reduction;
};

inline CommandResult run_check_dfa(const Options& o) {
  CommandResult r;
  const Automaton input = load_automaton(o.file);
  const TrimResult t = trim_basic_with_map(input);
  if (!t.automaton.deterministic()) throw Error(ErrorKind::NotDeterministic, "input is not deterministic; use check-nfa");
  note_trim(r, input, t);
  const auto result = dfa_wheeler_order(t.automaton);
  if (const auto* order = std::get_if<WheelerOrder>(&result)) report_order(r, *order, t.original_id);
  else report_violation(r, input, to_original(std::get<WheelerViolation>(result), t.original_id));
  return r;
}

inline CommandResult run_check_nfa(const Options& o) {
  CommandResult r;
  const Automaton input = load_automaton(o.file);
  const TrimResult t = trim_basic_with_map(input);
  note_trim(r, input, t);
  const auto result = nfa_wheeler_search(t.automaton, o.budget);
  if (const auto* order = std::get_if<WheelerOrder>(&result)) {
    report_order(r, *order, t.original_id);
  } else if (const auto& nw = std::get<NotWheeler>(result); nw.violation) {
    report_violation(r, input, to_original(*nw.violation, t.original_id));
  } else {
    r.exit_code = kNegative;
    r.text += "not Wheeler: no order of the label blocks satisfies both conditions\n";
    r.add("verdict", "NotWheeler");
    r.add("violation", "none");
  }
  return r;
}

inline CommandResult run_check_lang(const Options& o) {
  CommandResult r;
  const auto start = Clock::now();
  const Automaton input = load_automaton(o.file);
  if (!input.deterministic() && !o.nfa)
    throw Error(ErrorKind::NotDeterministic, "input is not deterministic; pass --nfa");
  Method method;
  if (o.method == "witness") method = Method::WitnessSearch;
  else if (o.method == "construct") method = Method::ConstructVerify;
  else if (o.method == "both") method = Method::Both;
  else throw Error(ErrorKind::InvalidArgument, "unknown method '" + o.method + "'");
  const Automaton dfa = input.deterministic() ? input : minimum_dfa(input, o.state_cap);
  std::optional<SearchCaps> caps;
  if (!o.caps.empty()) caps = parse_caps(o.caps, SearchCaps::defaults(minimize(dfa).state_count()));
  WdfaOptions wopt;
  wopt.depth = o.depth;
  wopt.word_cap = o.word_cap;
  const LanguageVerdict v = is_language_wheeler_dfa(dfa, method, caps, wopt);
  const OrderedAlphabet& alpha = input.alphabet();
  r.add("verdict", to_string(v.status));
  switch (v.status) {
    case LanguageStatus::Wheeler:
      r.exit_code = kPositive;
      r.text += "language is Wheeler; minimum WDFA has " + std::to_string(v.certificate->automaton.state_count()) +
                " states\n";
      r.add("certificate_states", std::to_string(v.certificate->automaton.state_count()));
      if (!o.out.empty()) emit_automaton(r, v.certificate->automaton, o.out);
      break;
    case LanguageStatus::NotWheeler:
      r.exit_code = kNegative;
      r.text += "language is not Wheeler\n";
      if (v.witness) {
        const Witness& w = *v.witness;
        r.text += "witness: mu=" + format_word(alpha, w.mu) + " nu=" + format_word(alpha, w.nu) +
                  " gamma=" + format_word(alpha, w.gamma) + "\n";
        r.add("mu", format_word(alpha, w.mu));
        r.add("nu", format_word(alpha, w.nu));
        r.add("gamma", format_word(alpha, w.gamma));
        r.add("within_bound", check_witness_dfa(v.minimum, w).within_bound ? "yes" : "no");
      }
      if (v.refutation) {
        r.text += "construction: " + *v.refutation + "\n";
        r.add("refutation", "construction");
      }
      break;
    case LanguageStatus::BoundedWheeler:
      r.exit_code = kBudget;
      r.text += "no witness within the search caps; not a proof of Wheelerness\n";
      if (v.refutation) r.text += "construction inconclusive: " + *v.refutation + "\n";
      break;
  }
  r.add("caps", caps_text(v.caps));
  r.text += elapsed_since(start) + "\n";
  return r;
}

inline CommandResult run_min_wdfa(const Options& o) {
  CommandResult r;
  const auto start = Clock::now();
  const Automaton input = load_automaton(o.file);
  const Automaton min_dfa = minimum_dfa(input, o.state_cap);
  WdfaOptions opt;
  opt.depth = o.depth;
  opt.word_cap = o.word_cap;
  const bool certifying = o.depth.value_or(certifying_depth(min_dfa.state_count())) >=
                          certifying_depth(min_dfa.state_count());
  try {
    const Wdfa w = build_min_wdfa(min_dfa, opt);
    std::optional<WheelerViolation> bad = verify_wheeler(w.automaton, w.order);
    const bool same = language_equal(w.automaton, min_dfa);
    if ((bad || !same) && !certifying) {
      r.exit_code = kBudget;
      r.text += "inconclusive: the construction below depth n + n^2 does not verify\n";
      r.add("verdict", "Inconclusive");
      return r;
    }
    if (bad || !same) {
      r.exit_code = kNegative;
      r.text += "language is not Wheeler: " +
                (bad ? "fingerprint automaton fails " + describe(w.automaton, *bad)
                     : std::string("fingerprint automaton recognizes a different language")) +
                "\n";
      r.add("verdict", "NotWheeler");
      return r;
    }
    std::vector<std::string> comments{"minimum WDFA; states in co-lex order of their representatives"};
    for (std::size_t j = 0; j < w.fingerprint.m(); ++j)
      comments.push_back("q" + std::to_string(j) + " = " +
                         format_word(min_dfa.alphabet(), w.fingerprint.representatives[j]));
    if (!w.certifying) {
      comments.push_back("depth " + std::to_string(w.fingerprint.depth) + " is below n + n^2: not certified minimal");
      r.text += "warning: shallow depth, result not certified\n";
    }
    emit_automaton(r, w.automaton, o.out, comments);
    r.text += "minimum WDFA: " + std::to_string(w.automaton.state_count()) + " states\n";
    r.add("verdict", "Wheeler");
    r.add("states", std::to_string(w.automaton.state_count()));
    r.add("depth", std::to_string(w.fingerprint.depth));
    r.add("certified", w.certifying ? "yes" : "no");
  } catch (const ConstructionInconsistent& e) {
    if (!certifying) {
      r.exit_code = kBudget;
      r.text += "inconclusive: the construction below depth n + n^2 is inconsistent\n";
      r.add("verdict", "Inconclusive");
      return r;
    }
    r.exit_code = kNegative;
    r.text += "language is not Wheeler: construction inconsistent at " +
              format_word(min_dfa.alphabet(), e.beta()) + " . " + min_dfa.alphabet().name(e.symbol()) + "\n";
    r.add("verdict", "NotWheeler");
  }
  r.text += elapsed_since(start) + "\n";
  return r;
}

inline CommandResult run_check_gw(const Options& o) {
  CommandResult r;
  if (o.automaton == o.language) throw Error(ErrorKind::InvalidArgument, "pass exactly one of --automaton, --language");
  const Automaton input = load_automaton(o.file);
  std::optional<AlphabetOrder> order;
  if (o.automaton) {
    order = gw_automaton_check(input, o.budget);
  } else {
    if (!input.deterministic() && !o.nfa)
      throw Error(ErrorKind::NotDeterministic, "input is not deterministic; pass --nfa");
    order = gw_language_check(minimum_dfa(input, o.state_cap));
  }
  const std::string what = o.automaton ? "automaton" : "language";
  if (order) {
    r.text += what + " is generalized Wheeler under " + order_text(*order) + "\n";
    r.add("verdict", "GW");
    std::string joined;
    for (const auto& s : *order) joined += (joined.empty() ? "" : " ") + s;
    r.add("order", joined);
  } else {
    r.exit_code = kNegative;
    r.text += what + " is not Wheeler under any alphabet order\n";
    r.add("verdict", "NotGW");
  }
  return r;
}

inline CommandResult run_solve_betweenness(const Options& o) {
  CommandResult r;
  const BetweennessInstance inst = parse_betweenness(wheelerkit::detail::read_file(o.file));
  if (auto order = solve_betweenness(inst)) {
    r.text += "satisfiable: " + order_text(*order) + "\n";
    r.add("verdict", "Sat");
    std::string joined;
    for (const auto& s : *order) joined += (joined.empty() ? "" : " ") + s;
    r.add("order", joined);
  } else {
    r.exit_code = kNegative;
    r.text += "unsatisfiable\n";
    r.add("verdict", "Unsat");
  }
  return r;
}

inline CommandResult run_reduce(const Options& o) {
  CommandResult r;
  std::optional<ReductionReport> rep;
  if (o.reduction == "universality") rep = reduce_universality(load_automaton(o.file));
  else if (o.reduction == "nfa-to-gw") rep = reduce_nfa_wheeler_to_gw(load_automaton(o.file));
  else if (o.reduction == "betweenness")
    rep = reduce_betweenness_to_dfa(parse_betweenness(wheelerkit::detail::read_file(o.file)));
  else throw Error(ErrorKind::InvalidArgument, "unknown reduction '" + o.reduction + "'");
  std::string fresh;
  for (const auto& s : rep->fresh_symbols) fresh += (fresh.empty() ? "" : " ") + s;
  emit_automaton(r, rep->automaton, o.out);
  r.text += "states: " + std::to_string(rep->automaton.state_count()) + " (" + std::to_string(rep->states_added) +
            " added), symbols: " + std::to_string(rep->automaton.alphabet().size()) + " (" +
            std::to_string(rep->symbols_added) + " added)\n";
  r.add("states", std::to_string(rep->automaton.state_count()));
  r.add("states_added", std::to_string(rep->states_added));
  r.add("symbols", std::to_string(rep->automaton.alphabet().size()));
  r.add("symbols_added", std::to_string(rep->symbols_added));
  r.add("fresh", fresh);
  return r;
}

inline CommandResult run_export_dot(const Options& o) {
  CommandResult r;
  const Automaton input = load_automaton(o.file);
  std::optional<WheelerOrder> order;
  if (o.with_order) {
    const TrimResult t = trim_basic_with_map(input);
    if (t.automaton.state_count() != input.state_count())
      throw Error(ErrorKind::InvalidArgument, "--with-order needs a trimmed automaton");
    if (input.deterministic()) {
      auto res = dfa_wheeler_order(input);
      if (auto* w = std::get_if<WheelerOrder>(&res)) order = *w;
    } else {
      auto res = nfa_wheeler_search(input, o.budget);
      if (auto* w = std::get_if<WheelerOrder>(&res)) order = *w;
    }
    if (!order) r.text += "note: no Wheeler order, ranks omitted\n";
  }
  const std::string dot = to_dot(input, order);
  if (o.out.empty()) {
    r.text += dot;
  } else {
    wheelerkit::detail::write_file(o.out, dot);
    r.text += "wrote " + o.out + "\n";
    r.add("output", o.out);
  }
  r.add("ranked", order ? "yes" : "no");
  return r;
}

}  // namespace detail

/// Parses argv (without the program name) and runs one subcommand.
inline CommandResult dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Wheeler automata and languages toolkit", "wheelerkit"};
  app.require_subcommand(1);
  detail::Options o;

  auto file_opt = [&](CLI::App* sub) { sub->add_option("file", o.file, "input file")->required(); };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("-o,--output", o.out, "output file"); };

  auto* check_dfa = app.add_subcommand("check-dfa", "is this DFA Wheeler for its alphabet order");
  file_opt(check_dfa);
  auto* check_nfa = app.add_subcommand("check-nfa", "search a Wheeler order of an NFA");
  file_opt(check_nfa);
  check_nfa->add_option("--budget", o.budget, "search node budget");
  auto* check_lang = app.add_subcommand("check-lang", "is the recognized language Wheeler");
  file_opt(check_lang);
  check_lang->add_flag("--nfa", o.nfa, "accept a nondeterministic input");
  check_lang->add_option("--method", o.method, "witness | construct | both");
  check_lang->add_option("--caps", o.caps, "gamma=N,cycle=N,pump=N,paths=N");
  check_lang->add_option("--depth", o.depth, "prefix depth (default n + n^2)");
  check_lang->add_option("--word-cap", o.word_cap, "prefix enumeration cap");
  check_lang->add_option("--state-cap", o.state_cap, "subset construction cap");
  out_opt(check_lang);
  auto* min_wdfa = app.add_subcommand("min-wdfa", "minimum Wheeler DFA of the recognized language");
  file_opt(min_wdfa);
  out_opt(min_wdfa);
  min_wdfa->add_option("--depth", o.depth, "prefix depth (default n + n^2)");
  min_wdfa->add_option("--word-cap", o.word_cap, "prefix enumeration cap");
  min_wdfa->add_option("--state-cap", o.state_cap, "subset construction cap");
  auto* check_gw = app.add_subcommand("check-gw", "search an alphabet order");
  file_opt(check_gw);
  check_gw->add_flag("--automaton", o.automaton, "order making the automaton Wheeler");
  check_gw->add_flag("--language", o.language, "order making the language Wheeler");
  check_gw->add_flag("--nfa", o.nfa, "accept a nondeterministic input for --language");
  check_gw->add_option("--budget", o.budget, "order search node budget");
  check_gw->add_option("--state-cap", o.state_cap, "subset construction cap");
  auto* solve = app.add_subcommand("solve-betweenness", "exhaustive betweenness solver");
  file_opt(solve);
  auto* reduce = app.add_subcommand("reduce", "build a reduction gadget");
  reduce->add_option("kind", o.reduction, "universality | nfa-to-gw | betweenness")->required();
  file_opt(reduce);
  out_opt(reduce);
  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
  file_opt(dot);
  out_opt(dot);
  dot->add_flag("--with-order", o.with_order, "annotate ranks of a Wheeler order when one exists");
  dot->add_option("--budget", o.budget, "order search node budget");

  CommandResult result;
  if (!args.empty() && !args.front().empty() && args.front().front() != '-' &&
      !app.get_subcommand_no_throw(args.front())) {
    result.exit_code = kInputError;
    result.text = "error: unknown subcommand '" + args.front() + "'\n";
    result.add("error", "usage");
    return result;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.text = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kInputError;
    result.text = std::string("error: ") + e.what() + "\n";
    result.add("error", "usage");
    return result;
  }

  try {
    if (check_dfa->parsed()) return detail::run_check_dfa(o);
    if (check_nfa->parsed()) return detail::run_check_nfa(o);
    if (check_lang->parsed()) return detail::run_check_lang(o);
    if (min_wdfa->parsed()) return detail::run_min_wdfa(o);
    if (check_gw->parsed()) return detail::run_check_gw(o);
    if (solve->parsed()) return detail::run_solve_betweenness(o);
    if (reduce->parsed()) return detail::run_reduce(o);
    if (dot->parsed()) return detail::run_export_dot(o);
  } catch (const Error& e) {
    result.exit_code = e.is_budget() ? kBudget : kInputError;
    result.text = std::string("error: ") + e.what() + "\n";
    result.add("error", to_string(e.kind()));
    return result;
  } catch (const std::exception& e) {
    result.exit_code = kInputError;
    result.text = std::string("error: ") + e.what() + "\n";
    result.add("error", "internal");
    return result;
  }
  result.exit_code = kInputError;
  result.text = "error: no subcommand\n";
  return result;
}

}  // namespace wheelerkit::cli
