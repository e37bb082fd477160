#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace wk_test;

namespace {

std::vector<std::string> formatted(const OrderedAlphabet& al, const std::vector<Word>& words) {
  std::vector<std::string> out;
  for (const Word& x : words) out.push_back(format_word(al, x));
  return out;
}

TEST(MinWdfa, EnumerationIsColexSorted) {
  const Automaton m = minimize(load_automaton(fixture("fig3a.aut")));
  const PrefixList p = enumerate_prefixes(m, 3);
  EXPECT_EQ(formatted(m.alphabet(), p.words),
            (std::vector<std::string>{"ε", "a", "ac", "acc", "dcc", "dc", "d", "dcf", "df"}));
  EXPECT_EQ(p.depth, 3u);
  for (std::size_t i = 0; i < p.words.size(); ++i) EXPECT_EQ(dfa_run(m, m.initial(), p.words[i]), p.class_of[i]);
}

TEST(MinWdfa, EnumerationCountAtCertifyingDepth) {
  const Automaton m = minimize(load_automaton(fixture("fig3a.aut")));
  // eps, a c^i (i <= 19), d c^i (i <= 19), d c^i f (i <= 18).
  EXPECT_EQ(enumerate_prefixes(m, 20).words.size(), 1u + 20u + 20u + 19u);
  EXPECT_EQ(count_readable_words(m, 20, 1000), 60u);
}

TEST(MinWdfa, EnumerationCapIsEnforced) {
  const Automaton m = minimize(load_automaton(fixture("fig3a.aut")));
  try {
    enumerate_prefixes(m, 20, 59);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InfeasibleEnumeration);
  }
}

TEST(MinWdfa, FingerprintOfFigureThree) {
  const Automaton m = minimize(load_automaton(fixture("fig3a.aut")));
  const Fingerprint fp = compute_fingerprint(enumerate_prefixes(m, 20));
  EXPECT_EQ(formatted(m.alphabet(), fp.representatives),
            (std::vector<std::string>{"ε", "a", "ac", "dc", "d", "df"}));
  EXPECT_EQ(fp.m(), 6u);
}

TEST(MinWdfa, FigureThreeGivesFigureOne) {
  const Wdfa w = build_min_wdfa(load_automaton(fixture("fig3a.aut")));
  EXPECT_EQ(w.automaton.state_count(), 6u);
  EXPECT_TRUE(w.certifying);
  EXPECT_FALSE(verify_wheeler(w.automaton, w.order));
  EXPECT_TRUE(language_equal(w.automaton, load_automaton(fixture("fig3a.aut"))));
  // Figure one's unique Wheeler order is the identity, so order-preserving
  // isomorphism is plain identity of the state-numbered automata.
  EXPECT_TRUE(w.automaton.identical(load_automaton(fixture("fig1.aut"))));
}

TEST(MinWdfa, FigureThreeBIsRefuted) {
  try {
    build_min_wdfa(load_automaton(fixture("fig3b.aut")));
    FAIL();
  } catch (const ConstructionInconsistent& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConstructionInconsistent);
    EXPECT_FALSE(e.beta().empty());
  }
}

TEST(MinWdfa, ShallowDepthIsFlagged) {
  WdfaOptions opt;
  opt.depth = 3;
  const Wdfa w = build_min_wdfa(load_automaton(fixture("fig3a.aut")), opt);
  EXPECT_FALSE(w.certifying);
}

TEST(MinWdfa, CompressedFingerprintEqualsExplicit) {
  std::mt19937 rng(31);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    const Automaton m = minimum_dfa(random_dfa(rng, 1 + rng() % 5, 1 + rng() % 3));
    const std::size_t d = std::min<std::size_t>(certifying_depth(m.state_count()), 4 + rng() % 8);
    if (count_readable_words(m, d, 200001) > 200000) continue;
    const Fingerprint x = compute_fingerprint(enumerate_prefixes(m, d));
    const Fingerprint y = compute_fingerprint_compressed(m, d, kDefaultWordCap);
    ASSERT_EQ(x.representatives, y.representatives) << serialize_automaton(m) << " depth " << d;
    EXPECT_EQ(x.classes, y.classes);
    EXPECT_EQ(x.last, y.last);
    ++compared;
  }
  EXPECT_GT(compared, 200);
}

TEST(MinWdfa, CompressedScanHandlesDeepUnaryLoops) {
  // a* over one letter: 1 + d words, a single class after eps.
  const Automaton a(letters(1), 1, 0, {0}, {{0, 0, 0}});
  const Fingerprint fp = compute_fingerprint_compressed(a, 5000, kDefaultWordCap);
  EXPECT_EQ(fp.m(), 2u);
  EXPECT_EQ(fp.representatives[1], Word{0});
}

// Random DFAs whose language is decided Wheeler by the construction.
std::vector<std::pair<Automaton, Wdfa>> wheeler_corpus(std::uint32_t seed, int tries) {
  std::mt19937 rng(seed);
  std::vector<std::pair<Automaton, Wdfa>> out;
  for (int i = 0; i < tries; ++i) {
    const Automaton d = random_dfa(rng, 1 + rng() % 5, 1 + rng() % 3);
    try {
      Wdfa w = build_min_wdfa(d);
      if (!verify_wheeler(w.automaton, w.order) && language_equal(w.automaton, d)) out.emplace_back(d, std::move(w));
    } catch (const Error&) {
    }
  }
  return out;
}

TEST(MinWdfa, OutputsAreWheelerEquivalentAndSorted) {
  const auto corpus = wheeler_corpus(37, 250);
  ASSERT_GT(corpus.size(), 100u);
  for (const auto& [d, w] : corpus) {
    EXPECT_TRUE(same_language_up_to(d, w.automaton, 6));
    EXPECT_TRUE(w.automaton.deterministic());
    const auto& reps = w.fingerprint.representatives;
    for (std::size_t j = 0; j + 1 < reps.size(); ++j) EXPECT_TRUE(colex_compare(reps[j], reps[j + 1]) < 0);
    for (std::size_t j = 0; j < reps.size(); ++j)
      EXPECT_EQ(dfa_run(w.automaton, 0, reps[j]), std::optional<State>(static_cast<State>(j)));
    for (const Word& cycle : simple_cycle_labels(w.automaton)) EXPECT_TRUE(is_primitive(cycle));
    EXPECT_GE(w.automaton.state_count(), minimize(d).state_count());
  }
}

TEST(MinWdfa, ClassCountIsStableBeyondTheDepthBound) {
  const auto corpus = wheeler_corpus(41, 200);
  for (const auto& [d, w] : corpus) {
    const Automaton m = minimize(d);
    const std::size_t deeper = certifying_depth(m.state_count()) + 3;
    if (count_readable_words(m, deeper, 300001) > 300000) continue;
    EXPECT_EQ(compute_fingerprint(enumerate_prefixes(m, deeper)).m(), w.fingerprint.m());
  }
}

TEST(MinWdfa, RebuildingFromTheOutputIsAFixpoint) {
  for (const auto& [d, w] : wheeler_corpus(43, 150)) {
    const Wdfa again = build_min_wdfa(w.automaton);
    EXPECT_TRUE(again.automaton.identical(w.automaton));
  }
}

TEST(MinWdfa, NoLargerThanAnyKnownWdfa) {
  std::mt19937 rng(47);
  int checked = 0;
  for (int i = 0; i < 80; ++i) {
    const Automaton wnfa = random_wnfa(rng, 2 + rng() % 5, 1 + rng() % 3, 0.35);
    const Automaton d = determinize(wnfa);
    if (!std::holds_alternative<WheelerOrder>(dfa_wheeler_order(d))) continue;
    const Wdfa w = build_min_wdfa(d);
    EXPECT_LE(w.automaton.state_count(), d.state_count());
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

}  // namespace
