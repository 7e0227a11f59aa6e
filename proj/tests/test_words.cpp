#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "subshift/words.hpp"
#include "support/test_util.hpp"

using namespace subshift;
namespace tu = subshift::testutil;

TEST_CASE("apply concatenates images in order") {
  Substitution tau = tu::load("ex1.sub");  // a -> aab, b -> abb
  CHECK(tu::fmt(tau, tau.apply(tu::w(tau, "ab"))) == "aababb");
  CHECK(tau.apply(Word()).empty());

  Substitution chacon = tu::load("chacon.sub");
  CHECK(tu::fmt(chacon, chacon.apply(tu::w(chacon, "01"))) == "00101");
  CHECK_THROWS_AS(tau.apply(Word(1, Letter(7))), Error);
}

TEST_CASE("iterate agrees with a fold of apply and with the length recurrence") {
  Substitution chacon = tu::load("chacon.sub");
  Word folded = tu::w(chacon, "0");
  for (int i = 0; i < 2; ++i) folded = chacon.apply(folded);
  CHECK(chacon.iterate_letter(Letter(0), 2) == folded);

  CHECK(chacon.iterate_letter(Letter(0), 0) == tu::w(chacon, "0"));

  Substitution morse = tu::load("morse.sub");
  CHECK(tu::fmt(morse, morse.iterate_letter(Letter(0), 2)) == "0110");

  // |tau^n(a)| equals the a-row sum of the n-th composition-matrix power.
  for (const auto* name : {"ex1.sub", "ex10.sub", "chacon.sub", "ex8.sub"}) {
    Substitution tau = tu::load(name);
    for (int n = 0; n <= 8; ++n) {
      auto lens = tau.iterate_lengths(n);
      for (std::size_t a = 0; a < tau.letters(); ++a)
        CHECK(lens[a] == tau.iterate_letter(static_cast<Letter>(a), n, 10'000'000).size());
    }
  }

  CHECK_THROWS_AS(chacon.iterate_letter(Letter(0), 30, 1000), Error);
}

TEST_CASE("apply is a monoid morphism") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Substitution tau = tu::random_substitution(rng);
    Word v = tu::random_word(rng, tau, 8);
    Word u = tu::random_word(rng, tau, 8);
    CHECK(tau.apply(v + u) == tau.apply(v) + tau.apply(u));
  }
}

TEST_CASE("language table of the ten three-letter words") {
  Substitution tau = tu::load("ex15.sub");
  LanguageTable t = language(tau, generating_fixed_point(tau), 3);
  REQUIRE(t.certified);
  std::set<std::string> got;
  for (const Word& w : t.of_length(3)) got.insert(tu::fmt(tau, w));
  std::set<std::string> want = {"aab", "aba", "baa", "aaa", "abc",
                                "bca", "cab", "bac", "aca", "caa"};
  CHECK(got == want);
}

TEST_CASE("language at length 1 is the occurring letters") {
  Substitution tau = tu::load("ex10.sub");
  LanguageTable t = language(tau, generating_fixed_point(tau), 1);
  CHECK(t.of_length(1).size() == 3);
}

TEST_CASE("language matches a brute-force subword scan") {
  Substitution chacon = tu::load("chacon.sub");
  Word big = chacon.iterate_letter(Letter(0), 5);
  std::set<Word> oracle;
  for (std::size_t p = 0; p + 2 <= big.size(); ++p) oracle.insert(big.substr(p, 2));
  LanguageTable t = language(chacon, generating_fixed_point(chacon), 2);
  std::set<Word> got(t.of_length(2).begin(), t.of_length(2).end());
  CHECK(got == oracle);
  // single spacers only: 11 never occurs
  CHECK(!t.contains(tu::w(chacon, "11")));
}

TEST_CASE("language tables are subword-closed and extendable") {
  std::mt19937_64 rng(11);
  int done = 0;
  while (done < 60) {
    Substitution tau = tu::random_seeded_substitution(rng);
    LanguageTable t = language(tau, generating_fixed_point(tau), 5, 1 << 16);
    if (!t.certified) continue;
    ++done;
    for (const Word& w : t.words) {
      for (std::size_t l = 1; l < w.size(); ++l)
        for (std::size_t p = 0; p + l <= w.size(); ++p) CHECK(t.contains(WordView(w).substr(p, l)));
      if (static_cast<int>(w.size()) < t.max_len) {
        bool extends = false;
        for (std::size_t a = 0; a < tau.letters() && !extends; ++a)
          extends = t.contains(w + Word(1, static_cast<Letter>(a)));
        CHECK(extends);
      }
    }
  }
}

TEST_CASE("fixed seeds come from prefix-graph cycles") {
  Substitution ex8 = tu::load("ex8.sub");
  auto pg = prefix_graph(ex8);
  CHECK(pg.next == std::vector<Letter>{1, 0, 0, 3});  // a->b, b->a, c->a, d->d
  auto seeds = fixed_seeds(ex8);
  REQUIRE(seeds.size() == 3);
  CHECK(seeds[0].letter == Letter(0));
  CHECK(seeds[0].period == 2);
  CHECK(seeds[1].letter == Letter(1));
  CHECK(seeds[1].period == 2);
  CHECK(seeds[2].letter == Letter(3));
  CHECK(seeds[2].period == 1);
  for (const auto& s : seeds) CHECK(s.growing);

  Substitution ex7 = tu::load("ex7.sub");
  auto seeds7 = fixed_seeds(ex7);
  REQUIRE(seeds7.size() == 1);
  CHECK(seeds7[0].letter == Letter(0));
  CHECK(seeds7[0].period == 1);

  // left proper: the shared first letter is the single seed
  Substitution ex2 = tu::load("ex2.sub");
  auto seeds2 = fixed_seeds(ex2);
  REQUIRE(seeds2.size() == 1);
  CHECK(seeds2[0].period == 1);
}

TEST_CASE("suffix and prefix graphs and their cycles") {
  Substitution ex3 = tu::load("ex3.sub");
  auto sg = suffix_graph(ex3);
  REQUIRE(sg.cycles.size() == 1);
  CHECK(sg.cycles[0].size() == 2);  // {a, b}
  CHECK(sg.is_on_cycle(Letter(0)));
  CHECK(sg.is_on_cycle(Letter(1)));
  CHECK(!sg.is_on_cycle(Letter(2)));

  Substitution ex8 = tu::load("ex8.sub");
  auto sg8 = suffix_graph(ex8);
  CHECK(sg8.next == std::vector<Letter>{3, 1, 3, 2});  // a->d, b->b, c->d, d->c
  REQUIRE(sg8.cycles.size() == 2);
  CHECK(sg8.cycles[0] == std::vector<Letter>{1});
  std::vector<Letter> cd = sg8.cycles[1];
  std::sort(cd.begin(), cd.end());
  CHECK(cd == std::vector<Letter>{2, 3});

  // constant suffix: single self-loop
  Substitution right_proper = parse_substitution("alphabet: a b\na -> ab\nb -> bb\n");
  auto sgr = suffix_graph(right_proper);
  REQUIRE(sgr.cycles.size() == 1);
  CHECK(sgr.cycles[0] == std::vector<Letter>{1});
}

TEST_CASE("suffix cycles are the letters that stay suffixes of iterated images") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    Substitution tau = tu::random_substitution(rng, 5, 4);
    auto sg = suffix_graph(tau);
    std::set<Letter> brute;
    for (std::size_t b = 0; b < tau.letters(); ++b) {
      Letter cur = static_cast<Letter>(b);
      std::set<Letter> seen_at;
      for (int n = 1; n <= 12; ++n) {
        cur = tau.image(cur).back();
        if (n >= 6) seen_at.insert(cur);  // letters in the eventual cycle range
      }
      for (Letter l : seen_at) brute.insert(l);
    }
    std::set<Letter> cyc;
    for (Letter l : sg.cycle_letters()) cyc.insert(l);
    CHECK(brute == cyc);
  }
}

TEST_CASE("classification of the stock substitutions") {
  Substitution chacon = tu::load("chacon.sub");
  Classification c = classify(chacon);
  CHECK(!c.primitive);
  CHECK(!c.left_proper);
  CHECK(!c.right_proper);
  CHECK(c.bounded == std::vector<Letter>{1});
  CHECK(c.growing == std::vector<Letter>{0});
  CHECK(c.minimal_verdict == MinimalVerdict::CertifiedAlmostPeriodicOnWindow);
  CHECK(c.injective_up_to == c.injectivity_bound);

  Substitution morse = tu::load("morse.sub");
  Classification m = classify(morse);
  CHECK(m.primitive);
  CHECK(!m.left_proper);
  CHECK(m.minimal_verdict == MinimalVerdict::PrimitiveHenceMinimal);
  CHECK(m.injective_up_to >= 1);

  // no growing seed anywhere: rejected as non-generating
  Substitution ident = parse_substitution("alphabet: a\na -> a\n");
  CHECK_THROWS_AS(generating_fixed_point(ident), Error);
}

TEST_CASE("limit word expansion is monotone in the budget") {
  Substitution ex1 = tu::load("ex1.sub");
  LimitWord y{ex1, tu::w(ex1, "b"), 1, tu::w(ex1, "b")};
  Word small = y.prefix(64);
  Word big = y.prefix(512);
  CHECK(is_prefix(small, big));
  LimitWord u = generating_fixed_point(ex1);
  CHECK(is_prefix(u.prefix(100), u.prefix(1000)));
}

TEST_CASE("substitution text format round trips") {
  Substitution tau = tu::load("ex10.sub");
  Substitution again = parse_substitution(tau.format());
  CHECK(again.images == tau.images);

  // spaced images and comments
  Substitution spaced = parse_substitution("# comment\nalphabet: x y\nx -> x y\ny -> y x # tail\n");
  CHECK(spaced.images[0].size() == 2);

  CHECK_THROWS_AS(parse_substitution(""), Error);
  CHECK_THROWS_AS(parse_substitution("alphabet: a\n"), Error);
  CHECK_THROWS_AS(parse_substitution("alphabet: a\na -> b\n"), Error);
  CHECK_THROWS_AS(parse_substitution("alphabet: a\na -> \n"), Error);
  CHECK_THROWS_AS(parse_substitution("alphabet: a a\na -> a\n"), Error);
}

TEST_CASE("max_proper_common_suffix truncates to properness") {
  Substitution tau = parse_substitution("alphabet: a b\na -> ab\nb -> aab\n");
  std::vector<Word> imgs = {tau.image(Letter(0)), tau.image(Letter(1))};
  // longest common suffix "ab" equals one image; proper truncation leaves "b"
  CHECK(tu::fmt(tau, max_proper_common_suffix(imgs)) == "b");
}
