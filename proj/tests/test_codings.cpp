#include "doctest.h"

#include <set>

#include "subshift/branchpoints.hpp"
#include "subshift/codings.hpp"
#include "support/test_util.hpp"

using namespace subshift;
namespace tu = subshift::testutil;

namespace {

LocalRule ex15_rule() {
  Substitution tau = tu::load("ex15.sub");
  return load_rule(tu::data_path("ex15.rule"), tau.alphabet);
}

}  // namespace

TEST_CASE("local rule application") {
  Substitution tau = tu::load("ex15.sub");
  LocalRule rule = ex15_rule();
  CHECK(rule.window() == 3);
  CHECK(rule.left_radius == 1);
  CHECK(rule.right_radius == 1);

  // one window: one output letter
  Word one = apply_code(rule, tu::w(tau, "aaa"));
  REQUIRE(one.size() == 1);
  CHECK(rule.target.glyph(one[0]) == "A");

  // u = aabaa aabaa abcab ... codes window by window
  Word u8 = generating_fixed_point(tau).prefix(8);
  Word img = apply_code(rule, u8);
  CHECK(img.size() == 6);
  CHECK(rule.target.format(img.substr(0, 3)) == "dBA");

  CHECK_THROWS_AS(apply_code(rule, tu::w(tau, "ccc")), Error);
  CHECK_THROWS_AS(apply_code(rule, tu::w(tau, "aa")), Error);
}

TEST_CASE("code output commutes with the shift") {
  Substitution tau = tu::load("ex15.sub");
  LocalRule rule = ex15_rule();
  Word w = generating_fixed_point(tau).prefix(64);
  Word img = apply_code(rule, w);
  Word shifted = apply_code(rule, w.substr(1));
  CHECK(img.substr(1) == shifted);
}

TEST_CASE("image language from long words matches the scan of the coded point") {
  Substitution tau = tu::load("ex15.sub");
  LocalRule rule = ex15_rule();
  LanguageTable t = language(tau, generating_fixed_point(tau), 7);
  std::set<Word> via_words;
  for (const Word& w : t.of_length(7)) via_words.insert(apply_code(rule, w));

  std::set<Word> via_scan;
  Word coded = coded_fixed_point_prefix(rule, tau, 4096);
  for (std::size_t p = 0; p + 5 <= coded.size(); ++p) via_scan.insert(coded.substr(p, 5));
  // the orbit scan cannot reach the two-sided-limit words; it must agree on
  // what it sees and the word route must dominate
  for (const Word& w : via_scan) CHECK(via_words.count(w));
  CHECK(via_words.size() >= via_scan.size());
}

TEST_CASE("injectivity of the disambiguated rule") {
  Substitution tau = tu::load("ex15.sub");
  LocalRule rule = ex15_rule();
  InjectivityVerdict v = injectivity_check(rule, tau, 12);
  CHECK(v.injective);
  CHECK(v.words_checked > 0);

  // identity rule
  LocalRule ident;
  ident.source = tau.alphabet;
  ident.target = tau.alphabet;
  ident.left_radius = 0;
  ident.right_radius = 0;
  for (std::size_t a = 0; a < tau.letters(); ++a)
    ident.table[Word(1, static_cast<Letter>(a))] = static_cast<Letter>(a);
  CHECK(injectivity_check(ident, tau, 6).injective);

  // collapsing aba into the same class breaks injectivity with a witness
  LocalRule merged = rule;
  merged.table[tau.alphabet.parse_word("aba")] = merged.table[tau.alphabet.parse_word("aaa")];
  InjectivityVerdict bad = injectivity_check(merged, tau, 12);
  CHECK(!bad.injective);
  REQUIRE(bad.witness.has_value());
  CHECK(apply_code(merged, bad.witness->first) == apply_code(merged, bad.witness->second));
}

TEST_CASE("image branch degrees of the coded fixed point") {
  Substitution tau = tu::load("ex15.sub");
  LocalRule rule = ex15_rule();
  Word phi_u = coded_fixed_point_prefix(rule, tau, 9);
  CHECK(image_branch_degree(rule, tau, phi_u, 14) == 2);

  Letter alpha = *rule.target.find("A");
  Word alpha_phi_u = Word(1, alpha) + phi_u.substr(0, 8);
  CHECK(image_branch_degree(rule, tau, alpha_phi_u, 14) == 2);

  // a point inside an image orbit has a single extension
  Word interior = phi_u.substr(1, 8);
  CHECK(image_branch_degree(rule, tau, interior, 14) == 1);
}

TEST_CASE("rank one substitutions") {
  Substitution chacon = rank_one({2, 1}, {1});
  CHECK(chacon.format() == tu::load("chacon.sub").format());

  Substitution longer = rank_one({2, 2, 1}, {1, 2});
  CHECK(tu::fmt(longer, longer.image(Letter(0))) == "00100110");
  CHECK(longer.image(Letter(0)).size() == 2 + 2 + 1 + 1 + 2);

  CHECK_THROWS_AS(rank_one({}, {}), Error);
  CHECK_THROWS_AS(rank_one({2, 0}, {1}), Error);
  CHECK_THROWS_AS(rank_one({2, 1}, {0}), Error);
  CHECK_THROWS_AS(rank_one({2, 1}, {1, 1}), Error);

  // equal spacers are quasi-invertible, mixed spacers are not
  CHECK(quasi_invertibility(rank_one({2, 1}, {1})).is_quasi_invertible);
  CHECK(!quasi_invertibility(rank_one({2, 1, 1}, {1, 2})).is_quasi_invertible);
}

TEST_CASE("perron family") {
  Substitution p = perron_construct(2, 3, 1);
  CHECK(tu::fmt(p, p.image(Letter(0))) == "111222222");
  CHECK(tu::fmt(p, p.image(Letter(1))) == "111111222");
  auto m = p.composition_matrix();
  for (const auto& row : m) {
    std::uint64_t sum = 0;
    for (auto v : row) sum += v;
    CHECK(sum == 9);  // lambda^(2m)
  }
  QuasiVerdict v = quasi_invertibility(p);
  CHECK(v.is_quasi_invertible);
  CHECK(v.all_branch_points.size() == 1);

  CHECK_THROWS_AS(perron_construct(4, 2, 1), Error);  // lambda^m - d <= 0
}
