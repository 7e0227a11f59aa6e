#include "doctest.h"

#include <random>
#include <set>

#include "subshift/branchpoints.hpp"
#include "support/test_util.hpp"

using namespace subshift;
namespace tu = subshift::testutil;

namespace {

std::vector<Letter> letters(std::initializer_list<int> xs) {
  std::vector<Letter> out;
  for (int x : xs) out.push_back(static_cast<Letter>(x));
  return out;
}

}  // namespace

TEST_CASE("suffix trace with a constant suffix") {
  Substitution ex1 = tu::load("ex1.sub");
  SuffixTrace t = suffix_trace(ex1, letters({0, 1}));
  REQUIRE(t.status == SuffixTrace::Status::Cyclic);
  CHECK(t.cycle_period == 1);
  CHECK(t.constant_suffix());
  for (int k = 1; k <= 5; ++k) CHECK(tu::fmt(ex1, t.suffix_at(k)) == "b");
}

TEST_CASE("suffix trace that fizzles") {
  Substitution ex2 = tu::load("ex2.sub");
  SuffixTrace t = suffix_trace(ex2, letters({1, 2}));  // {b, c}
  REQUIRE(t.status == SuffixTrace::Status::Fizzled);
  CHECK(t.fizzle_reason == SuffixTrace::FizzleReason::EmptySuffix);
  CHECK(t.fizzle_step == 2);
  CHECK(tu::fmt(ex2, t.steps[0].suffix) == "a");
  CHECK(t.steps[1].set == letters({0, 1}));  // {a, b}
  CHECK(t.steps[1].suffix.empty());

  // every other start dies as well
  for (auto a1 : {letters({0, 1}), letters({0, 2}), letters({0, 1, 2})})
    CHECK(suffix_trace(ex2, a1).status == SuffixTrace::Status::Fizzled);
}

TEST_CASE("suffix trace with period two") {
  Substitution ex7 = tu::load("ex7.sub");
  SuffixTrace t = suffix_trace(ex7, letters({1, 2}));  // {b, c}
  REQUIRE(t.status == SuffixTrace::Status::Cyclic);
  CHECK(t.cycle_period == 2);
  for (int k = 1; k <= 6; k += 2) CHECK(tu::fmt(ex7, t.suffix_at(k)) == "cc");
  for (int k = 2; k <= 6; k += 2) CHECK(tu::fmt(ex7, t.suffix_at(k)) == "c");
}

TEST_CASE("trace state space is the subset walk") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Substitution tau = tu::random_substitution(rng);
    std::vector<Letter> all;
    for (std::size_t a = 0; a < tau.letters(); ++a) all.push_back(static_cast<Letter>(a));
    SuffixTrace t = suffix_trace(tau, all);
    CHECK(t.steps.size() <= (std::size_t(1) << tau.letters()));
  }
}

TEST_CASE("dual-path common suffixes agree") {
  Substitution ex1 = tu::load("ex1.sub");
  DualSuffix d2 = common_suffix_S(ex1, letters({0, 1}), 2);
  CHECK(tu::fmt(ex1, d2.direct) == "babb");  // s1 tau(s1)
  CHECK(d2.agree);
  DualSuffix d1 = common_suffix_S(ex1, letters({0, 1}), 1);
  CHECK(tu::fmt(ex1, d1.direct) == "b");

  Substitution ex7 = tu::load("ex7.sub");
  for (int n = 1; n <= 6; ++n) {
    DualSuffix d = common_suffix_S(ex7, letters({1, 2}), n);
    REQUIRE(d.direct_available);
    REQUIRE(d.closed_form_available);
    CHECK(d.agree);
  }
}

TEST_CASE("branch points of the two-letter substitutions") {
  Substitution ex1 = tu::load("ex1.sub");
  auto pts = branch_points(ex1);
  REQUIRE(pts.size() == 1);
  CHECK(!pts[0].is_fixed_point);
  CHECK(pts[0].degree == 2);
  CHECK(pts[0].limit.prepend == tu::w(ex1, "b"));
  CHECK(pts[0].limit.power == 1);
  // b tau(y) = y: the expansion solves its own equation
  Word y = pts[0].limit.prefix(200);
  Word rebuilt = tu::w(ex1, "b") + ex1.apply(y);
  rebuilt.resize(200);
  CHECK(rebuilt == y);
}

TEST_CASE("branch points of the three-letter substitutions") {
  Substitution ex7 = tu::load("ex7.sub");
  auto pts7 = branch_points(ex7);
  REQUIRE(pts7.size() == 2);
  Word p0 = pts7[0].limit.prefix(4096);
  Word p1 = pts7[1].limit.prefix(4096);
  CHECK(p0 != p1);  // distinct within the comparison window
  CHECK(!pts7[0].possibly_equal);
  CHECK(!pts7[1].possibly_equal);

  Substitution ex10 = tu::load("ex10.sub");
  auto pts10 = branch_points(ex10);
  REQUIRE(pts10.size() == 1);
  CHECK(pts10[0].degree == 3);
  Word y = pts10[0].limit.prefix(100);
  Word rebuilt = tu::w(ex10, "c") + ex10.apply(y);
  rebuilt.resize(100);
  CHECK(rebuilt == y);  // c tau(y) = y

  Substitution ex3 = tu::load("ex3.sub");
  auto pts3 = branch_points(ex3);
  REQUIRE(pts3.size() == 2);  // the fixed point and a tau(y) = y
}

TEST_CASE("sigma-preimage counts are window-certified and cycle-consistent") {
  Substitution ex8 = tu::load("ex8.sub");
  LanguageTable t = language(ex8, generating_fixed_point(ex8), 8);
  auto fps = all_fixed_points(ex8, t);
  REQUIRE(fps.size() == 3);

  std::map<std::string, PreimageCount> by_seed;
  for (const auto& fp : fps) by_seed[tu::fmt(ex8, fp.name_seed)] = preimage_count(ex8, fp.point, t);
  // window-certified counts; every counted letter lies on a suffix cycle
  CHECK(by_seed["a"].count == 2);
  CHECK(by_seed["a"].letters == letters({1, 3}));  // b, d
  CHECK(by_seed["b"].count == 2);
  CHECK(by_seed["b"].letters == letters({1, 2}));  // b, c
  CHECK(by_seed["d"].count == 2);
  CHECK(by_seed["d"].letters == letters({2, 3}));  // c, d
  for (const auto& [seed, pc] : by_seed) CHECK(pc.criteria_agree);

  // right and left proper: exactly one preimage
  Substitution proper = parse_substitution("alphabet: a b\na -> aab\nb -> ab\n");
  LanguageTable tp = language(proper, generating_fixed_point(proper), 6);
  auto pp = preimage_count(proper, generating_fixed_point(proper), tp);
  CHECK(pp.count == 1);

  Substitution ex3 = tu::load("ex3.sub");
  LanguageTable t3 = language(ex3, generating_fixed_point(ex3), 6);
  auto p3 = preimage_count(ex3, generating_fixed_point(ex3), t3);
  CHECK(p3.count == 2);
}

TEST_CASE("quasi-invertibility verdicts") {
  CHECK(quasi_invertibility(tu::load("ex1.sub")).is_quasi_invertible);
  CHECK(quasi_invertibility(tu::load("ex1.sub")).degree == 2);

  QuasiVerdict v2 = quasi_invertibility(tu::load("ex2.sub"));
  CHECK(v2.is_quasi_invertible);
  CHECK(v2.branch->is_fixed_point);
  CHECK(v2.degree == 2);

  CHECK(!quasi_invertibility(tu::load("ex7.sub")).is_quasi_invertible);
  CHECK(!quasi_invertibility(tu::load("ex3.sub")).is_quasi_invertible);
  CHECK(!quasi_invertibility(tu::load("morse.sub")).is_quasi_invertible);

  QuasiVerdict v11 = quasi_invertibility(tu::load("ex11.sub"));
  CHECK(v11.is_quasi_invertible);
  CHECK(!v11.branch->is_fixed_point);
}

TEST_CASE("decorated fixed points separate the rank-one family") {
  // equal spacers: only the fixed point branches
  QuasiVerdict qc = quasi_invertibility(tu::load("chacon.sub"));
  CHECK(qc.is_quasi_invertible);
  CHECK(qc.degree == 2);
  CHECK(qc.branch->is_fixed_point);

  // unequal spacers: the spacer-decorated fixed point branches as well
  QuasiVerdict q8 = quasi_invertibility(tu::load("chacon8.sub"));
  CHECK(!q8.is_quasi_invertible);
  CHECK(q8.all_branch_points.size() == 2);
}

TEST_CASE("left proper quasi-invertible with non-fixed branch forces right properness of a power") {
  Substitution tau = tu::load("abb_ab.sub");
  Classification c = classify(tau);
  REQUIRE(c.left_proper);
  QuasiVerdict v = quasi_invertibility(tau);
  REQUIRE(v.is_quasi_invertible);
  REQUIRE(!v.branch->is_fixed_point);
  bool right = false;
  for (std::size_t k = 1; k <= tau.letters() && !right; ++k)
    right = classify(tau.power(static_cast<int>(k))).right_proper;
  CHECK(right);
}

TEST_CASE("tail oracle on the smallest example") {
  Substitution ex1 = tu::load("ex1.sub");
  WnOracle o = wn_oracle(ex1, 1);
  std::set<std::string> tails;
  for (const auto& [w, r] : o.r) tails.insert(tu::fmt(ex1, w));
  CHECK(tails == std::set<std::string>{"ab", "b", "bb"});
  CHECK(o.r.at(tu::w(ex1, "b")) == 2);
  for (const auto& [w, r] : o.r) CHECK(r <= static_cast<int>(ex1.letters()));
}

TEST_CASE("reported non-fixed branch points appear in the tail oracle") {
  for (const auto* name : {"ex1.sub", "ex10.sub", "abb_ab.sub"}) {
    Substitution tau = tu::load(name);
    auto pts = branch_points(tau);
    for (const auto& bp : pts) {
      if (bp.is_fixed_point) continue;
      for (int n = 1; n <= 4; ++n) {
        WnOracle o = wn_oracle(tau, n);
        Word y = bp.limit.prefix(1 << 14);
        bool found = false;
        for (const auto& [w, r] : o.r) {
          if (r >= 2 && w.size() <= y.size() && y.compare(0, w.size(), w) == 0) {
            found = true;
            break;
          }
        }
        CHECK_MESSAGE(found, name, " n=", n);
      }
    }
  }
}

TEST_CASE("branch point prefixes live in the language") {
  for (const auto* name : {"ex1.sub", "ex7.sub", "ex10.sub", "ex11.sub"}) {
    Substitution tau = tu::load(name);
    LanguageTable t = language(tau, generating_fixed_point(tau), 12);
    for (const auto& bp : branch_points(tau)) {
      Word y = bp.limit.prefix(512);
      for (std::size_t p = 0; p + 12 <= y.size(); ++p)
        CHECK(t.contains(WordView(y).substr(p, 12)));
    }
  }
}
