#include "doctest.h"

#include <fstream>
#include <sstream>

#include "subshift/pipeline.hpp"
#include "support/test_util.hpp"

using namespace subshift;
namespace tu = subshift::testutil;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file ", path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("pipeline routes") {
  AnalysisReport ex10 = pipeline(tu::load("ex10.sub"));
  CHECK(ex10.completed());
  CHECK(ex10.route == AnalysisReport::Route::ViaStar);
  CHECK(ex10.quasi->degree == 3);
  REQUIRE(ex10.star.has_value());
  CHECK(ex10.star_identities->ok);
  CHECK(ex10.star_language->equal);
  CHECK(ex10.conjugacy->disagreements == 0);

  AnalysisReport fig = pipeline(tu::load("abb_ab.sub"));
  CHECK(fig.completed());
  CHECK(fig.route == AnalysisReport::Route::ViaStar);  // left proper, branch not fixed

  AnalysisReport ex2 = pipeline(tu::load("ex2.sub"));
  CHECK(ex2.completed());
  CHECK(ex2.route == AnalysisReport::Route::Direct);  // left proper, branch fixed

  AnalysisReport chacon = pipeline(tu::load("chacon.sub"));
  CHECK(chacon.completed());
  CHECK(chacon.route == AnalysisReport::Route::Induced);
  CHECK(chacon.tower_edges_added == 0);
  CHECK(chacon.returns->words.size() == 2);
  CHECK(chacon.conjugacy->disagreements == 0);

  AnalysisReport morse = pipeline(tu::load("morse.sub"));
  CHECK(!morse.completed());
  CHECK(morse.halted_at.find("not quasi-invertible") != std::string::npos);
  // documented-failure diagnostics still carry the induced system
  REQUIRE(morse.returns.has_value());
  CHECK(morse.returns->words.size() == 3);
  CHECK(!morse.tau1_report->quasi.is_quasi_invertible);

  AnalysisReport ex7 = pipeline(tu::load("ex7.sub"));
  CHECK(!ex7.completed());
  CHECK(ex7.quasi->all_branch_points.size() == 2);
}

TEST_CASE("stage order never skips a failed gate") {
  // a substitution fixing every letter has no growing seed: the report stops
  // before recognizability
  Substitution ident = parse_substitution("alphabet: a b\na -> a\nb -> b\n");
  AnalysisReport rep = pipeline(ident);
  CHECK(!rep.completed());
  CHECK(!rep.recognizability.has_value());
  CHECK(!rep.quasi.has_value());

  Substitution noninj = parse_substitution("alphabet: a b\na -> ab\nb -> ab\n");
  AnalysisReport rep2 = pipeline(noninj);
  CHECK(!rep2.completed());
  CHECK(rep2.halted_at.find("injective") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const auto* name : {"ex10.sub", "chacon.sub", "morse.sub"}) {
    Substitution tau = tu::load(name);
    std::string a = report_json(pipeline(tau));
    std::string b = report_json(pipeline(tau));
    CHECK(a == b);
  }
}

TEST_CASE("golden reports") {
  for (const auto* name : {"ex10", "chacon", "morse"}) {
    Substitution tau = tu::load(std::string(name) + ".sub");
    std::string got = report_json(pipeline(tau));
    std::string want = slurp(std::string(SUBSHIFT_GOLDEN_DIR) + "/" + name + ".json");
    CHECK_MESSAGE(got == want, "golden mismatch for ", name);
  }
}
