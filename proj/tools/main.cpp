// Batch CLI for the one-sided substitution subshift toolkit.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subshift/bratteli.hpp"
#include "subshift/branchpoints.hpp"
#include "subshift/codings.hpp"
#include "subshift/pipeline.hpp"
#include "subshift/recognition.hpp"
#include "subshift/returns.hpp"
#include "subshift/star.hpp"
#include "subshift/words.hpp"

namespace {

using namespace subshift;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidInput: return 2;
    case ErrorKind::Gate: return 3;
    case ErrorKind::Budget: return 4;
    default: return 5;
  }
}

void write_file(const std::string& path, const std::string& content) {
  // Atomic enough for batch use: write to a sibling then rename.
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) fail(ErrorKind::InvalidInput, "cannot write '" + path + "'");
    out << content;
  }
  std::remove(path.c_str());
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail(ErrorKind::Internal, "rename failed for '" + path + "'");
}

struct GlobalFlags {
  double budget_scale = 1.0;
  int l_max = 64;
  std::string json_out;
  std::uint64_t seed = 0;  // sampling order only; results are order-independent
};

PipelineOptions make_options(const GlobalFlags& g) {
  PipelineOptions opt;
  opt.l_max = g.l_max;
  opt.scale(g.budget_scale);
  return opt;
}

void emit_report(const GlobalFlags& g, const AnalysisReport& rep) {
  std::cout << report_text(rep);
  if (!g.json_out.empty()) write_file(g.json_out, report_json(rep));
}

int run(int argc, char** argv) {
  CLI::App app{"one-sided substitution subshift analyzer"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--budget", g.budget_scale, "scale all windows/budgets by this factor");
  app.add_option("--lmax", g.l_max, "recognizability word-length bound");
  app.add_option("--json", g.json_out, "write the JSON report to this file");
  app.add_option("--seed", g.seed, "sampling-order seed for randomized checks");

  std::string file, candidate, base_word, dot_out, rule_file, emit_out;
  int depth = 5, steps = 500, code_len = 12;

  auto* analyze = app.add_subcommand("analyze", "full pipeline: gates, branch points, tau*/tau1, diagram");
  analyze->add_option("file", file)->required();

  auto* branch = app.add_subcommand("branch-points", "enumerate branch points with degrees");
  branch->add_option("file", file)->required();

  auto* quasi = app.add_subcommand("quasi-invertible", "decide quasi-invertibility");
  quasi->add_option("file", file)->required();

  auto* star = app.add_subcommand("tau-star", "construct tau* (or verify a candidate)");
  star->add_option("file", file)->required();
  star->add_option("--candidate-star", candidate, "substitution file with a candidate tau*");

  auto* induce_cmd = app.add_subcommand("induce", "return words and the induced substitution tau1");
  induce_cmd->add_option("file", file)->required();
  induce_cmd->add_option("--base", base_word, "inducing word (default: u0)");
  induce_cmd->add_option("--emit", emit_out, "write tau1 in substitution format to this file");

  auto* brat = app.add_subcommand("bratteli", "stationary ordered Bratteli diagram");
  brat->add_option("file", file)->required();
  brat->add_option("--dot", dot_out, "write DOT to this file");
  brat->add_option("--depth", depth, "diagram depth");

  auto* orbit = app.add_subcommand("vershik-orbit", "iterate the successor map on truncations");
  orbit->add_option("file", file)->required();
  orbit->add_option("--depth", depth, "truncation depth")->required();
  orbit->add_option("--steps", steps, "maximum steps to print")->required();

  auto* conj = app.add_subcommand("verify-conjugacy", "orbit replay F o sigma = V_B o F");
  conj->add_option("file", file)->required();
  conj->add_option("--depth", depth, "truncation depth");
  conj->add_option("--steps", steps, "orbit steps");

  auto* code = app.add_subcommand("code", "apply a sliding block code");
  code->add_option("file", file)->required();
  code->add_option("--rule", rule_file, "local rule file")->required();
  code->add_option("--length", code_len, "injectivity check length");

  auto* gen = app.add_subcommand("gen", "generate a substitution family member");
  std::vector<int> blocks, spacers;
  int perron_d = 2, perron_lambda = 3, perron_m = 1;
  auto* rank = gen->add_subcommand("rank-one", "tau(0)=0^n1 1^m1 ... 0^nk, tau(1)=1");
  rank->add_option("--blocks", blocks, "0-block exponents n1..nk")->required()->delimiter(',');
  rank->add_option("--spacers", spacers, "1-block exponents m1..m(k-1)")->delimiter(',');
  rank->add_option("--out", emit_out, "write to file instead of stdout");
  auto* perron = gen->add_subcommand("perron", "d-letter family with Perron value lambda^(2m)");
  perron->add_option("--letters", perron_d, "alphabet size d")->required();
  perron->add_option("--lambda", perron_lambda, "base eigenvalue")->required();
  perron->add_option("--power", perron_m, "exponent m")->required();
  perron->add_option("--out", emit_out, "write to file instead of stdout");
  gen->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);
  PipelineOptions opt = make_options(g);

  if (*analyze) {
    AnalysisReport rep = pipeline(load_substitution(file), opt);
    emit_report(g, rep);
    if (!rep.completed()) {
      std::cerr << "pipeline halted: " << rep.halted_at << "\n";
      return 3;
    }
    return 0;
  }

  if (*branch) {
    Substitution tau = load_substitution(file);
    BranchOptions bopt;
    bopt.compare_len = opt.compare_len;
    bopt.budget = opt.budget;
    auto points = branch_points(tau, bopt);
    for (const auto& bp : points) {
      std::cout << bp.limit.equation() << "  degree " << bp.degree << "  prefix "
                << tau.alphabet.format(bp.limit.prefix(24)) << (bp.is_fixed_point ? "  (fixed)" : "")
                << (bp.possibly_equal ? "  (possibly-equal merge)" : "") << "\n";
      for (const auto& e : bp.evidence) std::cout << "    " << e << "\n";
    }
    std::cout << points.size() << " branch point(s)\n";
    return 0;
  }

  if (*quasi) {
    Substitution tau = load_substitution(file);
    BranchOptions bopt;
    bopt.compare_len = opt.compare_len;
    bopt.budget = opt.budget;
    QuasiVerdict v = quasi_invertibility(tau, bopt);
    std::cout << (v.is_quasi_invertible ? "quasi-invertible" : "not quasi-invertible") << " ("
              << v.note << ")";
    if (v.is_quasi_invertible) std::cout << " M=" << v.degree;
    std::cout << "\n";
    return 0;
  }

  if (*star) {
    Substitution tau = load_substitution(file);
    if (!candidate.empty()) {
      Substitution cand = load_substitution(candidate);
      BranchOptions bopt;
      bopt.budget = opt.budget;
      QuasiVerdict v = quasi_invertibility(tau, bopt);
      if (!v.is_quasi_invertible)
        fail(ErrorKind::Gate, "candidate verification needs a quasi-invertible substitution");
      StarCandidateReport rep = verify_star_candidate(tau, cand, v.branch->limit, 2048);
      std::cout << "candidate tau*: fixed-point identity "
                << (rep.fixed_point_ok ? "holds" : "FAILS") << " on a " << rep.verified_prefix
                << "-symbol prefix; left proper: " << (rep.left_proper ? "yes" : "no") << "\n";
      if (!rep.note.empty()) std::cout << rep.note << "\n";
      LanguageEqualityReport le = language_equality(tau, cand, 12, opt.budget);
      std::cout << "language equality at 12: "
                << (le.inconclusive ? "inconclusive" : (le.equal ? "equal" : "DIFFER")) << "\n";
      return rep.fixed_point_ok ? 0 : 3;
    }
    StarResult sr = tau_star(tau);
    std::cout << "s1 = " << tau.alphabet.format(sr.decomposition.s1) << ", power = " << sr.power
              << "\n" << sr.star.format();
    StarIdentityReport ids = verify_star_identities(
        sr.power == 1 ? tau : tau.power(sr.power), sr.star, sr.decomposition.s1, 5, opt.budget);
    std::cout << "identities (n<=5): " << (ids.ok ? "all hold" : ids.counterexample) << "\n";
    return 0;
  }

  if (*induce_cmd) {
    Substitution tau = load_substitution(file);
    LimitWord u = generating_fixed_point(tau);
    Word base = base_word.empty() ? Word(1, u.prefix(1)[0]) : tau.alphabet.parse_word(base_word);
    LimitWord source = u;
    if (!is_prefix(base, u.prefix(std::max<std::size_t>(base.size(), 8)))) {
      BranchOptions bopt;
      bopt.budget = opt.budget;
      QuasiVerdict v = quasi_invertibility(tau, bopt);
      if (v.is_quasi_invertible &&
          is_prefix(base, v.branch->limit.prefix(std::max<std::size_t>(base.size(), 8)))) {
        source = v.branch->limit;
        std::cout << "base not on the fixed point; scanning the branch point instead "
                     "(generalized base)\n";
      } else {
        fail(ErrorKind::InvalidInput, "base word heads neither the fixed point nor the branch point");
      }
    }
    ReturnSystem rs = return_words(tau, source, base, opt.budget);
    std::cout << "return words to [" << tau.alphabet.format(base) << "]:";
    for (const Word& w : rs.words) std::cout << " " << tau.alphabet.format(w);
    std::cout << (rs.certified ? "" : "  (not certified)") << "\n";
    Substitution tau1 = induce(tau, rs);
    std::cout << tau1.format();
    if (!emit_out.empty()) write_file(emit_out, tau1.format());
    return 0;
  }

  if (*brat) {
    Substitution tau = load_substitution(file);
    OrderedBratteli b = from_substitution(tau, depth);
    ExtremalPaths ext = extremal_paths(b);
    std::cout << "depth " << b.depth() << ", " << ext.min_paths.size() << " minimal / "
              << ext.max_paths.size() << " maximal path(s), semi-proper: "
              << (ext.semi_proper ? "yes" : "no") << "\n";
    if (!dot_out.empty()) write_file(dot_out, to_dot(b));
    return 0;
  }

  if (*orbit) {
    Substitution tau = load_substitution(file);
    OrderedBratteli b = from_substitution(tau, depth);
    ExtremalPaths ext = extremal_paths(b);
    // Start at the minimal truncation of the (unique, when semi-proper)
    // minimal path's level-depth vertex.
    if (ext.min_paths.empty()) fail(ErrorKind::Internal, "no minimal path");
    const auto& d = ext.min_paths[0];
    std::string top = d.cycle[static_cast<std::size_t>((depth - 1) % static_cast<int>(d.cycle.size()))];
    int top_idx = 0;
    for (std::size_t v = 0; v < b.vertices[static_cast<std::size_t>(depth)].size(); ++v)
      if (b.vertices[static_cast<std::size_t>(depth)][v] == top) top_idx = static_cast<int>(v);
    PathTruncation p = minimal_truncation(b, depth, top_idx);
    for (int t = 0; t < steps; ++t) {
      std::cout << t << ":";
      for (std::size_t n = 0; n < p.edges.size(); ++n)
        std::cout << " " << b.vertices[n + 1][static_cast<std::size_t>(p.edges[n].vertex)] << "/"
                  << p.edges[n].order;
      std::cout << "\n";
      auto next = successor(b, p);
      if (!next) {
        std::cout << "exhausted (all-maximal; the infinite map wraps to the minimal path)\n";
        break;
      }
      p = *next;
    }
    return 0;
  }

  if (*conj) {
    Substitution tau = load_substitution(file);
    Substitution target = tau;
    std::string which = "tau";
    Classification c = classify(tau);
    BranchOptions bopt;
    bopt.budget = opt.budget;
    QuasiVerdict v = quasi_invertibility(tau, bopt);
    if (!(c.left_proper && v.is_quasi_invertible && v.branch->is_fixed_point)) {
      StarResult sr = tau_star(tau);  // Gate error when not applicable
      target = sr.star;
      which = "tau*";
    }
    OrderedBratteli b = from_substitution(target, depth + 1);
    ConjugacyReport rep = conjugacy_check(target, b, depth, steps, opt.budget);
    std::cout << "conjugacy (" << which << "): depth " << rep.depth << ", " << rep.steps
              << " steps, " << rep.disagreements << " disagreements"
              << (rep.inconclusive ? " (inconclusive: " + rep.note + ")" : "") << "\n";
    return 0;
  }

  if (*code) {
    Substitution tau = load_substitution(file);
    LocalRule rule = load_rule(rule_file, tau.alphabet);
    Word img = coded_fixed_point_prefix(rule, tau, 48, opt.budget);
    std::cout << "Phi(u) prefix: " << rule.target.format(img) << "\n";
    InjectivityVerdict iv = injectivity_check(rule, tau, code_len, opt.budget);
    std::cout << "injectivity at " << iv.len << ": " << (iv.injective ? "injective" : "NOT injective");
    if (iv.witness)
      std::cout << "  witness: " << tau.alphabet.format(iv.witness->first) << " vs "
                << tau.alphabet.format(iv.witness->second);
    std::cout << " (" << iv.words_checked << " words)\n";
    return 0;
  }

  if (*gen) {
    Substitution out;
    if (*rank) {
      out = rank_one(blocks, spacers);
    } else {
      out = perron_construct(perron_d, perron_lambda, perron_m);
    }
    if (emit_out.empty())
      std::cout << out.format();
    else
      write_file(emit_out, out.format());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const subshift::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
}
