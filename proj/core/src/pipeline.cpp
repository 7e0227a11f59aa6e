#include "subshift/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace subshift {

using ordered_json = nlohmann::ordered_json;

void PipelineOptions::scale(double factor) {
  if (factor <= 0) fail(ErrorKind::InvalidInput, "budget scale must be positive");
  auto scale_sz = [&](std::size_t v) {
    return static_cast<std::size_t>(std::max(1.0, std::floor(static_cast<double>(v) * factor)));
  };
  scan = scale_sz(scan);
  budget = scale_sz(budget);
  compare_len = scale_sz(compare_len);
}

AnalysisReport pipeline(const Substitution& tau, const PipelineOptions& opt) {
  tau.validate();
  AnalysisReport rep;
  rep.input = tau;
  rep.options = opt;

  rep.classification = classify(tau, ClassifyOptions{0, 8, opt.budget});
  bool has_seed = false;
  for (const FixedSeed& s : fixed_seeds(tau)) has_seed = has_seed || s.growing;
  if (!has_seed) {
    rep.halted_at = "no generating fixed point (no growing prefix-cycle letter)";
    return rep;
  }
  if (!rep.classification.injective()) {
    rep.halted_at = "not injective on letters (reasonableness fails)";
    return rep;
  }
  if (rep.classification.minimal_verdict == MinimalVerdict::Unknown) {
    rep.halted_at = "minimality not certified on the scan window";
    return rep;
  }

  LimitWord u = generating_fixed_point(tau);
  rep.recognizability = recognizability_check(tau, u, opt.l_max, opt.scan);
  if (rep.recognizability->kind != RecognizabilityVerdict::Kind::RecognizableCertified) {
    rep.halted_at = "recognizability not certified";
    return rep;
  }

  BranchOptions bopt;
  bopt.compare_len = opt.compare_len;
  bopt.budget = opt.budget;
  rep.quasi = quasi_invertibility(tau, bopt);

  auto run_returns = [&](const char* why) {
    if (u.power != 1) return;  // induction needs tau(u_0) to start with u_0
    ReturnSystem rs = return_words(tau, u, Word(1, u.seed[0]), opt.budget);
    if (!rs.certified) return;
    Substitution tau1 = induce(tau, rs);
    rep.returns = rs;
    rep.tau1_report = tau1_properties(tau, tau1, *rep.quasi);
    for (const Word& w : rs.words) rep.tower_heights.push_back(static_cast<int>(w.size()));
    (void)why;
  };

  if (!rep.quasi->is_quasi_invertible) {
    // Documented-failure diagnostics: the induced system may still be of
    // interest (Morse), so report it before halting.
    run_returns("diagnostics");
    std::ostringstream os;
    os << "not quasi-invertible: " << rep.quasi->all_branch_points.size() << " branch points";
    rep.halted_at = os.str();
    return rep;
  }

  const BranchPoint& branch = *rep.quasi->branch;

  if (rep.classification.left_proper && branch.is_fixed_point) {
    rep.route = AnalysisReport::Route::Direct;
    rep.diagram = from_substitution(tau, opt.diagram_depth);
    rep.diagram_of = "tau";
    rep.conjugacy = conjugacy_check(tau, *rep.diagram, opt.conjugacy_depth, opt.conjugacy_steps, opt.budget);
    return rep;
  }

  // Constant-suffix case (possibly after a power): rotate to tau* and apply
  // the left-proper representation to it.
  bool star_ok = false;
  try {
    StarResult sr = tau_star(tau);
    star_ok = true;
    rep.star = sr;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Gate) throw;
  }
  if (star_ok) {
    rep.route = AnalysisReport::Route::ViaStar;
    const Substitution base = rep.star->power == 1 ? tau : tau.power(rep.star->power);
    rep.star_identities =
        verify_star_identities(base, rep.star->star, rep.star->decomposition.s1, 5, opt.budget);
    rep.star_language = language_equality(base, rep.star->star, opt.language_len, opt.budget);
    rep.diagram = from_substitution(rep.star->star, opt.diagram_depth);
    rep.diagram_of = "tau*";
    rep.conjugacy =
        conjugacy_check(rep.star->star, *rep.diagram, opt.conjugacy_depth, opt.conjugacy_steps, opt.budget);
    return rep;
  }

  // General case: induce on [u_0], rotate the induced substitution if its
  // branch point is not fixed, and extend by tower edges.
  rep.route = AnalysisReport::Route::Induced;
  run_returns("pipeline");
  if (!rep.returns) {
    rep.halted_at = "return words did not stabilize (or the seed is not tau-fixed)";
    return rep;
  }
  Substitution tau1 = *rep.returns->tau1;

  Substitution diagram_subst = tau1;
  std::string diagram_name = "tau1";
  if (rep.tau1_report->quasi.is_quasi_invertible &&
      !rep.tau1_report->quasi.branch->is_fixed_point) {
    try {
      StarResult sr1 = tau_star(tau1);
      diagram_subst = sr1.star;
      diagram_name = "tau1*";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Gate) throw;
      rep.halted_at = "tau1 has a non-fixed branch point and no constant-suffix rotation; "
                      "supply a candidate tau* for verification";
      return rep;
    }
  }

  // Tower augmentation: the paper's rank-one count (m-1 edges for m spacers)
  // corresponds to max(h-2, 0) extra edges for a height-h return word.
  rep.tower_edges_added = 0;
  for (std::size_t j = 0; j < rep.tower_heights.size(); ++j) {
    int extra = std::max(rep.tower_heights[static_cast<std::size_t>(j)] - 2, 0);
    rep.tower_edges_per_vertex[std::to_string(j + 1)] = extra;
    rep.tower_edges_added += extra;
  }

  OrderedBratteli base_diagram = from_substitution(diagram_subst, opt.diagram_depth);
  rep.conjugacy =
      conjugacy_check(diagram_subst, base_diagram, opt.conjugacy_depth, opt.conjugacy_steps, opt.budget);
  if (diagram_name == "tau1") {
    rep.diagram = add_tower_edges(base_diagram, rep.tower_edges_per_vertex);
    rep.diagram_of = "tau1 + tower edges";
  } else {
    rep.diagram = std::move(base_diagram);
    rep.diagram_of = diagram_name;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization.

namespace {

ordered_json words_json(const Alphabet& alph, const std::vector<Word>& ws) {
  ordered_json out = ordered_json::array();
  for (const Word& w : ws) out.push_back(alph.format(w));
  return out;
}

ordered_json letters_json(const Alphabet& alph, const std::vector<Letter>& ls) {
  ordered_json out = ordered_json::array();
  for (Letter a : ls) out.push_back(alph.glyph(a));
  return out;
}

ordered_json substitution_json(const Substitution& tau) {
  ordered_json out;
  ordered_json alph = ordered_json::array();
  for (std::size_t a = 0; a < tau.alphabet.size(); ++a)
    alph.push_back(tau.alphabet.glyph(static_cast<Letter>(a)));
  out["alphabet"] = alph;
  ordered_json imgs;
  for (std::size_t a = 0; a < tau.letters(); ++a)
    imgs[tau.alphabet.glyph(static_cast<Letter>(a))] = tau.alphabet.format(tau.images[a]);
  out["images"] = imgs;
  return out;
}

const char* minimal_str(MinimalVerdict v) {
  switch (v) {
    case MinimalVerdict::PrimitiveHenceMinimal: return "primitive-hence-minimal";
    case MinimalVerdict::CertifiedAlmostPeriodicOnWindow: return "certified-almost-periodic-on-window";
    default: return "unknown";
  }
}

ordered_json classification_json(const Substitution& tau, const Classification& c) {
  ordered_json out;
  out["left_proper"] = c.left_proper;
  out["right_proper"] = c.right_proper;
  out["primitive"] = c.primitive;
  out["growing_letters"] = letters_json(tau.alphabet, c.growing);
  out["bounded_letters"] = letters_json(tau.alphabet, c.bounded);
  out["injective_up_to"] = c.injective_up_to;
  out["injectivity_bound"] = c.injectivity_bound;
  out["minimal_verdict"] = minimal_str(c.minimal_verdict);
  out["window"] = c.window;
  return out;
}

ordered_json recognizability_json(const RecognizabilityVerdict& r) {
  ordered_json out;
  switch (r.kind) {
    case RecognizabilityVerdict::Kind::RecognizableCertified: out["verdict"] = "recognizable-certified"; break;
    case RecognizabilityVerdict::Kind::NotRecognizable: out["verdict"] = "not-recognizable"; break;
    default: out["verdict"] = "inconclusive";
  }
  out["certified_len"] = r.certified_len;
  out["l_max"] = r.l_max;
  out["scan_window"] = r.scan_window;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

ordered_json branch_json(const Substitution& tau, const BranchPoint& bp) {
  ordered_json out;
  out["equation"] = bp.limit.equation();
  out["degree"] = bp.degree;
  out["extensions"] = letters_json(tau.alphabet, bp.extensions);
  out["fixed_point"] = bp.is_fixed_point;
  if (bp.is_fixed_point) {
    out["fixed_seed"] = tau.alphabet.format(bp.fixed_seed);
    out["fixed_power"] = bp.fixed_power;
  }
  out["possibly_equal"] = bp.possibly_equal;
  out["prefix"] = tau.alphabet.format(bp.limit.prefix(32));
  ordered_json ev = ordered_json::array();
  for (const auto& e : bp.evidence) ev.push_back(e);
  out["evidence"] = ev;
  return out;
}

ordered_json quasi_json(const Substitution& tau, const QuasiVerdict& q) {
  ordered_json out;
  out["quasi_invertible"] = q.is_quasi_invertible;
  out["degree"] = q.degree;
  ordered_json arr = ordered_json::array();
  for (const auto& bp : q.all_branch_points) arr.push_back(branch_json(tau, bp));
  out["branch_points"] = arr;
  out["note"] = q.note;
  return out;
}

ordered_json diagram_json(const OrderedBratteli& b) {
  ordered_json out;
  out["depth"] = b.depth();
  ordered_json levels = ordered_json::array();
  for (int n = 0; n <= b.depth(); ++n) {
    ordered_json lvl;
    ordered_json names = ordered_json::array();
    for (const auto& v : b.vertices[static_cast<std::size_t>(n)]) names.push_back(v);
    lvl["vertices"] = names;
    if (n >= 1) {
      ordered_json edges;
      for (std::size_t v = 0; v < b.vertices[static_cast<std::size_t>(n)].size(); ++v) {
        ordered_json in = ordered_json::array();
        for (int s : b.edges_in[static_cast<std::size_t>(n)][v])
          in.push_back(b.vertices[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(s)]);
        edges[b.vertices[static_cast<std::size_t>(n)][v]] = in;
      }
      lvl["edges_in"] = edges;
    }
    levels.push_back(lvl);
  }
  out["levels"] = levels;
  return out;
}

}  // namespace

std::string report_json(const AnalysisReport& rep) {
  const Alphabet& alph = rep.input.alphabet;
  ordered_json j;
  j["schema"] = 1;
  j["input"] = substitution_json(rep.input);
  {
    ordered_json o;
    o["l_max"] = rep.options.l_max;
    o["scan"] = rep.options.scan;
    o["budget"] = rep.options.budget;
    o["compare_len"] = rep.options.compare_len;
    o["language_len"] = rep.options.language_len;
    o["diagram_depth"] = rep.options.diagram_depth;
    o["conjugacy_depth"] = rep.options.conjugacy_depth;
    o["conjugacy_steps"] = rep.options.conjugacy_steps;
    j["options"] = o;
  }
  j["classify"] = classification_json(rep.input, rep.classification);
  if (rep.recognizability) j["recognizability"] = recognizability_json(*rep.recognizability);
  if (rep.quasi) j["quasi_invertibility"] = quasi_json(rep.input, *rep.quasi);

  switch (rep.route) {
    case AnalysisReport::Route::Halted: j["route"] = "halted"; break;
    case AnalysisReport::Route::Direct: j["route"] = "direct"; break;
    case AnalysisReport::Route::ViaStar: j["route"] = "via-tau-star"; break;
    case AnalysisReport::Route::Induced: j["route"] = "induced"; break;
  }
  if (!rep.halted_at.empty()) j["halted_at"] = rep.halted_at;

  if (rep.star) {
    ordered_json s;
    s["power"] = rep.star->power;
    s["s1"] = alph.format(rep.star->decomposition.s1);
    s["substitution"] = substitution_json(rep.star->star);
    if (rep.star_identities) {
      ordered_json ids;
      ids["ok"] = rep.star_identities->ok;
      ids["n_max"] = rep.star_identities->n_max;
      ids["identity1"] = rep.star_identities->identity1;
      ids["identity2"] = rep.star_identities->identity2;
      ids["identity3"] = rep.star_identities->identity3;
      if (!rep.star_identities->counterexample.empty())
        ids["counterexample"] = rep.star_identities->counterexample;
      s["identities"] = ids;
    }
    if (rep.star_language) {
      ordered_json le;
      le["equal"] = rep.star_language->equal;
      le["inconclusive"] = rep.star_language->inconclusive;
      le["len"] = rep.star_language->len;
      s["language_equality"] = le;
    }
    j["tau_star"] = s;
  }

  if (rep.returns) {
    ordered_json r;
    r["base"] = alph.format(rep.returns->base);
    r["words"] = words_json(alph, rep.returns->words);
    r["certified"] = rep.returns->certified;
    r["window"] = rep.returns->window;
    if (rep.returns->tau1) r["tau1"] = substitution_json(*rep.returns->tau1);
    if (rep.tau1_report) {
      ordered_json t;
      t["classify"] = classification_json(*rep.returns->tau1, rep.tau1_report->classification);
      t["recognizability"] = recognizability_json(rep.tau1_report->recognizability);
      t["quasi_invertibility"] = quasi_json(*rep.returns->tau1, rep.tau1_report->quasi);
      t["left_proper_power"] = rep.tau1_report->left_proper_power;
      t["degree_consistent"] = rep.tau1_report->degree_consistent;
      t["note"] = rep.tau1_report->note;
      r["tau1_report"] = t;
    }
    j["returns"] = r;
  }

  if (rep.tower_edges_added >= 0) {
    ordered_json t;
    ordered_json hs = ordered_json::array();
    for (int h : rep.tower_heights) hs.push_back(h);
    t["heights"] = hs;
    t["edges_added"] = rep.tower_edges_added;
    ordered_json pv;
    for (const auto& [k, v] : rep.tower_edges_per_vertex) pv[k] = v;
    t["edges_per_vertex"] = pv;
    j["tower"] = t;
  }

  if (rep.diagram) {
    j["diagram_of"] = rep.diagram_of;
    j["diagram"] = diagram_json(*rep.diagram);
  }
  if (rep.conjugacy) {
    ordered_json c;
    c["depth"] = rep.conjugacy->depth;
    c["steps"] = rep.conjugacy->steps;
    c["disagreements"] = rep.conjugacy->disagreements;
    c["inconclusive"] = rep.conjugacy->inconclusive;
    if (!rep.conjugacy->note.empty()) c["note"] = rep.conjugacy->note;
    j["conjugacy"] = c;
  }
  return j.dump(2) + "\n";
}

std::string report_text(const AnalysisReport& rep) {
  const Alphabet& alph = rep.input.alphabet;
  std::ostringstream os;
  os << "substitution:\n" << rep.input.format();
  const Classification& c = rep.classification;
  os << "classify: left_proper=" << (c.left_proper ? "yes" : "no")
     << " right_proper=" << (c.right_proper ? "yes" : "no")
     << " primitive=" << (c.primitive ? "yes" : "no")
     << " injective_up_to=" << c.injective_up_to << "/" << c.injectivity_bound
     << " minimal=" << minimal_str(c.minimal_verdict) << "\n";
  if (rep.recognizability) {
    os << "recognizability: ";
    switch (rep.recognizability->kind) {
      case RecognizabilityVerdict::Kind::RecognizableCertified:
        os << "certified at L=" << rep.recognizability->certified_len;
        break;
      case RecognizabilityVerdict::Kind::NotRecognizable:
        os << "NOT recognizable (witness chain of length " << rep.recognizability->witnesses.size() << ")";
        break;
      default: os << "inconclusive";
    }
    os << " [window " << rep.recognizability->scan_window << "]\n";
  }
  if (rep.quasi) {
    os << "quasi-invertible: " << (rep.quasi->is_quasi_invertible ? "yes" : "no");
    if (rep.quasi->is_quasi_invertible) os << " (M=" << rep.quasi->degree << ")";
    os << "\n";
    for (const auto& bp : rep.quasi->all_branch_points) {
      os << "  branch point: " << bp.limit.equation() << "  degree " << bp.degree << "  ["
         << alph.format(bp.limit.prefix(24)) << "...]";
      if (bp.is_fixed_point) os << "  (fixed point)";
      if (bp.possibly_equal) os << "  (possibly-equal merge)";
      os << "\n";
    }
  }
  if (!rep.halted_at.empty()) os << "halted: " << rep.halted_at << "\n";
  if (rep.star) {
    os << "tau*: power=" << rep.star->power << " s1=" << alph.format(rep.star->decomposition.s1) << "\n"
       << rep.star->star.format();
    if (rep.star_identities)
      os << "star identities (n<=" << rep.star_identities->n_max
         << "): " << (rep.star_identities->ok ? "all hold" : rep.star_identities->counterexample) << "\n";
    if (rep.star_language)
      os << "language equality at " << rep.star_language->len << ": "
         << (rep.star_language->inconclusive ? "inconclusive" : (rep.star_language->equal ? "equal" : "DIFFER"))
         << "\n";
  }
  if (rep.returns) {
    os << "return words to [" << alph.format(rep.returns->base) << "]:";
    for (const Word& w : rep.returns->words) os << " " << alph.format(w);
    os << (rep.returns->certified ? "" : "  (not certified)") << "\n";
    if (rep.returns->tau1) os << "tau1:\n" << rep.returns->tau1->format();
    if (rep.tau1_report) os << "tau1: " << rep.tau1_report->note << "\n";
  }
  if (rep.tower_edges_added >= 0)
    os << "tower edges added: " << rep.tower_edges_added << "\n";
  if (rep.diagram) os << "diagram: " << rep.diagram_of << " (depth " << rep.diagram->depth() << ")\n";
  if (rep.conjugacy) {
    os << "conjugacy check: depth " << rep.conjugacy->depth << ", " << rep.conjugacy->steps
       << " steps, " << rep.conjugacy->disagreements << " disagreements";
    if (rep.conjugacy->inconclusive) os << " (inconclusive: " << rep.conjugacy->note << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace subshift
