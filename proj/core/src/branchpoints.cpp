#include "subshift/branchpoints.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace subshift {

namespace {

std::string letters_str(const Substitution& tau, const std::vector<Letter>& ls) {
  std::string out = "{";
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) out += ",";
    out += tau.alphabet.glyph(ls[i]);
  }
  return out + "}";
}

}  // namespace

const Word& SuffixTrace::suffix_at(int k) const {
  int idx = k;
  int recorded = static_cast<int>(steps.size());
  if (idx > recorded) {
    if (status != Status::Cyclic)
      fail(ErrorKind::Internal, "suffix_at: index beyond a fizzled trace");
    idx = cycle_start + (idx - cycle_start) % cycle_period;
  }
  return steps[static_cast<std::size_t>(idx - 1)].suffix;
}

const std::vector<Letter>& SuffixTrace::set_at(int k) const {
  int idx = k;
  int recorded = static_cast<int>(steps.size());
  if (idx > recorded) {
    if (status != Status::Cyclic)
      fail(ErrorKind::Internal, "set_at: index beyond a fizzled trace");
    idx = cycle_start + (idx - cycle_start) % cycle_period;
  }
  return steps[static_cast<std::size_t>(idx - 1)].set;
}

bool SuffixTrace::constant_suffix() const {
  if (status != Status::Cyclic || steps.empty()) return false;
  for (const Step& s : steps)
    if (s.suffix != steps[0].suffix) return false;
  return true;
}

SuffixTrace suffix_trace(const Substitution& tau, std::vector<Letter> a1) {
  tau.validate();
  if (a1.size() < 2) fail(ErrorKind::InvalidInput, "suffix_trace: |A1| must be >= 2");
  std::sort(a1.begin(), a1.end());
  a1.erase(std::unique(a1.begin(), a1.end()), a1.end());

  SuffixTrace trace;
  trace.a1 = a1;

  // A_k determines s_k and A_{k+1}, so the iteration is a walk on subsets;
  // it either collapses or closes a cycle within 2^|alphabet| steps.
  std::map<std::vector<Letter>, int> seen;
  std::vector<Letter> cur = a1;
  for (int k = 1;; ++k) {
    seen[cur] = k;
    std::vector<Word> images;
    images.reserve(cur.size());
    for (Letter a : cur) images.push_back(tau.image(a));
    Word s = max_proper_common_suffix(images);
    trace.steps.push_back(SuffixTrace::Step{cur, s});
    if (s.empty()) {
      trace.status = SuffixTrace::Status::Fizzled;
      trace.fizzle_reason = SuffixTrace::FizzleReason::EmptySuffix;
      trace.fizzle_step = k;
      return trace;
    }
    std::set<Letter> preds;
    for (Letter a : cur) {
      const Word& img = tau.image(a);
      preds.insert(img[img.size() - s.size() - 1]);
    }
    std::vector<Letter> next(preds.begin(), preds.end());
    if (next.size() < 2) {
      trace.status = SuffixTrace::Status::Fizzled;
      trace.fizzle_reason = SuffixTrace::FizzleReason::PredecessorCollapse;
      trace.fizzle_step = k;
      return trace;
    }
    auto it = seen.find(next);
    if (it != seen.end()) {
      trace.status = SuffixTrace::Status::Cyclic;
      trace.cycle_start = it->second;
      trace.cycle_period = k + 1 - it->second;
      return trace;
    }
    cur = std::move(next);
  }
}

DualSuffix common_suffix_S(const Substitution& tau, const std::vector<Letter>& a1, int n,
                           std::size_t budget) {
  if (n < 1) fail(ErrorKind::InvalidInput, "common_suffix_S: n must be >= 1");
  DualSuffix out;

  std::vector<Word> images;
  try {
    for (Letter a : a1) images.push_back(tau.iterate_letter(a, n, budget));
    out.direct = max_proper_common_suffix(images);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Budget) throw;
    out.direct_available = false;
  }

  SuffixTrace trace = suffix_trace(tau, a1);
  bool have = trace.status == SuffixTrace::Status::Cyclic || trace.fizzle_step >= n;
  // A trace that fizzled by predecessor collapse at step k still defines
  // s_1..s_k; beyond that the product is unavailable.
  if (trace.status == SuffixTrace::Status::Fizzled &&
      trace.fizzle_reason == SuffixTrace::FizzleReason::EmptySuffix && trace.fizzle_step <= n) {
    have = false;
  }
  if (!have && trace.status == SuffixTrace::Status::Fizzled) {
    out.closed_form_available = false;
  } else {
    try {
      Word s;  // S_n = s_n tau(s_{n-1}) ... tau^{n-1}(s_1)
      for (int k = 0; k < n; ++k) {
        Word piece = tau.iterate(trace.suffix_at(n - k), k, budget);
        if (s.size() + piece.size() > budget) fail(ErrorKind::Budget, "common_suffix_S: product exceeds budget");
        s += piece;
      }
      out.closed_form = std::move(s);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Budget) throw;
      out.closed_form_available = false;
    }
  }
  out.agree = !out.direct_available || !out.closed_form_available || out.direct == out.closed_form;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<FixedPointInfo> all_fixed_points(const Substitution& tau, const LanguageTable& table,
                                             int decorated_cap) {
  std::vector<FixedPointInfo> out;
  std::vector<FixedSeed> seeds = fixed_seeds(tau);

  for (const FixedSeed& s : seeds) {
    if (!s.growing) continue;
    FixedPointInfo info;
    info.point = fixed_point(tau, s);
    info.name_seed = Word(1, s.letter);
    info.power = s.period;
    out.push_back(std::move(info));
  }

  // Bounded letters whose q-step image returns to themselves can decorate a
  // tau^q-fixed point from the left: x = b_k ... b_1 . u is again fixed.
  std::size_t n_base = out.size();
  for (std::size_t i = 0; i < n_base; ++i) {
    int q = out[i].power;
    std::vector<Letter> loops;
    for (std::size_t b = 0; b < tau.letters(); ++b) {
      Letter cur = static_cast<Letter>(b);
      bool single = true;
      for (int step = 0; step < q; ++step) {
        if (tau.image(cur).size() != 1) { single = false; break; }
        cur = tau.image(cur)[0];
      }
      if (single && cur == static_cast<Letter>(b)) loops.push_back(static_cast<Letter>(b));
    }
    if (loops.empty()) continue;

    std::size_t probe = static_cast<std::size_t>(table.max_len);
    Word base_prefix = out[i].point.prefix(probe);
    std::vector<Word> frontier{Word()};
    for (int depth = 1; depth <= decorated_cap && !frontier.empty(); ++depth) {
      std::vector<Word> next;
      for (const Word& chain : frontier) {
        for (Letter b : loops) {
          Word longer = Word(1, b) + chain;
          Word probe_word = longer + base_prefix;
          if (probe_word.size() > probe) probe_word.resize(probe);
          if (!table.contains(probe_word)) continue;
          FixedPointInfo info;
          info.decorated = true;
          info.power = q;
          info.name_seed = longer + out[i].name_seed;
          info.point = LimitWord{tau, Word(), q, info.name_seed};
          out.push_back(info);
          next.push_back(std::move(longer));
        }
      }
      frontier = std::move(next);
    }
  }
  return out;
}

PreimageCount preimage_count(const Substitution& tau, const LimitWord& fixed,
                             const LanguageTable& table) {
  PreimageCount out;
  if (table.max_len < 2) fail(ErrorKind::InvalidInput, "preimage_count: table too short");
  Word prefix = fixed.prefix(static_cast<std::size_t>(table.max_len) - 1);
  Letter u0 = prefix[0];

  for (std::size_t a = 0; a < tau.letters(); ++a) {
    Word candidate = Word(1, static_cast<Letter>(a)) + prefix;
    if (table.contains(candidate)) out.letters.push_back(static_cast<Letter>(a));
  }
  out.count = static_cast<int>(out.letters.size());

  // Cycle criterion: alpha on a suffix-graph cycle with alpha u_0 in the
  // language.  Membership propagates around the cycle, so testing alpha
  // itself is equivalent to testing any member.
  FunctionalGraph sg = suffix_graph(tau);
  for (Letter a : sg.cycle_letters()) {
    Word two{a, u0};
    if (table.contains(two)) out.cycle_letters.push_back(a);
  }
  out.criteria_agree = out.cycle_letters == out.letters;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Candidate {
  LimitWord limit;
  std::vector<Letter> extensions;
  bool is_fixed = false;
  Word fixed_seed;
  int fixed_power = 0;
  std::vector<std::string> evidence;
};

// Unfold y = W tau^p(y) to period p*k: W' = W tau^p(W) ... tau^{(k-1)p}(W).
std::optional<Word> unfold_seed(const Substitution& tau, const Word& w, int p, int k,
                                std::size_t cap) {
  Word out;
  for (int i = 0; i < k; ++i) {
    try {
      Word piece = tau.iterate(w, i * p, cap);
      if (out.size() + piece.size() > cap) return std::nullopt;
      out += piece;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Budget) return std::nullopt;
      throw;
    }
  }
  return out;
}

bool provably_equal(const Substitution& tau, const LimitWord& x, const LimitWord& y) {
  if (x.prepend == y.prepend && x.power == y.power && x.seed == y.seed) return true;
  if (x.prepend.empty() || y.prepend.empty()) return false;
  int l = std::lcm(x.power, y.power);
  if (l > 64) return false;
  auto ux = unfold_seed(tau, x.prepend, x.power, l / x.power, 1 << 16);
  auto uy = unfold_seed(tau, y.prepend, y.power, l / y.power, 1 << 16);
  return ux && uy && *ux == *uy;
}

}  // namespace

std::vector<BranchPoint> branch_points(const Substitution& tau, const BranchOptions& opt) {
  tau.validate();
  LimitWord gen = generating_fixed_point(tau);
  LanguageTable table = language(tau, gen, opt.language_len, opt.budget);

  std::vector<Candidate> candidates;

  // Fixed points (including bounded-letter decorations) with >= 2 preimages.
  for (const FixedPointInfo& fp : all_fixed_points(tau, table, opt.decorated_cap)) {
    PreimageCount pc = preimage_count(tau, fp.point, table);
    if (pc.count < 2) continue;
    Candidate c;
    c.limit = fp.point;
    c.extensions = pc.letters;
    c.is_fixed = true;
    c.fixed_seed = fp.name_seed;
    c.fixed_power = fp.power;
    std::ostringstream ev;
    ev << "fixed point '" << tau.alphabet.format(fp.name_seed) << "' (power " << fp.power
       << ") with " << pc.count << " sigma-preimages";
    if (!pc.criteria_agree) ev << " [cycle criterion disagrees with window count]";
    c.evidence.push_back(ev.str());
    candidates.push_back(std::move(c));
  }

  // Cyclic suffix traces, one candidate per cycle phase, in canonical subset
  // order for deterministic reports.
  std::size_t n = tau.letters();
  for (std::size_t mask = 3; mask < (std::size_t(1) << n); ++mask) {
    if (__builtin_popcountll(mask) < 2) continue;
    std::vector<Letter> a1;
    for (std::size_t a = 0; a < n; ++a)
      if (mask & (std::size_t(1) << a)) a1.push_back(static_cast<Letter>(a));
    SuffixTrace trace = suffix_trace(tau, a1);
    if (trace.status != SuffixTrace::Status::Cyclic) continue;
    int p = trace.cycle_period;
    for (int j = 0; j < p; ++j) {
      int k0 = trace.cycle_start + j;
      Word w;  // W = s(k0+p) tau(s(k0+p-1)) ... tau^{p-1}(s(k0+1))
      for (int m = 0; m < p; ++m) w += tau.iterate(trace.suffix_at(k0 + p - m), m, opt.budget);
      Candidate c;
      c.limit = LimitWord{tau, w, p, w};
      c.extensions = trace.set_at(k0 + 1);
      std::ostringstream ev;
      ev << "trace A1=" << letters_str(tau, a1) << " phase " << k0 << ": y = "
         << tau.alphabet.format(w) << " . tau^" << p << "(y)";
      c.evidence.push_back(ev.str());
      candidates.push_back(std::move(c));
    }
  }

  // Dedup: provable equality by equation unfolding first, bounded prefix
  // comparison after.  A trace candidate merging into a fixed point is the
  // fixed-branch case; it additionally needs the tau^k(u0)-prefix witness.
  auto fixed_match_witness = [&](const Word& expansion, const Word& u0_seed) {
    for (int k = 3; k <= 12; ++k) {
      Word img;
      try {
        img = tau.iterate(u0_seed, k, expansion.size());
      } catch (const Error&) {
        return false;
      }
      if (img.size() >= std::min<std::size_t>(64, expansion.size()))
        return is_prefix(WordView(img).substr(0, expansion.size()), expansion);
    }
    return false;
  };

  std::vector<BranchPoint> groups;
  std::vector<Word> group_prefix;
  for (Candidate& c : candidates) {
    Word cp = c.limit.prefix(opt.compare_len, std::max(opt.budget, opt.compare_len));
    bool merged = false;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      std::size_t common = std::min(cp.size(), group_prefix[g].size());
      if (common == 0 || cp.compare(0, common, group_prefix[g], 0, common) != 0) continue;
      BranchPoint& bp = groups[g];
      bool proven = false;
      if (bp.is_fixed_point == c.is_fixed) {
        proven = provably_equal(tau, bp.limit, c.limit);
      } else {
        const Word& seed = bp.is_fixed_point ? bp.fixed_seed : c.fixed_seed;
        const Word& trace_exp = bp.is_fixed_point ? cp : group_prefix[g];
        proven = fixed_match_witness(trace_exp, Word(1, seed[0]));
        if (proven)
          bp.evidence.push_back("trace suffixes acquire tau^k(u0) prefixes (k >= 3): matched fixed point");
      }
      if (c.is_fixed && !bp.is_fixed_point) {
        bp.is_fixed_point = true;
        bp.fixed_seed = c.fixed_seed;
        bp.fixed_power = c.fixed_power;
        bp.limit = c.limit;
      }
      for (Letter e : c.extensions)
        if (std::find(bp.extensions.begin(), bp.extensions.end(), e) == bp.extensions.end())
          bp.extensions.push_back(e);
      for (auto& ev : c.evidence) bp.evidence.push_back(std::move(ev));
      if (!proven) bp.possibly_equal = true;
      merged = true;
      break;
    }
    if (!merged) {
      BranchPoint bp;
      bp.limit = c.limit;
      bp.extensions = c.extensions;
      bp.is_fixed_point = c.is_fixed;
      bp.fixed_seed = c.fixed_seed;
      bp.fixed_power = c.fixed_power;
      bp.evidence = c.evidence;
      groups.push_back(std::move(bp));
      group_prefix.push_back(std::move(cp));
    }
  }
  for (BranchPoint& bp : groups) {
    std::sort(bp.extensions.begin(), bp.extensions.end());
    bp.degree = static_cast<int>(bp.extensions.size());
  }
  return groups;
}

QuasiVerdict quasi_invertibility(const Substitution& tau, const BranchOptions& opt) {
  QuasiVerdict v;
  v.all_branch_points = branch_points(tau, opt);
  v.is_quasi_invertible = v.all_branch_points.size() == 1;
  if (v.is_quasi_invertible) {
    v.branch = v.all_branch_points.front();
    v.degree = v.branch->degree;
  }
  std::ostringstream note;
  note << v.all_branch_points.size() << " branch point(s)";
  bool flagged = false;
  for (const auto& bp : v.all_branch_points) flagged = flagged || bp.possibly_equal;
  if (flagged) note << "; some groups merged by prefix comparison only (possibly-equal)";
  v.note = note.str();
  return v;
}

WnOracle wn_oracle(const Substitution& tau, int n, std::size_t budget) {
  if (n < 1) fail(ErrorKind::InvalidInput, "wn_oracle: n must be >= 1");
  WnOracle out;
  out.n = n;

  std::vector<Word> full;
  std::size_t quadratic = 0;
  for (std::size_t a = 0; a < tau.letters(); ++a) {
    Word w = tau.iterate_letter(static_cast<Letter>(a), n, budget);
    quadratic += w.size() * w.size();
    if (quadratic > 20'000'000)
      fail(ErrorKind::Budget, "wn_oracle: tail set too large for the budget at n=" + std::to_string(n));
    full.push_back(std::move(w));
  }
  std::set<Word> tails;
  for (const Word& w : full)
    for (std::size_t k = 1; k < w.size(); ++k) tails.insert(w.substr(k));

  for (const Word& w : tails) {
    int r = 0;
    for (std::size_t a = 0; a < tau.letters(); ++a)
      if (tails.count(Word(1, static_cast<Letter>(a)) + w)) ++r;
    out.r.emplace(w, r);
  }
  return out;
}

}  // namespace subshift
