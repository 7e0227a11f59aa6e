#include "subshift/star.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "subshift/branchpoints.hpp"

namespace subshift {

StarResult tau_star(const Substitution& tau, int max_power) {
  tau.validate();
  if (max_power <= 0) max_power = static_cast<int>(2 * tau.letters());

  std::vector<Letter> all;
  for (std::size_t a = 0; a < tau.letters(); ++a) all.push_back(static_cast<Letter>(a));

  for (int q = 1; q <= max_power; ++q) {
    Substitution pw = q == 1 ? tau : tau.power(q);
    SuffixTrace trace = suffix_trace(pw, all);
    if (trace.status != SuffixTrace::Status::Cyclic || !trace.constant_suffix()) continue;

    const Word& s1 = trace.steps[0].suffix;
    StarResult out;
    out.power = q;
    out.decomposition.s1 = s1;
    out.star.alphabet = pw.alphabet;
    out.star.images.reserve(pw.letters());
    std::set<Letter> marks;
    for (std::size_t a = 0; a < pw.letters(); ++a) {
      const Word& img = pw.images[a];
      Word stem = img.substr(0, img.size() - s1.size() - 1);
      Letter x = img[img.size() - s1.size() - 1];
      out.decomposition.stems.push_back(stem);
      out.decomposition.marks.push_back(x);
      marks.insert(x);
      out.star.images.push_back(s1 + stem + Word(1, x));
    }
    if (marks.size() < 2)
      fail(ErrorKind::Internal, "tau_star: predecessor letters collapsed despite a constant trace");
    out.star.validate();
    return out;
  }
  fail(ErrorKind::Gate,
       "tau_star: the full-alphabet suffix trace is not constant for any power <= " +
           std::to_string(max_power) + "; supply a candidate tau* for verification instead");
}

StarIdentityReport verify_star_identities(const Substitution& tau, const Substitution& star,
                                          const Word& s1, int n_max, std::size_t budget) {
  StarIdentityReport rep;
  rep.n_max = n_max;
  std::ostringstream note;

  std::vector<Letter> all;
  for (std::size_t a = 0; a < tau.letters(); ++a) all.push_back(static_cast<Letter>(a));

  // Identity 1 on single letters and a fixed spread of short words.
  std::vector<Word> probes;
  for (Letter a : all) probes.push_back(Word(1, a));
  {
    // A few deterministic multi-letter probes assembled from the images.
    for (Letter a : all)
      for (Letter b : all) {
        Word w{a, b};
        if (probes.size() < tau.letters() + 9) probes.push_back(w);
      }
  }
  for (int n = 0; n <= n_max && rep.identity1; ++n) {
    for (const Word& w : probes) {
      Word lhs, rhs;
      try {
        lhs = star.apply(tau.iterate(w, n, budget)) + s1;
        rhs = s1 + tau.iterate(w, n + 1, budget);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Budget) throw;
        continue;
      }
      if (lhs != rhs) {
        rep.identity1 = false;
        note << "identity 1 fails at n=" << n << ", w=" << tau.alphabet.format(w);
        break;
      }
    }
  }

  // Materialized S_n for identities 2 and 3.
  std::vector<Word> s(static_cast<std::size_t>(n_max) + 1);
  bool have_all = true;
  for (int n = 1; n <= n_max; ++n) {
    DualSuffix ds = common_suffix_S(tau, all, n, budget);
    if (!ds.direct_available) { have_all = false; break; }
    s[static_cast<std::size_t>(n)] = ds.direct;
  }
  if (have_all) {
    for (int n = 2; n <= n_max; ++n) {
      const Word& sn = s[static_cast<std::size_t>(n)];
      if (sn != star.apply(s[static_cast<std::size_t>(n - 1)]) + s1) {
        rep.identity2 = false;
        if (note.tellp() == 0) note << "identity 2 fails at n=" << n;
        break;
      }
    }
    for (int n = 2; n <= n_max; ++n) {
      Word img;
      try {
        img = star.iterate(s1, n - 1, budget);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Budget) throw;
        break;
      }
      if (!is_prefix(img, s[static_cast<std::size_t>(n)])) {
        rep.identity3 = false;
        if (note.tellp() == 0) note << "identity 3 fails at n=" << n;
        break;
      }
    }
  }
  rep.ok = rep.identity1 && rep.identity2 && rep.identity3;
  rep.counterexample = note.str();
  return rep;
}

StarCandidateReport verify_star_candidate(const Substitution& tau, const Substitution& star,
                                          const LimitWord& branch, std::size_t prefix_len) {
  star.validate();
  if (!(star.alphabet == tau.alphabet))
    fail(ErrorKind::InvalidInput, "verify_star_candidate: alphabets differ");

  StarCandidateReport rep;
  Letter first = star.images[0].front();
  rep.left_proper = true;
  for (const Word& img : star.images)
    if (img.front() != first) rep.left_proper = false;

  Word y = branch.prefix(prefix_len, std::max(kDefaultExpandBudget, prefix_len));
  Word image = star.apply(y);
  if (image.size() > y.size()) image.resize(y.size());
  std::size_t common = std::min(image.size(), y.size());
  rep.fixed_point_ok = y.compare(0, common, image, 0, common) == 0 && common > 0;
  rep.verified_prefix = common;
  if (!rep.fixed_point_ok) {
    std::size_t at = 0;
    while (at < common && y[at] == image[at]) ++at;
    rep.note = "tau*(y) diverges from y at position " + std::to_string(at);
  }
  return rep;
}

LanguageEqualityReport language_equality(const Substitution& tau, const Substitution& star,
                                         int len, std::size_t budget) {
  LanguageEqualityReport rep;
  rep.len = len;
  LanguageTable lt = language(tau, generating_fixed_point(tau), len, budget);
  LanguageTable rt = language(star, generating_fixed_point(star), len, budget);
  if (!lt.certified || !rt.certified) {
    rep.inconclusive = true;
    return rep;
  }
  for (const Word& w : lt.words)
    if (static_cast<int>(w.size()) == len && !rt.words.count(w)) rep.only_left.push_back(w);
  for (const Word& w : rt.words)
    if (static_cast<int>(w.size()) == len && !lt.words.count(w)) rep.only_right.push_back(w);
  rep.equal = rep.only_left.empty() && rep.only_right.empty();
  return rep;
}

}  // namespace subshift
