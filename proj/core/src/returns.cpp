#include "subshift/returns.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace subshift {

std::optional<int> ReturnSystem::index_of(WordView w) const {
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i] == w) return static_cast<int>(i) + 1;
  return std::nullopt;
}

ReturnSystem return_words(const Substitution& tau, const LimitWord& u, const Word& base,
                          std::size_t budget) {
  tau.validate();
  if (base.empty()) fail(ErrorKind::InvalidInput, "return_words: empty base word");
  ReturnSystem rs;
  rs.base = base;
  rs.source = u;

  std::size_t scan = 4096;
  for (;;) {
    scan = std::min(scan, budget);
    Word prefix = u.prefix(scan, budget);
    std::vector<std::size_t> occ;
    for (std::size_t p = prefix.find(base); p != Word::npos; p = prefix.find(base, p + 1))
      occ.push_back(p);

    std::vector<Word> order;
    std::map<Word, std::size_t> last_start;
    std::size_t last_new = 0;
    for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
      Word w = prefix.substr(occ[i], occ[i + 1] - occ[i]);
      if (std::find(order.begin(), order.end(), w) == order.end()) {
        order.push_back(w);
        last_new = occ[i];
      }
      last_start[std::move(w)] = occ[i];
    }
    std::size_t half = prefix.size() / 2;
    bool stable = !order.empty() && last_new < half;
    if (stable)
      for (const auto& [w, pos] : last_start)
        if (pos < half) { stable = false; break; }
    if (stable) {
      rs.words = std::move(order);
      rs.certified = true;
      rs.window = prefix.size();
      return rs;
    }
    if (scan >= budget) {
      rs.words = std::move(order);
      rs.certified = false;
      rs.window = prefix.size();
      return rs;
    }
    scan *= 2;
  }
}

namespace {

// Tile a word by the base occurrences; the final segment is returned
// separately (it is complete only if followed by another base occurrence).
struct Tiling {
  std::vector<std::size_t> starts;
  bool starts_at_zero = false;
};

Tiling tile_by_base(const Word& w, const Word& base) {
  Tiling t;
  for (std::size_t p = w.find(base); p != Word::npos; p = w.find(base, p + 1))
    t.starts.push_back(p);
  t.starts_at_zero = !t.starts.empty() && t.starts[0] == 0;
  return t;
}

}  // namespace

Substitution induce(const Substitution& tau, ReturnSystem& rs) {
  if (rs.words.empty()) fail(ErrorKind::InvalidInput, "induce: no return words");
  Substitution tau1;
  std::vector<std::string> glyphs;
  for (std::size_t i = 0; i < rs.words.size(); ++i) glyphs.push_back(std::to_string(i + 1));
  tau1.alphabet = Alphabet(glyphs);

  for (std::size_t j = 0; j < rs.words.size(); ++j) {
    Word img = tau.apply(rs.words[j]);
    if (!is_prefix(rs.base, img))
      fail(ErrorKind::InvalidInput,
           "induce: tau(" + tau.alphabet.format(rs.words[j]) +
               ") does not start with the base; the seed is not left-fixed on the base");
    // Straddling base occurrences would break the tiling; they cannot occur
    // for single-letter bases.
    for (std::size_t q = img.size() > rs.base.size() ? img.size() - rs.base.size() + 1 : 1;
         q < img.size(); ++q) {
      WordView tail = WordView(img).substr(q);
      if (rs.base.compare(0, tail.size(), tail) == 0)
        fail(ErrorKind::InvalidInput,
             "induce: base occurrences straddle image boundaries; induction needs a letter base");
    }
    Tiling t = tile_by_base(img, rs.base);
    if (!t.starts_at_zero) fail(ErrorKind::Internal, "induce: image tiling does not start at 0");
    Word code;
    Word rebuilt;
    for (std::size_t i = 0; i < t.starts.size(); ++i) {
      std::size_t end = i + 1 < t.starts.size() ? t.starts[i + 1] : img.size();
      Word piece = img.substr(t.starts[i], end - t.starts[i]);
      auto idx = rs.index_of(piece);
      if (!idx)
        fail(ErrorKind::Internal,
             "induce: segment '" + tau.alphabet.format(piece) +
                 "' is not a known return word (return set not stabilized?)");
      code.push_back(static_cast<Letter>(*idx - 1));
      rebuilt += piece;
    }
    if (rebuilt != img) fail(ErrorKind::Internal, "induce: re-concatenation check failed");
    tau1.images.push_back(std::move(code));
  }
  tau1.validate();
  rs.tau1 = tau1;
  return tau1;
}

std::vector<int> psi_code(const ReturnSystem& rs, WordView w) {
  std::vector<int> out;
  Word word(w);
  Tiling t = tile_by_base(word, rs.base);
  if (word.empty()) return out;
  if (!t.starts_at_zero) fail(ErrorKind::InvalidInput, "psi_code: word does not start with the base");
  for (std::size_t i = 0; i + 1 < t.starts.size(); ++i) {
    Word piece = word.substr(t.starts[i], t.starts[i + 1] - t.starts[i]);
    auto idx = rs.index_of(piece);
    if (!idx) fail(ErrorKind::InvalidInput, "psi_code: word is not a concatenation of return words");
    out.push_back(*idx);
  }
  // Final segment: accepted only when it is itself a return word.
  Word last = word.substr(t.starts.back());
  auto idx = rs.index_of(last);
  if (!idx) fail(ErrorKind::InvalidInput, "psi_code: trailing segment is not a return word");
  out.push_back(*idx);
  return out;
}

Word psi_decode(const ReturnSystem& rs, const std::vector<int>& seq) {
  Word out;
  for (int j : seq) {
    if (j < 1 || j > static_cast<int>(rs.words.size()))
      fail(ErrorKind::InvalidInput, "psi_decode: index out of range");
    out += rs.psi(j);
  }
  return out;
}

std::vector<int> coding_prefix(const ReturnSystem& rs, std::size_t n, std::size_t budget) {
  std::vector<int> out;
  std::size_t scan = 4096;
  for (;;) {
    scan = std::min(scan, budget);
    Word prefix = rs.source.prefix(scan, budget);
    Tiling t = tile_by_base(prefix, rs.base);
    if (!t.starts_at_zero)
      fail(ErrorKind::InvalidInput, "coding_prefix: the source does not start with the base");
    out.clear();
    for (std::size_t i = 0; i + 1 < t.starts.size() && out.size() < n; ++i) {
      Word piece = prefix.substr(t.starts[i], t.starts[i + 1] - t.starts[i]);
      auto idx = rs.index_of(piece);
      if (!idx) fail(ErrorKind::InvalidInput, "coding_prefix: unknown return word in the tiling");
      out.push_back(*idx);
    }
    if (out.size() >= n || scan >= budget) return out;
    scan *= 2;
  }
}

// ---------------------------------------------------------------------------

TowerPartition tower_partition(const Substitution& tau, const Word& inducing,
                               const LanguageTable& table, const QuasiVerdict* verdict,
                               std::size_t budget) {
  TowerPartition tp;
  tp.inducing = inducing;
  if (inducing.empty()) {
    tp.max_height = 1;
    tp.heights = {1};
    tp.atoms = {TowerPartition::Atom{1, 0}};
    return tp;
  }
  if (static_cast<int>(inducing.size()) <= table.max_len && !table.contains(inducing))
    fail(ErrorKind::InvalidInput, "tower_partition: inducing word is not in the language");

  QuasiVerdict local;
  if (verdict == nullptr) {
    local = quasi_invertibility(tau);
    verdict = &local;
  }
  if (!verdict->is_quasi_invertible)
    fail(ErrorKind::Gate, "tower_partition: substitution is not quasi-invertible (Lemma hypothesis)");
  Word bp = verdict->branch->limit.prefix(std::max<std::size_t>(inducing.size(), 64), budget);
  if (!is_prefix(inducing, bp))
    fail(ErrorKind::Gate,
         "tower_partition: branch point not in cylinder [" + tau.alphabet.format(inducing) +
             "] (Lemma hypothesis violated)");

  ReturnSystem rs = return_words(tau, verdict->branch->limit, inducing, budget);
  if (rs.words.empty()) fail(ErrorKind::Internal, "tower_partition: no return words found");
  std::set<int> distinct;
  for (const Word& w : rs.words) {
    int h = static_cast<int>(w.size());
    tp.heights.push_back(h);
    distinct.insert(h);
  }
  tp.max_height = *distinct.rbegin();
  for (int k : distinct)
    for (int i = 0; i < k; ++i) tp.atoms.push_back(TowerPartition::Atom{k, i});
  return tp;
}

PartitionCheck verify_partition(const TowerPartition& tp, const Substitution& tau,
                                const LanguageTable& table, int len) {
  PartitionCheck check;
  check.len = len;
  if (tp.inducing.empty()) return check;  // single atom covers everything

  int need = len + tp.max_height - 1;
  if (table.max_len < need)
    fail(ErrorKind::InvalidInput,
         "verify_partition: table length " + std::to_string(table.max_len) +
             " below required " + std::to_string(need));

  // Return words of each height, re-derived from the language: a length-k
  // word starting with the base, base-free strictly inside, extendable by
  // the base.
  std::set<int> heights(tp.heights.begin(), tp.heights.end());
  std::map<int, std::vector<Word>> candidates;
  for (int h : heights) {
    std::vector<Word> found;
    for (const Word& w : table.of_length(h + static_cast<int>(tp.inducing.size()))) {
      if (!is_prefix(tp.inducing, w)) continue;
      if (!is_suffix(tp.inducing, w)) continue;
      // base-free strictly inside
      if (w.find(tp.inducing, 1) != static_cast<std::size_t>(h)) continue;
      found.push_back(w.substr(0, static_cast<std::size_t>(h)));
    }
    candidates[h] = std::move(found);
  }

  for (const Word& w : table.of_length(len)) {
    std::size_t j = w.find(tp.inducing);
    std::set<std::pair<int, int>> membership;  // (height k, offset i)
    if (j == Word::npos) {
      if (len >= tp.max_height + static_cast<int>(tp.inducing.size())) {
        check.covers = false;
        check.counterexample = "no base occurrence in '" + tau.alphabet.format(w) + "'";
        return check;
      }
      continue;
    }
    if (j == 0) {
      std::size_t next = w.find(tp.inducing, 1);
      if (next == Word::npos) continue;  // second hit not visible; skip
      membership.insert({static_cast<int>(next), 0});
      if (!heights.count(static_cast<int>(next))) {
        check.covers = false;
        check.counterexample =
            "return time " + std::to_string(next) + " of '" + tau.alphabet.format(w) +
            "' is not a tower height";
        return check;
      }
    } else {
      for (int k : heights) {
        int i = k - static_cast<int>(j);
        if (i < 1 || i >= k) continue;
        for (const Word& rho : candidates[k]) {
          // x = rho . (next tile ...) with y = sigma^i(x): the tail of rho
          // must match w's head and the full context must be admissible.
          if (rho.compare(static_cast<std::size_t>(i), static_cast<std::size_t>(j), w, 0, j) != 0)
            continue;
          Word context = rho.substr(0, static_cast<std::size_t>(i)) + w;
          if (static_cast<int>(context.size()) <= table.max_len && !table.contains(context)) continue;
          membership.insert({k, i});
          break;
        }
      }
      if (membership.empty()) {
        check.covers = false;
        check.counterexample = "'" + tau.alphabet.format(w) + "' lies in no atom";
        return check;
      }
    }
    if (membership.size() > 1) {
      check.disjoint = false;
      check.counterexample = "'" + tau.alphabet.format(w) + "' lies in " +
                             std::to_string(membership.size()) + " atoms";
      return check;
    }
  }
  return check;
}

Tau1Report tau1_properties(const Substitution& tau, const Substitution& tau1,
                           const QuasiVerdict& tau_verdict) {
  Tau1Report rep;
  rep.classification = classify(tau1);
  rep.recognizability = recognizability_check(tau1, generating_fixed_point(tau1), 32, 1 << 17);
  rep.quasi = quasi_invertibility(tau1);

  int bound = static_cast<int>(tau1.letters()) + 1;
  for (int k = 1; k <= bound; ++k) {
    Substitution pw = k == 1 ? tau1 : tau1.power(k);
    Letter first = pw.images[0].front();
    bool lp = true;
    for (const Word& img : pw.images)
      if (img.front() != first) lp = false;
    if (lp) { rep.left_proper_power = k; break; }
  }

  std::ostringstream note;
  if (tau_verdict.is_quasi_invertible && rep.quasi.is_quasi_invertible) {
    rep.degree_consistent = tau_verdict.degree == rep.quasi.degree;
    note << "both quasi-invertible; degrees " << tau_verdict.degree << " vs " << rep.quasi.degree;
  } else if (!tau_verdict.is_quasi_invertible && rep.quasi.is_quasi_invertible) {
    note << "tau1 is quasi-invertible while tau is not; the correspondence is conditional and "
            "degrees are not forced to match";
  } else if (!rep.quasi.is_quasi_invertible) {
    note << "tau1 is not quasi-invertible (" << rep.quasi.all_branch_points.size()
         << " branch points)";
  }
  rep.note = note.str();
  (void)tau;
  return rep;
}

}  // namespace subshift
