#include "subshift/recognition.hpp"

#include <algorithm>
#include <map>

namespace subshift {

bool CutSet::is_cut(std::size_t pos) const {
  return std::binary_search(cuts.begin(), cuts.end(), pos);
}

CutSet cut_set(const Substitution& tau, const LimitWord& u, std::size_t prefix_len,
               std::size_t budget) {
  CutSet out;
  Word prefix = u.prefix(prefix_len + 1, std::max(budget, prefix_len + 1));
  out.prefix_len = std::min(prefix_len, prefix.size());
  std::size_t pos = 0;
  out.cuts.push_back(0);
  for (Letter a : prefix) {
    pos += tau.image(a).size();
    if (pos > out.prefix_len) break;
    out.cuts.push_back(pos);
  }
  return out;
}

namespace {

std::vector<bool> cut_bitmap(const Substitution& tau, const Word& prefix) {
  std::vector<bool> cut(prefix.size() + 1, false);
  std::size_t pos = 0;
  cut[0] = true;
  for (Letter a : prefix) {
    pos += tau.image(a).size();
    if (pos > prefix.size()) break;
    cut[pos] = true;
  }
  return cut;
}

}  // namespace

RecognizabilityVerdict recognizability_check(const Substitution& tau, const LimitWord& u,
                                             int l_max, std::size_t scan_n) {
  tau.validate();
  RecognizabilityVerdict verdict;
  verdict.l_max = l_max;

  // Letter pairs with tau(b) a proper suffix of tau(a).
  std::vector<std::pair<Letter, Letter>> pairs;
  for (std::size_t a = 0; a < tau.letters(); ++a)
    for (std::size_t b = 0; b < tau.letters(); ++b) {
      if (a == b) continue;
      const Word& wa = tau.images[a];
      const Word& wb = tau.images[b];
      if (wb.size() < wa.size() && is_suffix(wb, wa))
        pairs.emplace_back(static_cast<Letter>(a), static_cast<Letter>(b));
    }

  if (pairs.empty()) {
    verdict.kind = RecognizabilityVerdict::Kind::RecognizableCertified;
    verdict.certified_len = 1;
    verdict.note = "no letter pair has tau(b) a proper suffix of tau(a); the criterion is vacuous";
    return verdict;
  }

  Word prefix = u.prefix(scan_n, scan_n);
  verdict.scan_window = prefix.size();
  std::vector<bool> cut = cut_bitmap(tau, prefix);

  // Occurrence positions of each image that participates in a pair.
  std::map<Letter, std::vector<std::size_t>> occ;
  for (auto [a, b] : pairs) {
    for (Letter x : {a, b}) {
      if (occ.count(x)) continue;
      std::vector<std::size_t> positions;
      const Word& pat = tau.image(x);
      for (std::size_t p = prefix.find(pat); p != Word::npos; p = prefix.find(pat, p + 1))
        positions.push_back(p);
      occ.emplace(x, std::move(positions));
    }
  }

  auto key_at = [&](std::size_t wpos, int len) {
    // The word w at wpos together with its relative cut pattern, packed into
    // one comparable string (letters then 0/1 pattern symbols).
    Word key = prefix.substr(wpos, static_cast<std::size_t>(len));
    for (int i = 0; i <= len; ++i)
      key.push_back(cut[wpos + static_cast<std::size_t>(i)] ? char32_t(1) : char32_t(0));
    return key;
  };

  for (int len = 1; len <= l_max; ++len) {
    std::optional<RecognizabilityWitness> found;
    for (auto [a, b] : pairs) {
      std::set<Word> seen_a;
      std::map<Word, std::size_t> first_a;
      const std::size_t la = tau.image(a).size();
      const std::size_t lb = tau.image(b).size();
      for (std::size_t p : occ[a]) {
        if (p + la + static_cast<std::size_t>(len) > prefix.size()) continue;
        Word k = key_at(p + la, len);
        if (seen_a.insert(k).second) first_a.emplace(std::move(k), p);
      }
      for (std::size_t p : occ[b]) {
        if (p + lb + static_cast<std::size_t>(len) > prefix.size()) continue;
        Word k = key_at(p + lb, len);
        auto it = first_a.find(k);
        if (it != first_a.end()) {
          RecognizabilityWitness w;
          w.len = len;
          w.w = prefix.substr(p + lb, static_cast<std::size_t>(len));
          w.a = a;
          w.b = b;
          w.pos_a = it->second;
          w.pos_b = p;
          found = std::move(w);
          break;
        }
      }
      if (found) break;
    }
    if (!found) {
      verdict.kind = RecognizabilityVerdict::Kind::RecognizableCertified;
      verdict.certified_len = len;
      return verdict;
    }
    verdict.witnesses.push_back(std::move(*found));
  }
  verdict.kind = RecognizabilityVerdict::Kind::NotRecognizable;
  verdict.note = "witnesses found for every L <= " + std::to_string(l_max) +
                 " on the scanned window";
  return verdict;
}

std::vector<Desubstitution> desubstitute(const Substitution& tau, const Word& w,
                                         const LanguageTable& table) {
  if (w.empty()) fail(ErrorKind::InvalidInput, "desubstitute: empty word");
  if (static_cast<int>(w.size()) <= table.max_len && !table.contains(w))
    fail(ErrorKind::InvalidInput, "desubstitute: word is not in the language table");

  auto admissible = [&](const Word& x) {
    std::size_t len = std::min<std::size_t>(x.size(), static_cast<std::size_t>(table.max_len));
    for (std::size_t p = 0; p + len <= x.size(); ++p)
      if (!table.contains(WordView(x).substr(p, len))) return false;
    return true;
  };

  std::vector<Desubstitution> out;
  // Grow candidate preimages letter by letter; a branch survives while the
  // materialized image still matches w.
  struct State {
    Word x;
    Word img;  // tau(x) truncated to the part overlapping w from offset k
  };
  for (std::size_t a = 0; a < tau.letters(); ++a) {
    const Word& img0 = tau.images[a];
    for (std::size_t k = 0; k < img0.size(); ++k) {
      std::vector<State> frontier;
      Word head = img0.substr(k);
      std::size_t common = std::min(head.size(), w.size());
      if (w.compare(0, common, head, 0, common) != 0) continue;
      frontier.push_back(State{Word(1, static_cast<Letter>(a)), std::move(head)});
      while (!frontier.empty()) {
        std::vector<State> next;
        for (State& st : frontier) {
          if (st.img.size() >= w.size()) {
            if (admissible(st.x)) out.push_back(Desubstitution{k, st.x});
            continue;
          }
          for (std::size_t b = 0; b < tau.letters(); ++b) {
            Word img = st.img + tau.images[b];
            std::size_t c = std::min(img.size(), w.size());
            if (w.compare(0, c, img, 0, c) != 0) continue;
            Word x = st.x;
            x.push_back(static_cast<Letter>(b));
            if (!admissible(x)) continue;
            next.push_back(State{std::move(x), std::move(img)});
          }
        }
        frontier = std::move(next);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Desubstitution& l, const Desubstitution& r) {
    return l.offset != r.offset ? l.offset < r.offset : l.preimage < r.preimage;
  });
  return out;
}

}  // namespace subshift
