#include "subshift/words.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace subshift {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> glyphs) : glyphs_(std::move(glyphs)) {
  if (glyphs_.empty()) fail(ErrorKind::Parse, "alphabet is empty");
  for (std::size_t i = 0; i < glyphs_.size(); ++i) {
    const std::string& g = glyphs_[i];
    if (g.empty()) fail(ErrorKind::Parse, "empty alphabet symbol");
    if (!index_.emplace(g, static_cast<Letter>(i)).second)
      fail(ErrorKind::Parse, "duplicate alphabet symbol '" + g + "'");
    if (g.size() > 1) single_char_ = false;
  }
}

const std::string& Alphabet::glyph(Letter a) const {
  std::size_t i = static_cast<std::size_t>(a);
  if (i >= glyphs_.size()) fail(ErrorKind::Internal, "letter index out of range");
  return glyphs_[i];
}

std::optional<Letter> Alphabet::find(std::string_view glyph) const {
  auto it = index_.find(glyph);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Alphabet::format(WordView w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_char_ && i > 0) out.push_back(' ');
    out += glyph(w[i]);
  }
  return out;
}

Word Alphabet::parse_word(std::string_view text) const {
  auto tokens = split_ws(text);
  Word w;
  if (tokens.size() == 1 && single_char_) {
    for (char c : tokens[0]) {
      auto a = find(std::string_view(&c, 1));
      if (!a) fail(ErrorKind::Parse, std::string("unknown symbol '") + c + "'");
      w.push_back(*a);
    }
    return w;
  }
  if (tokens.size() == 1 && !single_char_) {
    // A single token can still be a lone multi-glyph symbol.
    auto a = find(tokens[0]);
    if (!a) fail(ErrorKind::Parse, "unknown symbol '" + tokens[0] + "' (multi-glyph alphabets need spaced words)");
    return Word(1, *a);
  }
  for (const auto& t : tokens) {
    auto a = find(t);
    if (!a) fail(ErrorKind::Parse, "unknown symbol '" + t + "'");
    w.push_back(*a);
  }
  return w;
}

Word Substitution::apply(WordView w) const {
  Word out;
  std::size_t total = 0;
  for (Letter a : w) {
    if (static_cast<std::size_t>(a) >= images.size())
      fail(ErrorKind::InvalidInput, "apply: letter outside the alphabet");
    total += image(a).size();
  }
  out.reserve(total);
  for (Letter a : w) out += image(a);
  return out;
}

Word Substitution::iterate(WordView w, int n, std::size_t max_len) const {
  if (n < 0) fail(ErrorKind::InvalidInput, "iterate: negative power");
  Word cur(w);
  for (int i = 0; i < n; ++i) {
    std::size_t next_len = 0;
    for (Letter a : cur) {
      if (static_cast<std::size_t>(a) >= images.size())
        fail(ErrorKind::InvalidInput, "iterate: letter outside the alphabet");
      next_len += image(a).size();
    }
    if (next_len > max_len)
      fail(ErrorKind::Budget, "iterate: expansion exceeds budget of " + std::to_string(max_len) + " symbols");
    cur = apply(cur);
  }
  return cur;
}

Word Substitution::iterate_letter(Letter a, int n, std::size_t max_len) const {
  return iterate(Word(1, a), n, max_len);
}

Substitution Substitution::power(int k) const {
  if (k < 1) fail(ErrorKind::InvalidInput, "power: exponent must be >= 1");
  Substitution out;
  out.alphabet = alphabet;
  out.images.reserve(images.size());
  for (std::size_t a = 0; a < images.size(); ++a)
    out.images.push_back(iterate_letter(static_cast<Letter>(a), k));
  return out;
}

std::vector<std::vector<std::uint64_t>> Substitution::composition_matrix() const {
  std::size_t n = images.size();
  std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (Letter b : images[a]) m[a][static_cast<std::size_t>(b)]++;
  return m;
}

std::vector<std::uint64_t> Substitution::iterate_lengths(int n) const {
  std::size_t k = images.size();
  std::vector<std::uint64_t> len(k, 1);
  for (int step = 0; step < n; ++step) {
    std::vector<std::uint64_t> next(k, 0);
    for (std::size_t a = 0; a < k; ++a) {
      std::uint64_t sum = 0;
      for (Letter b : images[a]) {
        std::uint64_t add = len[static_cast<std::size_t>(b)];
        if (sum > UINT64_MAX - add) fail(ErrorKind::Budget, "iterate_lengths: 64-bit overflow");
        sum += add;
      }
      next[a] = sum;
    }
    len = std::move(next);
  }
  return len;
}

std::string Substitution::format() const {
  std::ostringstream os;
  os << "alphabet:";
  for (std::size_t a = 0; a < alphabet.size(); ++a) os << ' ' << alphabet.glyph(static_cast<Letter>(a));
  os << '\n';
  for (std::size_t a = 0; a < images.size(); ++a)
    os << alphabet.glyph(static_cast<Letter>(a)) << " -> " << alphabet.format(images[a]) << '\n';
  return os.str();
}

void Substitution::validate() const {
  if (images.size() != alphabet.size())
    fail(ErrorKind::InvalidInput, "substitution: image count differs from alphabet size");
  for (std::size_t a = 0; a < images.size(); ++a) {
    if (images[a].empty())
      fail(ErrorKind::InvalidInput, "substitution: empty image for '" + alphabet.glyph(static_cast<Letter>(a)) + "'");
    for (Letter b : images[a])
      if (static_cast<std::size_t>(b) >= alphabet.size())
        fail(ErrorKind::InvalidInput, "substitution: image letter outside the alphabet");
  }
}

Substitution parse_substitution(std::string_view text) {
  std::vector<std::string> alphabet_tokens;
  std::vector<std::pair<std::string, std::string>> rules;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "alphabet:" || (tokens.size() > 1 && tokens[0] == "alphabet" && tokens[1] == ":")) {
      std::size_t from = tokens[0] == "alphabet:" ? 1 : 2;
      alphabet_tokens.assign(tokens.begin() + from, tokens.end());
      continue;
    }
    auto arrow = std::find(tokens.begin(), tokens.end(), "->");
    if (arrow == tokens.end() || arrow == tokens.begin() || arrow + 1 == tokens.end())
      fail(ErrorKind::Parse, "expected '<symbol> -> <image>', got: " + line);
    if (arrow != tokens.begin() + 1)
      fail(ErrorKind::Parse, "exactly one symbol allowed left of '->': " + line);
    std::string rhs;
    for (auto it = arrow + 1; it != tokens.end(); ++it) {
      if (!rhs.empty()) rhs.push_back(' ');
      rhs += *it;
    }
    rules.emplace_back(tokens[0], rhs);
  }
  if (alphabet_tokens.empty()) fail(ErrorKind::Parse, "missing 'alphabet:' line");
  if (rules.empty()) fail(ErrorKind::Parse, "no substitution rules");

  Alphabet alph(alphabet_tokens);
  Substitution tau;
  tau.alphabet = alph;
  tau.images.assign(alph.size(), Word());
  std::vector<bool> seen(alph.size(), false);
  for (const auto& [lhs, rhs] : rules) {
    auto a = alph.find(lhs);
    if (!a) fail(ErrorKind::Parse, "rule for unknown symbol '" + lhs + "'");
    if (seen[static_cast<std::size_t>(*a)]) fail(ErrorKind::Parse, "duplicate rule for '" + lhs + "'");
    seen[static_cast<std::size_t>(*a)] = true;
    tau.images[static_cast<std::size_t>(*a)] = alph.parse_word(rhs);
  }
  for (std::size_t a = 0; a < alph.size(); ++a)
    if (!seen[a]) fail(ErrorKind::Parse, "missing rule for '" + alph.glyph(static_cast<Letter>(a)) + "'");
  tau.validate();
  return tau;
}

Substitution load_substitution(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_substitution(buf.str());
}

// ---------------------------------------------------------------------------

namespace {

FunctionalGraph build_graph(const Substitution& tau, bool use_suffix) {
  tau.validate();
  std::size_t n = tau.letters();
  FunctionalGraph g;
  g.next.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    g.next[a] = use_suffix ? tau.images[a].back() : tau.images[a].front();

  g.on_cycle.assign(n, false);
  std::vector<bool> visited(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    // Walk until we re-enter explored territory; a repeat inside the current
    // walk closes a fresh cycle.
    std::vector<Letter> walk;
    std::map<Letter, std::size_t> pos;
    Letter cur = static_cast<Letter>(start);
    while (!visited[static_cast<std::size_t>(cur)] && !pos.count(cur)) {
      pos[cur] = walk.size();
      walk.push_back(cur);
      cur = g.next[static_cast<std::size_t>(cur)];
    }
    if (auto it = pos.find(cur); it != pos.end()) {
      std::vector<Letter> cycle(walk.begin() + static_cast<std::ptrdiff_t>(it->second), walk.end());
      for (Letter c : cycle) g.on_cycle[static_cast<std::size_t>(c)] = true;
      g.cycles.push_back(std::move(cycle));
    }
    for (Letter c : walk) visited[static_cast<std::size_t>(c)] = true;
  }
  // Canonical order: cycles sorted by smallest member.
  std::sort(g.cycles.begin(), g.cycles.end(), [](const auto& x, const auto& y) {
    return *std::min_element(x.begin(), x.end()) < *std::min_element(y.begin(), y.end());
  });
  return g;
}

}  // namespace

const std::vector<Letter>* FunctionalGraph::cycle_of(Letter a) const {
  for (const auto& c : cycles)
    if (std::find(c.begin(), c.end(), a) != c.end()) return &c;
  return nullptr;
}

std::vector<Letter> FunctionalGraph::cycle_letters() const {
  std::vector<Letter> out;
  for (std::size_t a = 0; a < on_cycle.size(); ++a)
    if (on_cycle[a]) out.push_back(static_cast<Letter>(a));
  return out;
}

FunctionalGraph prefix_graph(const Substitution& tau) { return build_graph(tau, false); }
FunctionalGraph suffix_graph(const Substitution& tau) { return build_graph(tau, true); }

namespace {

// Letters with |tau^n(a)| bounded: the largest set closed under "image is a
// single letter that is itself bounded".
std::vector<bool> bounded_letters(const Substitution& tau) {
  std::size_t n = tau.letters();
  std::vector<bool> bounded(n, false);
  for (std::size_t a = 0; a < n; ++a) bounded[a] = tau.images[a].size() == 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (!bounded[a]) continue;
      Letter b = tau.images[a][0];
      if (!bounded[static_cast<std::size_t>(b)]) {
        bounded[a] = false;
        changed = true;
      }
    }
  }
  return bounded;
}

}  // namespace

std::vector<FixedSeed> fixed_seeds(const Substitution& tau) {
  FunctionalGraph p = prefix_graph(tau);
  std::vector<bool> bounded = bounded_letters(tau);
  std::vector<FixedSeed> out;
  for (const auto& cycle : p.cycles) {
    for (Letter l : cycle)
      out.push_back(FixedSeed{l, static_cast<int>(cycle.size()), !bounded[static_cast<std::size_t>(l)]});
  }
  std::sort(out.begin(), out.end(), [](const FixedSeed& x, const FixedSeed& y) { return x.letter < y.letter; });
  return out;
}

namespace {

// Prefix of tau^n(a) of at most cap symbols, materialized lazily so huge
// blocks never allocate beyond the cap.
Word iterate_prefix(const Substitution& tau, Letter a, int n, std::size_t cap) {
  Word out;
  std::vector<std::pair<Letter, int>> stack{{a, n}};
  while (!stack.empty() && out.size() < cap) {
    auto [l, p] = stack.back();
    stack.pop_back();
    if (p == 0) {
      out.push_back(l);
      continue;
    }
    const Word& img = tau.image(l);
    for (auto it = img.rbegin(); it != img.rend(); ++it) stack.emplace_back(*it, p - 1);
  }
  return out;
}

}  // namespace

Word LimitWord::prefix(std::size_t n, std::size_t budget) const {
  if (seed.empty()) fail(ErrorKind::InvalidInput, "limit word: empty seed");
  std::size_t target = std::min(std::max(n, seed.size()), std::max(budget, seed.size()));
  // Per-letter images of tau^power, truncated at the target; only the last
  // block appended in a sweep may be cut, so every sweep yields an exact
  // prefix of the true expansion.
  std::vector<Word> block(subst.letters());
  for (std::size_t a = 0; a < block.size(); ++a)
    block[a] = iterate_prefix(subst, static_cast<Letter>(a), power, target + 1);

  Word cur = seed;
  while (cur.size() < target) {
    Word next = prepend;
    next.reserve(target);
    for (Letter a : cur) {
      next += block[static_cast<std::size_t>(a)];
      if (next.size() >= target) break;
    }
    // One step of y -> prepend . tau^power(y): the previous approximation
    // must stay a prefix and the word must grow.
    std::size_t common = std::min(cur.size(), next.size());
    if (next.compare(0, common, cur, 0, common) != 0)
      fail(ErrorKind::InvalidInput, "limit word: seed equation is inconsistent (expansion does not extend the seed)");
    if (next.size() <= cur.size())
      fail(ErrorKind::InvalidInput, "limit word: seed does not grow");
    cur = std::move(next);
  }
  if (cur.size() > n) cur.resize(n);
  return cur;
}

std::string LimitWord::equation() const {
  std::string p = power == 1 ? "tau" : "tau^" + std::to_string(power);
  if (prepend.empty())
    return "y = " + p + "(y), y starts '" + subst.alphabet.format(seed) + "'";
  return "y = " + subst.alphabet.format(prepend) + " . " + p + "(y)";
}

LimitWord fixed_point(const Substitution& tau, const FixedSeed& seed) {
  return LimitWord{tau, Word(), seed.period, Word(1, seed.letter)};
}

LimitWord generating_fixed_point(const Substitution& tau) {
  for (const FixedSeed& s : fixed_seeds(tau))
    if (s.growing) return fixed_point(tau, s);
  fail(ErrorKind::Gate, "no growing fixed point of any power: substitution has no generating fixed point");
}

std::vector<Word> LanguageTable::of_length(int len) const {
  std::vector<Word> out;
  for (const auto& w : words)
    if (static_cast<int>(w.size()) == len) out.push_back(w);
  return out;
}

LanguageTable language(const Substitution& tau, const LimitWord& u, int max_len, std::size_t budget) {
  if (max_len < 1) fail(ErrorKind::InvalidInput, "language: max_len must be >= 1");
  LanguageTable table;
  table.max_len = max_len;

  std::size_t scan = std::max<std::size_t>(4096, static_cast<std::size_t>(max_len) * 4);
  scan = std::min(scan, budget);
  std::set<Word> full;                  // length-max_len words
  std::map<Word, std::size_t> last_seen;
  std::size_t last_new = 0;

  Word prefix;
  for (;;) {
    prefix = u.prefix(scan, budget);
    full.clear();
    last_seen.clear();
    last_new = 0;
    const std::size_t len = static_cast<std::size_t>(max_len);
    if (prefix.size() >= len) {
      for (std::size_t p = 0; p + len <= prefix.size(); ++p) {
        Word w = prefix.substr(p, len);
        auto [it, fresh] = full.emplace(std::move(w));
        if (fresh) last_new = p;
        last_seen[*it] = p;
      }
    }
    std::size_t half = prefix.size() / 2;
    bool stable = prefix.size() >= len && last_new < half;
    if (stable) {
      for (const auto& [w, pos] : last_seen)
        if (pos < half) { stable = false; break; }
    }
    if (stable) {
      table.certified = true;
      table.window = prefix.size();
      break;
    }
    if (scan >= budget || prefix.size() < scan) {
      // Budget exhausted (or the word stopped growing): flag and return what
      // we have.
      table.certified = false;
      table.window = prefix.size();
      break;
    }
    scan = std::min(budget, scan * 2);
  }

  // Shorter words are exactly the subwords of the stabilized top layer, plus
  // everything visible when the prefix never reached max_len.
  if (prefix.size() < static_cast<std::size_t>(max_len)) {
    for (std::size_t l = 1; l <= prefix.size(); ++l)
      for (std::size_t p = 0; p + l <= prefix.size(); ++p) table.words.insert(prefix.substr(p, l));
    return table;
  }
  table.words = full;
  for (const auto& w : full)
    for (std::size_t l = 1; l < w.size(); ++l)
      for (std::size_t p = 0; p + l <= w.size(); ++p) table.words.insert(w.substr(p, l));
  return table;
}

Classification classify(const Substitution& tau, const ClassifyOptions& opt) {
  tau.validate();
  std::size_t n = tau.letters();
  Classification out;

  Letter first = tau.images[0].front();
  Letter last = tau.images[0].back();
  out.left_proper = true;
  out.right_proper = true;
  for (const Word& img : tau.images) {
    if (img.front() != first) out.left_proper = false;
    if (img.back() != last) out.right_proper = false;
  }

  // Primitivity via boolean matrix power positivity; exponent bound
  // (n-1)^2 + 1.
  {
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    bool some_growing_image = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (tau.images[a].size() > 1) some_growing_image = true;
      for (Letter b : tau.images[a]) reach[a][static_cast<std::size_t>(b)] = true;
    }
    int bound = static_cast<int>((n - 1) * (n - 1) + 1);
    auto positive = [&](const std::vector<std::vector<bool>>& m) {
      for (const auto& row : m)
        for (bool v : row)
          if (!v) return false;
      return true;
    };
    std::vector<std::vector<bool>> acc = reach;
    out.primitive = false;
    for (int k = 1; k <= bound; ++k) {
      if (positive(acc)) {
        out.primitive = some_growing_image;
        break;
      }
      std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (acc[i][j])
            for (std::size_t k2 = 0; k2 < n; ++k2)
              if (reach[j][k2]) next[i][k2] = true;
      acc = std::move(next);
    }
  }

  std::vector<bool> bounded = bounded_letters(tau);
  for (std::size_t a = 0; a < n; ++a)
    (bounded[a] ? out.bounded : out.growing).push_back(static_cast<Letter>(a));

  out.injectivity_bound = opt.injectivity_bound > 0 ? opt.injectivity_bound : static_cast<int>(3 * n);
  {
    Substitution pw = tau;
    for (int k = 1; k <= out.injectivity_bound; ++k) {
      if (k > 1) {
        bool over = false;
        for (std::size_t a = 0; a < n && !over; ++a)
          if (pw.images[a].size() > opt.budget / std::max<std::size_t>(1, tau.images[a].size())) over = true;
        if (over) break;  // certified only as far as we could materialize
        Substitution next;
        next.alphabet = tau.alphabet;
        next.images.reserve(n);
        for (std::size_t a = 0; a < n; ++a) next.images.push_back(pw.apply(tau.images[a]));
        pw = std::move(next);
      }
      std::set<Word> distinct(pw.images.begin(), pw.images.end());
      if (distinct.size() != n) break;
      out.injective_up_to = k;
    }
  }

  // Minimality: primitive substitutions are minimal; otherwise certify
  // bounded return gaps of every short word on a scanned window.
  if (out.primitive) {
    out.minimal_verdict = MinimalVerdict::PrimitiveHenceMinimal;
  } else {
    out.minimal_verdict = MinimalVerdict::Unknown;
    auto seeds = fixed_seeds(tau);
    const FixedSeed* gen = nullptr;
    for (const auto& s : seeds)
      if (s.growing) { gen = &s; break; }
    if (gen != nullptr) {
      LimitWord u = fixed_point(tau, *gen);
      int len = opt.window_word_len;
      LanguageTable t = language(tau, u, len, opt.budget);
      if (t.certified) {
        // The certification loop in language() already demands that every
        // length-len word recurs in the second half of the window.
        out.minimal_verdict = MinimalVerdict::CertifiedAlmostPeriodicOnWindow;
        out.window = t.window;
        out.window_word_len = len;
      }
      // Letters never appearing in the expansion are unreachable.
      Word p = u.prefix(t.window == 0 ? 4096 : t.window, opt.budget);
      std::vector<bool> seen(n, false);
      for (Letter a : p) seen[static_cast<std::size_t>(a)] = true;
      for (std::size_t a = 0; a < n; ++a)
        if (!seen[a]) out.unreachable.push_back(static_cast<Letter>(a));
    }
  }
  return out;
}

bool is_prefix(WordView p, WordView w) {
  return p.size() <= w.size() && w.compare(0, p.size(), p) == 0;
}

bool is_suffix(WordView s, WordView w) {
  return s.size() <= w.size() && w.compare(w.size() - s.size(), s.size(), s) == 0;
}

Word max_proper_common_suffix(std::span<const Word> words) {
  if (words.empty()) return Word();
  std::size_t limit = words[0].size();
  for (const Word& w : words) limit = std::min(limit, w.size());
  if (limit == 0) return Word();
  limit -= 1;  // proper in every word
  std::size_t k = 0;
  while (k < limit) {
    Letter c = words[0][words[0].size() - 1 - k];
    bool all = true;
    for (const Word& w : words)
      if (w[w.size() - 1 - k] != c) { all = false; break; }
    if (!all) break;
    ++k;
  }
  return words[0].substr(words[0].size() - k, k);
}

}  // namespace subshift
