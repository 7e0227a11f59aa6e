#include "subshift/codings.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace subshift {

namespace {

std::vector<std::string> split_tokens(std::string_view s) {
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

LocalRule parse_rule(std::string_view text, const Alphabet& source) {
  LocalRule rule;
  rule.source = source;
  std::vector<std::pair<Word, std::string>> entries;
  std::vector<std::string> targets;
  std::optional<int> left, right;

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "radius:") {
      if (tokens.size() != 3) fail(ErrorKind::Parse, "radius line needs two numbers");
      left = std::stoi(tokens[1]);
      right = std::stoi(tokens[2]);
      continue;
    }
    auto arrow = std::find(tokens.begin(), tokens.end(), "->");
    if (arrow == tokens.end() || arrow + 1 == tokens.end() || arrow == tokens.begin())
      fail(ErrorKind::Parse, "expected '<window> -> <target>': " + line);
    if (arrow + 2 != tokens.end()) fail(ErrorKind::Parse, "exactly one target token allowed: " + line);
    std::string lhs;
    for (auto it = tokens.begin(); it != arrow; ++it) {
      if (!lhs.empty()) lhs.push_back(' ');
      lhs += *it;
    }
    Word window = source.parse_word(lhs);
    if (window.empty()) fail(ErrorKind::Parse, "empty window: " + line);
    entries.emplace_back(std::move(window), *(arrow + 1));
    if (std::find(targets.begin(), targets.end(), entries.back().second) == targets.end())
      targets.push_back(entries.back().second);
  }
  if (entries.empty()) fail(ErrorKind::Parse, "rule file has no entries");

  std::size_t wlen = entries[0].first.size();
  for (const auto& [w, t] : entries)
    if (w.size() != wlen) fail(ErrorKind::Parse, "rule windows have mixed lengths");
  if (left && right) {
    if (static_cast<std::size_t>(*left + 1 + *right) != wlen)
      fail(ErrorKind::Parse, "radius line disagrees with window length");
    rule.left_radius = *left;
    rule.right_radius = *right;
  } else {
    rule.left_radius = wlen >= 2 ? 1 : 0;
    rule.right_radius = static_cast<int>(wlen) - 1 - rule.left_radius;
  }

  rule.target = Alphabet(targets);
  for (auto& [w, t] : entries) {
    Letter out = *rule.target.find(t);
    if (!rule.table.emplace(std::move(w), out).second)
      fail(ErrorKind::Parse, "duplicate rule window");
  }
  return rule;
}

LocalRule load_rule(const std::string& path, const Alphabet& source) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rule(buf.str(), source);
}

Word apply_code(const LocalRule& rule, WordView w) {
  int wl = rule.window();
  if (static_cast<int>(w.size()) < wl)
    fail(ErrorKind::InvalidInput, "apply_code: word shorter than the window");
  Word out;
  out.reserve(w.size() - static_cast<std::size_t>(wl) + 1);
  for (std::size_t p = 0; p + static_cast<std::size_t>(wl) <= w.size(); ++p) {
    auto it = rule.table.find(Word(w.substr(p, static_cast<std::size_t>(wl))));
    if (it == rule.table.end())
      fail(ErrorKind::InvalidInput,
           "apply_code: window '" + rule.source.format(w.substr(p, static_cast<std::size_t>(wl))) +
               "' is not in the rule domain");
    out.push_back(it->second);
  }
  return out;
}

InjectivityVerdict injectivity_check(const LocalRule& rule, const Substitution& tau, int len,
                                     std::size_t budget) {
  InjectivityVerdict v;
  v.len = len;
  if (len < rule.window()) fail(ErrorKind::InvalidInput, "injectivity_check: len below window length");
  LanguageTable table = language(tau, generating_fixed_point(tau), len, budget);

  std::map<Word, std::vector<const Word*>> by_image;
  std::vector<Word> words = table.of_length(len);
  v.words_checked = words.size();
  for (const Word& w : words) by_image[apply_code(rule, w)].push_back(&w);

  // A difference witnesses non-injectivity only with a full window margin on
  // both sides; edge differences are unrecoverable for any sliding code.
  std::size_t lo = static_cast<std::size_t>(rule.left_radius);
  std::size_t hi = static_cast<std::size_t>(len - 1 - rule.right_radius);
  for (auto& [img, group] : by_image) {
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        const Word& a = *group[i];
        const Word& b = *group[j];
        for (std::size_t p = lo; p <= hi; ++p) {
          if (a[p] != b[p]) {
            if (!v.witness || std::make_pair(a, b) < *v.witness) v.witness = {a, b};
            break;
          }
        }
      }
  }
  v.injective = !v.witness.has_value();
  return v;
}

int image_branch_degree(const LocalRule& rule, const Substitution& tau, const Word& image_prefix,
                        int len, std::size_t budget) {
  if (image_prefix.empty()) fail(ErrorKind::InvalidInput, "image_branch_degree: empty prefix");
  int base_len = static_cast<int>(image_prefix.size()) + 1 + rule.window() - 1;
  if (len < base_len) len = base_len;
  LanguageTable table = language(tau, generating_fixed_point(tau), len, budget);

  std::set<Word> image_words;
  for (const Word& w : table.of_length(len)) image_words.insert(apply_code(rule, w));

  std::set<Letter> extensions;
  std::size_t want = image_prefix.size() + 1;
  for (const Word& img : image_words) {
    if (img.size() < want) continue;
    for (std::size_t p = 0; p + want <= img.size(); ++p) {
      if (img.compare(p + 1, image_prefix.size(), image_prefix) == 0)
        extensions.insert(img[p]);
    }
  }
  return static_cast<int>(extensions.size());
}

Word coded_fixed_point_prefix(const LocalRule& rule, const Substitution& tau, std::size_t n,
                              std::size_t budget) {
  LimitWord u = generating_fixed_point(tau);
  Word prefix = u.prefix(n + static_cast<std::size_t>(rule.window()), budget);
  return apply_code(rule, prefix);
}

Substitution rank_one(const std::vector<int>& blocks, const std::vector<int>& spacers) {
  if (blocks.empty()) fail(ErrorKind::InvalidInput, "rank_one: need at least one 0-block");
  if (spacers.size() + 1 != blocks.size())
    fail(ErrorKind::InvalidInput, "rank_one: need exactly one spacer count between consecutive blocks");
  for (int n : blocks)
    if (n <= 0) fail(ErrorKind::InvalidInput, "rank_one: nonpositive block exponent");
  for (int m : spacers)
    if (m <= 0) fail(ErrorKind::InvalidInput, "rank_one: nonpositive spacer exponent");

  Substitution tau;
  tau.alphabet = Alphabet({"0", "1"});
  Word img0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    img0.append(static_cast<std::size_t>(blocks[i]), Letter(0));
    if (i + 1 < blocks.size()) img0.append(static_cast<std::size_t>(spacers[i]), Letter(1));
  }
  tau.images = {img0, Word(1, Letter(1))};
  tau.validate();
  return tau;
}

Substitution perron_construct(int d, int lambda, int m) {
  if (d < 1 || lambda < 2 || m < 1) fail(ErrorKind::InvalidInput, "perron_construct: need d>=1, lambda>=2, m>=1");
  std::uint64_t lm = 1;
  for (int i = 0; i < m; ++i) {
    if (lm > (std::uint64_t(1) << 20)) fail(ErrorKind::Budget, "perron_construct: lambda^m too large");
    lm *= static_cast<std::uint64_t>(lambda);
  }
  if (lm < static_cast<std::uint64_t>(d) + 1)
    fail(ErrorKind::InvalidInput, "perron_construct: lambda^m - d must be positive");
  std::uint64_t mid = (lm - static_cast<std::uint64_t>(d)) * lm;

  Substitution tau;
  std::vector<std::string> glyphs;
  for (int i = 1; i <= d; ++i) glyphs.push_back(std::to_string(i));
  tau.alphabet = Alphabet(glyphs);
  for (int i = 1; i <= d; ++i) {
    Word img;
    for (int j = 1; j <= d - 1; ++j) img.append(lm, static_cast<Letter>(j - 1));
    int swing = d - i + 1;  // row i repeats letter d-i+1 in the middle block
    img.append(mid, static_cast<Letter>(swing - 1));
    img.append(lm, static_cast<Letter>(d - 1));
    tau.images.push_back(std::move(img));
  }
  tau.validate();
  return tau;
}

}  // namespace subshift
