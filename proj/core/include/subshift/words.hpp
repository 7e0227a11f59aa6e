#ifndef SUBSHIFT_WORDS_HPP
#define SUBSHIFT_WORDS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subshift/errors.hpp"

namespace subshift {

// Letters are canonical indices 0..n-1; display glyphs live in Alphabet and
// are resolved once at parse time.  Words are u32strings of letter indices,
// which gives exact comparison, substring search and hashing for free.
using Letter = char32_t;
using Word = std::u32string;
using WordView = std::u32string_view;

constexpr std::size_t kDefaultExpandBudget = 1'000'000;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> glyphs);

  std::size_t size() const { return glyphs_.size(); }
  const std::string& glyph(Letter a) const;
  std::optional<Letter> find(std::string_view glyph) const;
  bool single_char() const { return single_char_; }

  // Renders a word with the alphabet's glyphs; spaced when any glyph is
  // longer than one character.
  std::string format(WordView w) const;
  // Accepts either a contiguous run of single-character glyphs or
  // whitespace-separated glyph tokens.
  Word parse_word(std::string_view text) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> glyphs_;
  std::map<std::string, Letter, std::less<>> index_;
  bool single_char_ = true;
};

struct Substitution {
  Alphabet alphabet;
  std::vector<Word> images;  // one nonempty image per letter

  const Word& image(Letter a) const { return images[static_cast<std::size_t>(a)]; }
  std::size_t letters() const { return images.size(); }

  // Morphism extension to words; empty in, empty out.
  Word apply(WordView w) const;
  // tau^n(w) with a hard cap on the expanded length.
  Word iterate(WordView w, int n, std::size_t max_len = kDefaultExpandBudget) const;
  Word iterate_letter(Letter a, int n, std::size_t max_len = kDefaultExpandBudget) const;

  Substitution power(int k) const;

  // Row a holds the number of occurrences of each letter in tau(a).
  std::vector<std::vector<std::uint64_t>> composition_matrix() const;
  // |tau^n(a)| for every letter, exact in 64 bits or Budget error.
  std::vector<std::uint64_t> iterate_lengths(int n) const;

  std::string format() const;

  void validate() const;  // throws InvalidInput on structural violations
};

// Substitution text format:
//   alphabet: a b c
//   a -> aac
//   b -> bcc
//   c -> abc
// '#' starts a comment.  Images may also be written space-separated
// ("a -> a a c"), which is required when glyphs have several characters.
Substitution parse_substitution(std::string_view text);
Substitution load_substitution(const std::string& path);

// ---------------------------------------------------------------------------
// Functional graphs on letters (first / last letter of the image).

struct FunctionalGraph {
  std::vector<Letter> next;           // next[a] = image of a
  std::vector<bool> on_cycle;         // letters lying on a cycle
  std::vector<std::vector<Letter>> cycles;  // each cycle in traversal order

  bool is_on_cycle(Letter a) const { return on_cycle[static_cast<std::size_t>(a)]; }
  const std::vector<Letter>* cycle_of(Letter a) const;
  std::vector<Letter> cycle_letters() const;
};

FunctionalGraph prefix_graph(const Substitution& tau);
FunctionalGraph suffix_graph(const Substitution& tau);

// ---------------------------------------------------------------------------
// Fixed points of powers of tau.

struct FixedSeed {
  Letter letter;  // l with l a prefix of tau^period(l)
  int period;     // cycle length q of the prefix graph
  bool growing;   // |tau^n(l)| unbounded
};

std::vector<FixedSeed> fixed_seeds(const Substitution& tau);

// A lazily expandable one-sided sequence: the unique y with
// y = prepend . tau^power(y) and y starting with seed.  Fixed points use an
// empty prepend (y = tau^q(y), seed = the cycle letter, possibly decorated
// with a bounded prefix).
struct LimitWord {
  Substitution subst;
  Word prepend;
  int power = 1;
  Word seed;

  // Pure expansion; never returns fewer than min(n, budget) letters unless
  // the word fails to grow, which raises InvalidInput.
  Word prefix(std::size_t n, std::size_t budget = kDefaultExpandBudget) const;

  std::string equation() const;  // human-readable seed equation
};

LimitWord fixed_point(const Substitution& tau, const FixedSeed& seed);
// First growing seed in canonical letter order; Gate error when none exists.
LimitWord generating_fixed_point(const Substitution& tau);

// ---------------------------------------------------------------------------
// Finite language tables.

struct LanguageTable {
  int max_len = 0;
  bool certified = false;    // stabilized over a full recurrence window
  std::size_t window = 0;    // scanned prefix length
  std::set<Word> words;      // every word of length <= max_len in the language

  bool contains(WordView w) const { return words.count(Word(w)) != 0; }
  std::vector<Word> of_length(int len) const;
};

// Exact word set of length <= max_len, computed by expanding u until the set
// of length-max_len subwords stabilizes across a doubling sweep and every
// word recurs in the second half of the scan.  A non-certified table is
// returned (flagged) when the budget runs out first.
LanguageTable language(const Substitution& tau, const LimitWord& u, int max_len,
                       std::size_t budget = kDefaultExpandBudget);

// ---------------------------------------------------------------------------
// classify: properness / primitivity / growth / injectivity / minimality.

enum class MinimalVerdict {
  PrimitiveHenceMinimal,
  CertifiedAlmostPeriodicOnWindow,
  Unknown,
};

struct Classification {
  bool left_proper = false;
  bool right_proper = false;
  bool primitive = false;
  std::vector<Letter> growing;  // A_infinity
  std::vector<Letter> bounded;
  std::vector<Letter> unreachable;  // letters not reachable from the generating seed
  int injective_up_to = 0;          // largest k <= bound with tau^k injective on letters
  int injectivity_bound = 0;
  MinimalVerdict minimal_verdict = MinimalVerdict::Unknown;
  std::size_t window = 0;    // scan window backing the minimality certificate
  int window_word_len = 0;   // word length used for the bounded-gap check

  bool injective() const { return injective_up_to >= 1; }
};

struct ClassifyOptions {
  int injectivity_bound = 0;  // 0: use 3*|alphabet|
  int window_word_len = 8;    // length of words checked for bounded return gaps
  std::size_t budget = kDefaultExpandBudget;
};

Classification classify(const Substitution& tau, const ClassifyOptions& opt = {});

// ---------------------------------------------------------------------------
// Small word helpers shared across modules.

bool is_prefix(WordView p, WordView w);
bool is_suffix(WordView s, WordView w);
// Longest word that is a suffix of every input and proper in every input
// (empty when none).
Word max_proper_common_suffix(std::span<const Word> words);

}  // namespace subshift

#endif
