#ifndef SUBSHIFT_CODINGS_HPP
#define SUBSHIFT_CODINGS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subshift/words.hpp"

namespace subshift {

// A local rule phi on windows of length left+1+right over the source
// alphabet, output aligned to the window start (one-sided convention).
struct LocalRule {
  Alphabet source;
  Alphabet target;
  int left_radius = 1;
  int right_radius = 1;
  std::map<Word, Letter> table;

  int window() const { return left_radius + 1 + right_radius; }
};

// Rule file format: optional "radius: L R" line, then lines "aaa -> x".
// Window words follow the substitution word syntax over `source`; targets
// are free glyph tokens collected into the rule's own alphabet.
LocalRule parse_rule(std::string_view text, const Alphabet& source);
LocalRule load_rule(const std::string& path, const Alphabet& source);

// phi applied to every window of w; output length |w| - window + 1.
// Missing windows name the offending word in an InvalidInput error.
Word apply_code(const LocalRule& rule, WordView w);

struct InjectivityVerdict {
  bool injective = false;
  int len = 0;
  // Distinct equal-image words with an interior difference, when found.
  std::optional<std::pair<Word, Word>> witness;
  std::size_t words_checked = 0;
};

// Exhaustive check on length-len language words: the coded map is injective
// when no two distinct words with equal images differ at a position having a
// full window margin on both sides.
InjectivityVerdict injectivity_check(const LocalRule& rule, const Substitution& tau, int len,
                                     std::size_t budget = kDefaultExpandBudget);

// Number of left extensions of `image_prefix` inside the coded language
// (image words derived from language words of length len + window - 1).
int image_branch_degree(const LocalRule& rule, const Substitution& tau, const Word& image_prefix,
                        int len, std::size_t budget = kDefaultExpandBudget);

// Image of the generating fixed point under the rule, truncated to n letters.
Word coded_fixed_point_prefix(const LocalRule& rule, const Substitution& tau, std::size_t n,
                              std::size_t budget = kDefaultExpandBudget);

// Minimal rank-one substitutions tau(0) = 0^{n_1} 1^{m_1} ... 0^{n_k},
// tau(1) = 1.
Substitution rank_one(const std::vector<int>& blocks, const std::vector<int>& spacers);

// The d-letter family with rational Perron value lambda^m used for the
// orbit-equivalence construction; every composition-matrix row sums to
// lambda^{2m}.
Substitution perron_construct(int d, int lambda, int m);

}  // namespace subshift

#endif
