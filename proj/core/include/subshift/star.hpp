#ifndef SUBSHIFT_STAR_HPP
#define SUBSHIFT_STAR_HPP

#include <optional>
#include <string>
#include <vector>

#include "subshift/words.hpp"

namespace subshift {

// tau(a_i) = p_i x_i s1 for every letter; tau*(a_i) = s1 p_i x_i.
struct StarDecomposition {
  Word s1;
  std::vector<Word> stems;     // p_i per letter
  std::vector<Letter> marks;   // x_i per letter (at least two distinct)
};

struct StarResult {
  Substitution star;
  StarDecomposition decomposition;
  int power = 1;  // tau was replaced by tau^power to make the trace constant
};

// Rotated substitution for the constant-suffix case: requires the full
// alphabet's suffix trace to be s1, s1, s1, ... (taking a power of tau when
// only eventually constant).  Not-applicable inputs raise a Gate error
// directing the caller to candidate verification.
StarResult tau_star(const Substitution& tau, int max_power = 0);

struct StarIdentityReport {
  bool ok = true;
  int n_max = 0;
  // identity 1: tau*(tau^n(w)) s1 = s1 tau^{n+1}(w)
  // identity 2: S_n = tau*(S_{n-1}) s1
  // identity 3: (tau*)^{n-1}(s1) is a prefix of S_n
  bool identity1 = true, identity2 = true, identity3 = true;
  std::string counterexample;
};

StarIdentityReport verify_star_identities(const Substitution& tau, const Substitution& star,
                                          const Word& s1, int n_max,
                                          std::size_t budget = kDefaultExpandBudget);

struct StarCandidateReport {
  bool fixed_point_ok = false;  // tau*(y) = y on the verified prefix
  std::size_t verified_prefix = 0;
  bool left_proper = false;
  std::string note;
};

// Verification path for user-supplied tau* candidates (non-constant-suffix
// inputs): checks tau*(y) = y against the branch point's expansion.
StarCandidateReport verify_star_candidate(const Substitution& tau, const Substitution& star,
                                          const LimitWord& branch, std::size_t prefix_len);

struct LanguageEqualityReport {
  bool equal = false;
  bool inconclusive = false;  // one of the tables failed to certify
  int len = 0;
  std::vector<Word> only_left, only_right;
};

LanguageEqualityReport language_equality(const Substitution& tau, const Substitution& star,
                                         int len, std::size_t budget = kDefaultExpandBudget);

}  // namespace subshift

#endif
