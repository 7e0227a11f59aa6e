#ifndef SUBSHIFT_BRANCHPOINTS_HPP
#define SUBSHIFT_BRANCHPOINTS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subshift/words.hpp"

namespace subshift {

// The (A_k, s_k) iteration: s_k is the maximal proper common suffix of
// {tau(a) : a in A_k} and A_{k+1} the set of s_k-predecessor letters.
struct SuffixTrace {
  std::vector<Letter> a1;

  struct Step {
    std::vector<Letter> set;  // A_k (sorted)
    Word suffix;              // s_k
  };
  std::vector<Step> steps;  // steps[k-1] = (A_k, s_k)

  enum class Status { Fizzled, Cyclic } status = Status::Fizzled;
  enum class FizzleReason { None, EmptySuffix, PredecessorCollapse } fizzle_reason =
      FizzleReason::None;
  int fizzle_step = 0;   // k at which the trace died
  int cycle_start = 0;   // first k of the cycle (1-based)
  int cycle_period = 0;

  // s_k for arbitrary k >= 1 of a cyclic trace, extending periodically.
  const Word& suffix_at(int k) const;
  const std::vector<Letter>& set_at(int k) const;
  bool constant_suffix() const;  // cyclic with every recorded s_k equal
};

SuffixTrace suffix_trace(const Substitution& tau, std::vector<Letter> a1);

// Maximal proper common suffix of {tau^n(a) : a in A1}, computed both
// directly on materialized images and via the telescoped product
// S_n = s_n tau(s_{n-1}) ... tau^{n-1}(s_1); the two must agree.
struct DualSuffix {
  Word direct;
  Word closed_form;
  bool direct_available = true;  // false when materialization blew the budget
  bool closed_form_available = true;  // false when the trace fizzles before n
  bool agree = true;
};

DualSuffix common_suffix_S(const Substitution& tau, const std::vector<Letter>& a1, int n,
                           std::size_t budget = kDefaultExpandBudget);

struct BranchPoint {
  LimitWord limit;
  int degree = 0;                  // M = number of left extensions
  std::vector<Letter> extensions;  // the M extension letters
  bool is_fixed_point = false;
  Word fixed_seed;                 // seed word of the matched fixed point
  int fixed_power = 0;
  bool possibly_equal = false;     // merged by bounded prefix comparison only
  std::vector<std::string> evidence;
};

struct BranchOptions {
  std::size_t compare_len = 4096;  // dedup prefix length L_cmp
  int language_len = 8;            // table length for preimage / admissibility tests
  std::size_t budget = kDefaultExpandBudget;
  int decorated_cap = 12;          // max bounded-letter prefix length explored
};

// All branch points: cyclic suffix traces contribute the non-fixed ones
// (one per cycle phase, deduped by prefix comparison) and fixed points with
// two or more sigma-preimages contribute the rest.
std::vector<BranchPoint> branch_points(const Substitution& tau, const BranchOptions& opt = {});

struct PreimageCount {
  int count = 0;                      // window-certified sigma-preimage count
  std::vector<Letter> letters;        // extension letters
  std::vector<Letter> cycle_letters;  // letters passing the suffix-cycle criterion
  bool criteria_agree = true;         // direct window count vs cycle criterion
};

// Sigma-preimages of a fixed point: letters alpha on a suffix-graph cycle
// with alpha u_0 in the language (the cycle criterion), cross-checked by the
// direct test alpha . prefix(u) in the table.
PreimageCount preimage_count(const Substitution& tau, const LimitWord& fixed,
                             const LanguageTable& table);

struct QuasiVerdict {
  bool is_quasi_invertible = false;
  int degree = 0;  // M of the unique branch point when quasi-invertible
  std::optional<BranchPoint> branch;
  std::vector<BranchPoint> all_branch_points;
  std::string note;
};

QuasiVerdict quasi_invertibility(const Substitution& tau, const BranchOptions& opt = {});

// Fixed points of tau^q for every prefix-cycle seed, including bounded-letter
// decorations b^j . u (tau(b) = b) admissible in the language table.
struct FixedPointInfo {
  LimitWord point;
  Word name_seed;   // decorating prefix + cycle letter
  int power = 1;
  bool decorated = false;
};
std::vector<FixedPointInfo> all_fixed_points(const Substitution& tau, const LanguageTable& table,
                                             int decorated_cap = 12);

// W_n = {sigma^k(tau^n(a)) : 0 < k < |tau^n(a)|} with r(w) = #{alpha : alpha w in W_n}.
struct WnOracle {
  int n = 0;
  std::map<Word, int> r;  // proper tail -> r(w)
};

WnOracle wn_oracle(const Substitution& tau, int n, std::size_t budget = kDefaultExpandBudget);

}  // namespace subshift

#endif
