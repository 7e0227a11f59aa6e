#ifndef SUBSHIFT_RECOGNITION_HPP
#define SUBSHIFT_RECOGNITION_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "subshift/words.hpp"

namespace subshift {

// 1-cuttings of the fixed point u: E = {0} u {|tau(u_[0,p-1])| : p > 0}.
struct CutSet {
  std::size_t prefix_len = 0;
  std::vector<std::size_t> cuts;  // sorted, starts with 0, bounded by prefix_len

  bool is_cut(std::size_t pos) const;
};

CutSet cut_set(const Substitution& tau, const LimitWord& u, std::size_t prefix_len,
               std::size_t budget = kDefaultExpandBudget);

struct RecognizabilityWitness {
  int len = 0;       // |w|
  Word w;
  Letter a = 0, b = 0;  // tau(b) a proper suffix of tau(a)
  std::size_t pos_a = 0, pos_b = 0;  // occurrence starts of tau(a)w / tau(b)w in u
};

struct RecognizabilityVerdict {
  enum class Kind { RecognizableCertified, NotRecognizable, Inconclusive } kind =
      Kind::Inconclusive;
  int certified_len = 0;       // smallest witness-free L (positive certificate)
  int l_max = 0;
  std::size_t scan_window = 0;
  std::vector<RecognizabilityWitness> witnesses;  // one per L when not recognizable
  std::string note;
};

// Mosse-style test: for each L <= l_max search all length-L words w and all
// letter pairs (a, b) with tau(b) a proper suffix of tau(a) for occurrences
// of tau(a)w and tau(b)w in the scanned prefix of u sharing w's 1-cutting.
// One witness-free L certifies recognizability (window-limited); witnesses
// at every L yield NotRecognizable with the chain.
RecognizabilityVerdict recognizability_check(const Substitution& tau, const LimitWord& u,
                                             int l_max = 64, std::size_t scan_n = kDefaultExpandBudget);

struct Desubstitution {
  std::size_t offset;  // k with 0 <= k < |tau(x_0)|
  Word preimage;       // minimal x with w a factor of tau(x) at offset k
};

// All decompositions (k, x) of w as a factor of tau(x); requires w in the
// language (table membership) and keeps only x whose every subword of table
// length lies in the table.  Ordered by (offset, preimage).
std::vector<Desubstitution> desubstitute(const Substitution& tau, const Word& w,
                                         const LanguageTable& table);

}  // namespace subshift

#endif
