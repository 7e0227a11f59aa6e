#ifndef SUBSHIFT_RETURNS_HPP
#define SUBSHIFT_RETURNS_HPP

#include <optional>
#include <string>
#include <vector>

#include "subshift/branchpoints.hpp"
#include "subshift/recognition.hpp"
#include "subshift/words.hpp"

namespace subshift {

// Ordered return words to `base` in the scanned sequence, indexed 1..|R| in
// order of first appearance; psi maps indices to words, tau1 is the induced
// substitution once computed.
struct ReturnSystem {
  Word base;
  LimitWord source;
  std::vector<Word> words;  // psi(j) = words[j-1]
  bool certified = false;
  std::size_t window = 0;
  std::optional<Substitution> tau1;

  const Word& psi(int j) const { return words[static_cast<std::size_t>(j - 1)]; }
  std::optional<int> index_of(WordView w) const;
};

// Scans the expansion of u for return words to `base` (occurrence-to-next-
// occurrence blocks), stabilizing over a doubling window like language().
ReturnSystem return_words(const Substitution& tau, const LimitWord& u, const Word& base,
                          std::size_t budget = kDefaultExpandBudget);

// Greedy (provably unique) parse of tau(psi(j)) into return words; parse
// failures signal an unstabilized R and raise Internal errors.
Substitution induce(const Substitution& tau, ReturnSystem& rs);

// Coding and decoding between index sequences and cylinder words.
std::vector<int> psi_code(const ReturnSystem& rs, WordView w);
Word psi_decode(const ReturnSystem& rs, const std::vector<int>& seq);
// First n indices of D(u).
std::vector<int> coding_prefix(const ReturnSystem& rs, std::size_t n,
                               std::size_t budget = kDefaultExpandBudget);

// The tower over the cylinder [inducing]: heights are first-return times,
// atoms U_k^i for 0 <= i < k.
struct TowerPartition {
  Word inducing;
  int max_height = 0;
  std::vector<int> heights;  // per return word, in R order
  struct Atom {
    int height;
    int offset;
  };
  std::vector<Atom> atoms;
};

// `carrier` must contain the branch point (checked by prefix when a verdict
// is supplied); the paper's hypothesis violations raise Gate errors.
TowerPartition tower_partition(const Substitution& tau, const Word& inducing,
                               const LanguageTable& table,
                               const QuasiVerdict* verdict = nullptr,
                               std::size_t budget = kDefaultExpandBudget);

struct PartitionCheck {
  bool covers = true;
  bool disjoint = true;
  int len = 0;
  std::string counterexample;
};

// Word-level verification that the atoms cover and are disjoint at length
// `len`: every long-enough word lies in exactly one atom.
PartitionCheck verify_partition(const TowerPartition& tp, const Substitution& tau,
                                const LanguageTable& table, int len);

struct Tau1Report {
  Classification classification;
  RecognizabilityVerdict recognizability;
  QuasiVerdict quasi;
  int left_proper_power = 0;  // smallest k <= |R|+1 with tau1^k left proper, 0 if none
  bool degree_consistent = true;  // M matches tau's verdict when both quasi-invertible
  std::string note;
};

Tau1Report tau1_properties(const Substitution& tau, const Substitution& tau1,
                           const QuasiVerdict& tau_verdict);

}  // namespace subshift

#endif
