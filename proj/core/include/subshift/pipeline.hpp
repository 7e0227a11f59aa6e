#ifndef SUBSHIFT_PIPELINE_HPP
#define SUBSHIFT_PIPELINE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subshift/bratteli.hpp"
#include "subshift/branchpoints.hpp"
#include "subshift/recognition.hpp"
#include "subshift/returns.hpp"
#include "subshift/star.hpp"
#include "subshift/words.hpp"

namespace subshift {

struct PipelineOptions {
  int l_max = 64;                  // recognizability word-length bound
  std::size_t scan = 1'000'000;    // recognizability scan window
  std::size_t budget = 1'000'000;  // expansion budget
  std::size_t compare_len = 4096;  // branch-point dedup prefix
  int language_len = 20;           // language-equality length
  int diagram_depth = 6;
  int conjugacy_depth = 5;
  int conjugacy_steps = 500;

  // Scales every window/budget by the given factor (CLI --budget).
  void scale(double factor);
};

// Every stage the analysis ran, in proof-chain order; a failed gate leaves
// the later stages empty and `halted_at` named.
struct AnalysisReport {
  Substitution input;
  PipelineOptions options;

  Classification classification;
  std::optional<RecognizabilityVerdict> recognizability;
  std::optional<QuasiVerdict> quasi;

  enum class Route { Halted, Direct, ViaStar, Induced } route = Route::Halted;
  std::string halted_at;  // failed hypothesis, empty when the pipeline ran through

  std::optional<StarResult> star;
  std::optional<StarIdentityReport> star_identities;
  std::optional<LanguageEqualityReport> star_language;

  std::optional<ReturnSystem> returns;
  std::optional<Tau1Report> tau1_report;
  std::vector<int> tower_heights;
  int tower_edges_added = -1;           // -1: stage not reached
  std::map<std::string, int> tower_edges_per_vertex;

  std::optional<OrderedBratteli> diagram;
  std::string diagram_of;  // which substitution the diagram represents
  std::optional<ConjugacyReport> conjugacy;

  bool completed() const { return halted_at.empty(); }
};

AnalysisReport pipeline(const Substitution& tau, const PipelineOptions& opt = {});

// Deterministic JSON rendering of a report ("schema": 1); byte-identical
// across runs for fixed input and options.
std::string report_json(const AnalysisReport& report);
// Human-readable summary.
std::string report_text(const AnalysisReport& report);

}  // namespace subshift

#endif
