#ifndef SUBSHIFT_BRATTELI_HPP
#define SUBSHIFT_BRATTELI_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subshift/words.hpp"

namespace subshift {

// Finite materialization of an ordered Bratteli diagram.  Level 0 is the
// root; edges_in[n][v] lists the source vertices of the edges into vertex v
// at level n, position = order index - 1.
struct OrderedBratteli {
  std::vector<std::vector<std::string>> vertices;         // per level, names
  std::vector<std::vector<std::vector<int>>> edges_in;    // [level][vertex] -> ordered sources
  std::optional<Substitution> stationary;                 // generator when built from one

  int depth() const { return static_cast<int>(vertices.size()) - 1; }
  int indegree(int level, int v) const {
    return static_cast<int>(edges_in[static_cast<std::size_t>(level)][static_cast<std::size_t>(v)].size());
  }
  int source_of(int level, int v, int order) const {  // order is 1-based
    return edges_in[static_cast<std::size_t>(level)][static_cast<std::size_t>(v)]
                   [static_cast<std::size_t>(order - 1)];
  }
  void validate() const;
};

// Stationary diagram of a substitution: V_n = alphabet for n >= 1, one root
// edge per level-1 vertex, and an edge b -> a at level n >= 2 with order i
// iff tau(a)_i = b.
OrderedBratteli from_substitution(const Substitution& tau, int depth);

// Telescoping to the retained levels (must begin with 0, strictly
// increasing); composed edges are ordered lexicographically with the top
// edge most significant.
OrderedBratteli telescope(const OrderedBratteli& b, const std::vector<int>& retained);

// Splitting inserts a level between level-1 and level of B, one new vertex
// per edge, each carrying exactly one incoming and one outgoing edge.
OrderedBratteli split(const OrderedBratteli& b, int level);

struct ExtremalPaths {
  // Eventually periodic vertex descriptions, bottom-up: entry i names the
  // vertex at level i+1, repeating with the stated period.
  struct PathDescription {
    std::vector<std::string> cycle;
    std::string anchor;  // level-1 vertex
  };
  std::vector<PathDescription> min_paths, max_paths;
  bool semi_proper = false;
};

// Stationary diagrams only: minimal paths correspond to prefix-graph cycles
// and maximal paths to suffix-graph cycles of the generator.
ExtremalPaths extremal_paths(const OrderedBratteli& b);

// A depth-n path from the root: per level the (vertex, order) of the chosen
// edge; sources must chain.
struct PathTruncation {
  struct Edge {
    int vertex;  // range vertex index at this level
    int order;   // 1-based order within E_n(vertex)
    bool operator==(const Edge&) const = default;
  };
  std::vector<Edge> edges;  // level 1..n

  bool operator==(const PathTruncation&) const = default;
};

PathTruncation minimal_truncation(const OrderedBratteli& b, int depth, int top_vertex);
bool all_maximal(const OrderedBratteli& b, const PathTruncation& p);
bool all_minimal(const OrderedBratteli& b, const PathTruncation& p);
// Vershik successor on truncations; nullopt when the input is all-maximal
// (the infinite map then wraps to the minimal path).
std::optional<PathTruncation> successor(const OrderedBratteli& b, const PathTruncation& p);

// Adds extra root edges (source v0) to level-1 vertices, ordered after the
// existing ones; keys are level-1 vertex names.
OrderedBratteli add_tower_edges(const OrderedBratteli& b, const std::map<std::string, int>& extra);

std::string to_dot(const OrderedBratteli& b, const std::string& name = "bratteli");

struct ConjugacyReport {
  int depth = 0;
  int steps = 0;
  int disagreements = 0;
  std::optional<int> first_disagreement;
  bool inconclusive = false;
  std::string note;
};

// Replays `steps` points of the orbit of the generating fixed point through
// the tower coordinates of the diagram and checks F(sigma(y)) =
// V_B(F(y)) at truncation depth `depth` (all-maximal truncations must be
// followed by the all-minimal one).
ConjugacyReport conjugacy_check(const Substitution& tau, const OrderedBratteli& b, int depth,
                                int steps, std::size_t budget = kDefaultExpandBudget);

// Tower coordinates of sigma^t(u) down to `depth` levels, exposed for tests:
// (vertex letter, offset) per level m with offset < |tau^{m-1}(letter)|.
struct TowerCoordinates {
  struct Level {
    Letter vertex;
    std::uint64_t offset;
  };
  std::vector<Level> levels;
};

PathTruncation truncation_at(const Substitution& tau, const Word& u_prefix, std::size_t t,
                             int depth);

}  // namespace subshift

#endif
