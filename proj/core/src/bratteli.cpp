#include "subshift/bratteli.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace subshift {

void OrderedBratteli::validate() const {
  if (vertices.empty() || vertices[0].size() != 1)
    fail(ErrorKind::InvalidInput, "bratteli: level 0 must hold exactly the root");
  if (edges_in.size() != vertices.size())
    fail(ErrorKind::InvalidInput, "bratteli: edge table size mismatch");
  for (int n = 1; n <= depth(); ++n) {
    const auto& level = edges_in[static_cast<std::size_t>(n)];
    if (level.size() != vertices[static_cast<std::size_t>(n)].size())
      fail(ErrorKind::InvalidInput, "bratteli: vertex/edge mismatch at level " + std::to_string(n));
    std::vector<bool> used(vertices[static_cast<std::size_t>(n - 1)].size(), false);
    for (const auto& in : level) {
      if (in.empty())
        fail(ErrorKind::InvalidInput, "bratteli: vertex with empty r^-1 at level " + std::to_string(n));
      for (int s : in) {
        if (s < 0 || static_cast<std::size_t>(s) >= used.size())
          fail(ErrorKind::InvalidInput, "bratteli: dangling source at level " + std::to_string(n));
        used[static_cast<std::size_t>(s)] = true;
      }
    }
    for (bool u : used)
      if (!u) fail(ErrorKind::InvalidInput, "bratteli: vertex with empty s^-1 below level " + std::to_string(n));
  }
}

OrderedBratteli from_substitution(const Substitution& tau, int depth) {
  tau.validate();
  if (depth < 1) fail(ErrorKind::InvalidInput, "from_substitution: depth must be >= 1");
  OrderedBratteli b;
  b.stationary = tau;
  b.vertices.resize(static_cast<std::size_t>(depth) + 1);
  b.edges_in.resize(static_cast<std::size_t>(depth) + 1);
  b.vertices[0] = {"v0"};
  std::vector<std::string> letters;
  for (std::size_t a = 0; a < tau.letters(); ++a) letters.push_back(tau.alphabet.glyph(static_cast<Letter>(a)));
  for (int n = 1; n <= depth; ++n) {
    b.vertices[static_cast<std::size_t>(n)] = letters;
    auto& level = b.edges_in[static_cast<std::size_t>(n)];
    level.resize(tau.letters());
    for (std::size_t a = 0; a < tau.letters(); ++a) {
      if (n == 1) {
        level[a] = {0};
      } else {
        for (Letter bsrc : tau.images[a]) level[a].push_back(static_cast<int>(bsrc));
      }
    }
  }
  b.validate();
  return b;
}

OrderedBratteli telescope(const OrderedBratteli& b, const std::vector<int>& retained) {
  if (retained.empty() || retained[0] != 0)
    fail(ErrorKind::InvalidInput, "telescope: retained levels must start at 0");
  for (std::size_t i = 1; i < retained.size(); ++i)
    if (retained[i] <= retained[i - 1] || retained[i] > b.depth())
      fail(ErrorKind::InvalidInput, "telescope: retained levels must be strictly increasing and within depth");

  OrderedBratteli out;
  out.vertices.reserve(retained.size());
  out.edges_in.resize(retained.size());
  for (int lvl : retained) out.vertices.push_back(b.vertices[static_cast<std::size_t>(lvl)]);

  for (std::size_t k = 1; k < retained.size(); ++k) {
    int lo = retained[k - 1], hi = retained[k];
    auto& level = out.edges_in[k];
    level.resize(out.vertices[k].size());
    // Composed paths ordered lexicographically, top edge most significant.
    std::function<void(int, int, std::vector<int>&)> emit = [&](int lvl, int v, std::vector<int>& into) {
      if (lvl == lo) {
        into.push_back(v);
        return;
      }
      int deg = b.indegree(lvl, v);
      for (int i = 1; i <= deg; ++i) emit(lvl - 1, b.source_of(lvl, v, i), into);
    };
    for (std::size_t v = 0; v < level.size(); ++v) emit(hi, static_cast<int>(v), level[v]);
  }
  if (retained.size() == b.vertices.size()) out.stationary = b.stationary;
  out.validate();
  return out;
}

OrderedBratteli split(const OrderedBratteli& b, int level) {
  if (level < 1 || level > b.depth()) fail(ErrorKind::InvalidInput, "split: level out of range");
  OrderedBratteli out;
  std::size_t lvl = static_cast<std::size_t>(level);
  out.vertices.assign(b.vertices.begin(), b.vertices.begin() + static_cast<std::ptrdiff_t>(lvl));
  out.edges_in.assign(b.edges_in.begin(), b.edges_in.begin() + static_cast<std::ptrdiff_t>(lvl));

  // One new vertex per edge of E_level, each with a single edge down and a
  // single edge up, preserving the old order above.
  std::vector<std::string> mid_names;
  std::vector<std::vector<int>> mid_in;
  std::vector<std::vector<int>> upper_in(b.vertices[lvl].size());
  for (std::size_t v = 0; v < b.vertices[lvl].size(); ++v) {
    int deg = b.indegree(level, static_cast<int>(v));
    for (int i = 1; i <= deg; ++i) {
      mid_names.push_back(b.vertices[lvl][v] + "." + std::to_string(i));
      mid_in.push_back({b.source_of(level, static_cast<int>(v), i)});
      upper_in[v].push_back(static_cast<int>(mid_names.size()) - 1);
    }
  }
  out.vertices.push_back(std::move(mid_names));
  out.edges_in.push_back(std::move(mid_in));
  out.vertices.push_back(b.vertices[lvl]);
  out.edges_in.push_back(std::move(upper_in));
  for (std::size_t n = lvl + 1; n < b.vertices.size(); ++n) {
    out.vertices.push_back(b.vertices[n]);
    out.edges_in.push_back(b.edges_in[n]);
  }
  out.validate();
  return out;
}

ExtremalPaths extremal_paths(const OrderedBratteli& b) {
  if (!b.stationary)
    fail(ErrorKind::InvalidInput,
         "extremal_paths: eventually-periodic descriptions need a stationary diagram");
  const Substitution& tau = *b.stationary;
  ExtremalPaths out;

  auto describe = [&](const FunctionalGraph& g) {
    std::vector<ExtremalPaths::PathDescription> paths;
    for (const auto& cycle : g.cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        // Walking upward follows the cycle backwards: the vertex above c is
        // the cycle element mapping to c.
        ExtremalPaths::PathDescription d;
        d.anchor = tau.alphabet.glyph(cycle[i]);
        for (std::size_t step = 0; step < cycle.size(); ++step) {
          std::size_t idx = (i + cycle.size() - step % cycle.size()) % cycle.size();
          d.cycle.push_back(tau.alphabet.glyph(cycle[(idx) % cycle.size()]));
        }
        paths.push_back(std::move(d));
      }
    }
    std::sort(paths.begin(), paths.end(),
              [](const auto& x, const auto& y) { return x.anchor < y.anchor; });
    return paths;
  };

  out.min_paths = describe(prefix_graph(tau));
  out.max_paths = describe(suffix_graph(tau));
  out.semi_proper = out.min_paths.size() == 1;
  return out;
}

PathTruncation minimal_truncation(const OrderedBratteli& b, int depth, int top_vertex) {
  if (depth < 1 || depth > b.depth()) fail(ErrorKind::InvalidInput, "minimal_truncation: bad depth");
  PathTruncation p;
  p.edges.resize(static_cast<std::size_t>(depth));
  int v = top_vertex;
  for (int n = depth; n >= 1; --n) {
    p.edges[static_cast<std::size_t>(n - 1)] = PathTruncation::Edge{v, 1};
    v = b.source_of(n, v, 1);
  }
  return p;
}

bool all_maximal(const OrderedBratteli& b, const PathTruncation& p) {
  for (std::size_t n = 1; n <= p.edges.size(); ++n) {
    const auto& e = p.edges[n - 1];
    if (e.order != b.indegree(static_cast<int>(n), e.vertex)) return false;
  }
  return true;
}

bool all_minimal(const OrderedBratteli&, const PathTruncation& p) {
  for (const auto& e : p.edges)
    if (e.order != 1) return false;
  return true;
}

std::optional<PathTruncation> successor(const OrderedBratteli& b, const PathTruncation& p) {
  int depth = static_cast<int>(p.edges.size());
  int k = 0;
  for (int n = 1; n <= depth; ++n) {
    if (p.edges[static_cast<std::size_t>(n - 1)].order <
        b.indegree(n, p.edges[static_cast<std::size_t>(n - 1)].vertex)) {
      k = n;
      break;
    }
  }
  if (k == 0) return std::nullopt;
  PathTruncation out = p;
  auto& ek = out.edges[static_cast<std::size_t>(k - 1)];
  ek.order += 1;
  int v = b.source_of(k, ek.vertex, ek.order);
  for (int n = k - 1; n >= 1; --n) {
    out.edges[static_cast<std::size_t>(n - 1)] = PathTruncation::Edge{v, 1};
    v = b.source_of(n, v, 1);
  }
  return out;
}

OrderedBratteli add_tower_edges(const OrderedBratteli& b, const std::map<std::string, int>& extra) {
  OrderedBratteli out = b;
  for (const auto& [name, count] : extra) {
    if (count < 0) fail(ErrorKind::InvalidInput, "add_tower_edges: negative edge count");
    auto& names = out.vertices[1];
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      fail(ErrorKind::InvalidInput, "add_tower_edges: unknown level-1 vertex '" + name + "'");
    std::size_t v = static_cast<std::size_t>(it - names.begin());
    for (int i = 0; i < count; ++i) out.edges_in[1][v].push_back(0);
  }
  out.validate();
  return out;
}

namespace {

std::string dot_id(int level, const std::string& name) {
  std::string out = "L" + std::to_string(level) + "_";
  for (char c : name) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

}  // namespace

std::string to_dot(const OrderedBratteli& b, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  os << "  rankdir=TB;\n  node [shape=circle, fontsize=10];\n";
  for (int n = 0; n <= b.depth(); ++n) {
    os << "  { rank=same;";
    for (const auto& v : b.vertices[static_cast<std::size_t>(n)])
      os << " " << dot_id(n, v) << " [label=\"" << v << "\"];";
    os << " }\n";
  }
  for (int n = 1; n <= b.depth(); ++n) {
    const auto& level = b.edges_in[static_cast<std::size_t>(n)];
    for (std::size_t v = 0; v < level.size(); ++v)
      for (std::size_t i = 0; i < level[v].size(); ++i)
        os << "  " << dot_id(n - 1, b.vertices[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(level[v][i])])
           << " -> " << dot_id(n, b.vertices[static_cast<std::size_t>(n)][v]) << " [label=\"" << (i + 1)
           << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

PathTruncation truncation_at(const Substitution& tau, const Word& u_prefix, std::size_t t,
                             int depth) {
  if (t >= u_prefix.size()) fail(ErrorKind::InvalidInput, "truncation_at: prefix too short");
  // Block index of position t in the tau^(m-1)-tiling of u, per level.
  std::vector<std::uint64_t> block(static_cast<std::size_t>(depth) + 1, 0);
  std::vector<std::vector<std::uint64_t>> lens;  // lens[m][a] = |tau^m(a)|
  lens.push_back(std::vector<std::uint64_t>(tau.letters(), 1));
  for (int m = 1; m < depth; ++m) {
    std::vector<std::uint64_t> next(tau.letters(), 0);
    for (std::size_t a = 0; a < tau.letters(); ++a)
      for (Letter c : tau.images[a]) next[a] += lens.back()[static_cast<std::size_t>(c)];
    lens.push_back(std::move(next));
  }
  for (int m = 1; m <= depth; ++m) {
    const auto& len = lens[static_cast<std::size_t>(m - 1)];
    std::uint64_t acc = 0;
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < u_prefix.size(); ++i) {
      std::uint64_t step = len[static_cast<std::size_t>(u_prefix[i])];
      if (acc + step > t) { idx = i; break; }
      acc += step;
      idx = i + 1;
    }
    block[static_cast<std::size_t>(m)] = idx;
  }

  PathTruncation p;
  p.edges.resize(static_cast<std::size_t>(depth));
  p.edges[0] = PathTruncation::Edge{static_cast<int>(u_prefix[t]), 1};
  for (int m = 2; m <= depth; ++m) {
    std::uint64_t bm = block[static_cast<std::size_t>(m)];
    std::uint64_t bprev = block[static_cast<std::size_t>(m - 1)];
    // First (m-1)-block inside m-block bm = cumulative tau-image length of
    // u's first bm letters.
    std::uint64_t first = 0;
    for (std::uint64_t r = 0; r < bm; ++r) first += tau.image(u_prefix[static_cast<std::size_t>(r)]).size();
    Letter vertex = u_prefix[static_cast<std::size_t>(bm)];
    int order = static_cast<int>(bprev - first) + 1;
    if (order < 1 || order > static_cast<int>(tau.image(vertex).size()) ||
        tau.image(vertex)[static_cast<std::size_t>(order - 1)] != u_prefix[static_cast<std::size_t>(bprev)])
      fail(ErrorKind::Internal, "truncation_at: tower coordinates are inconsistent");
    p.edges[static_cast<std::size_t>(m - 1)] = PathTruncation::Edge{static_cast<int>(vertex), order};
  }
  return p;
}

ConjugacyReport conjugacy_check(const Substitution& tau, const OrderedBratteli& b, int depth,
                                int steps, std::size_t budget) {
  ConjugacyReport rep;
  rep.depth = depth;
  rep.steps = steps;
  if (!b.stationary || !(b.stationary->alphabet == tau.alphabet) || b.stationary->images != tau.images) {
    rep.inconclusive = true;
    rep.note = "diagram is not the stationary diagram of the given substitution";
    return rep;
  }
  if (depth > b.depth()) {
    rep.inconclusive = true;
    rep.note = "diagram shallower than the requested depth";
    return rep;
  }
  LimitWord u = generating_fixed_point(tau);
  if (u.power != 1) {
    rep.inconclusive = true;
    rep.note = "generating fixed point has period " + std::to_string(u.power) +
               "; the tower replay needs a tau-fixed point";
    return rep;
  }
  Word prefix = u.prefix(static_cast<std::size_t>(steps) + 2, std::max(budget, static_cast<std::size_t>(steps) + 2));

  PathTruncation cur = truncation_at(tau, prefix, 0, depth);
  for (int t = 0; t < steps; ++t) {
    PathTruncation next = truncation_at(tau, prefix, static_cast<std::size_t>(t) + 1, depth);
    bool ok;
    if (auto s = successor(b, cur)) {
      ok = *s == next;
    } else {
      ok = all_minimal(b, next);  // V_B(x_max) = x_min
    }
    if (!ok) {
      rep.disagreements += 1;
      if (!rep.first_disagreement) rep.first_disagreement = t;
    }
    cur = std::move(next);
  }
  return rep;
}

}  // namespace subshift
