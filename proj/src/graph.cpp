#include "fdep/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "fdep/error.hpp"

namespace fdep {

std::vector<VertexIndex> VertexSet::members() const {
  std::vector<VertexIndex> out;
  out.reserve(size());
  forEach([&](VertexIndex v) { out.push_back(v); });
  return out;
}

bool IsValidVertexName(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Graph::Graph(std::vector<std::string> vertices,
             const std::vector<std::pair<std::string, std::string>>& edges)
    : names_(std::move(vertices)) {
  if (names_.size() > static_cast<std::size_t>(kMaxVertices)) {
    throw Error(ErrorKind::kInvalidGraph,
                "graph has " + std::to_string(names_.size()) +
                    " vertices; at most " + std::to_string(kMaxVertices) +
                    " are supported");
  }
  for (const auto& n : names_) {
    if (!IsValidVertexName(n)) {
      throw Error(ErrorKind::kInvalidGraph,
                  "invalid vertex name '" + n + "' (expected [a-z0-9_]+)");
    }
  }
  std::sort(names_.begin(), names_.end());
  if (auto dup = std::adjacent_find(names_.begin(), names_.end());
      dup != names_.end()) {
    throw Error(ErrorKind::kInvalidGraph, "duplicate vertex '" + *dup + "'");
  }
  adjacency_.assign(names_.size(), VertexSet());
  for (const auto& [x, y] : edges) {
    if (!hasVertex(x) || !hasVertex(y)) {
      throw Error(ErrorKind::kInvalidGraph,
                  "edge (" + x + "," + y + ") names an unknown vertex");
    }
    const VertexIndex i = index(x);
    const VertexIndex j = index(y);
    if (i == j) {
      throw Error(ErrorKind::kInvalidGraph, "loop on vertex '" + x + "'");
    }
    if (adjacency_[i].contains(j)) {
      throw Error(ErrorKind::kInvalidGraph,
                  "duplicate edge (" + x + "," + y + ")");
    }
    adjacency_[i] = adjacency_[i].with(j);
    adjacency_[j] = adjacency_[j].with(i);
  }
}

VertexIndex Graph::index(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) {
    throw Error(ErrorKind::kInvalidVertex,
                "unknown vertex '" + std::string(name) + "'");
  }
  return static_cast<VertexIndex>(it - names_.begin());
}

bool Graph::hasVertex(std::string_view name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

VertexSet Graph::setOf(const std::vector<std::string>& names) const {
  VertexSet s;
  for (const auto& n : names) s = s.with(index(n));
  return s;
}

VertexSet Graph::adj(VertexIndex v) const {
  if (v < 0 || v >= size()) {
    throw Error(ErrorKind::kInvalidVertex,
                "vertex index " + std::to_string(v) + " out of range");
  }
  return adjacency_[v];
}

VertexSet Graph::adjPlus(VertexIndex v) const { return adj(v).with(v); }

std::vector<std::pair<VertexIndex, VertexIndex>> Graph::edges() const {
  std::vector<std::pair<VertexIndex, VertexIndex>> out;
  for (VertexIndex v = 0; v < size(); ++v) {
    adjacency_[v].forEach([&](VertexIndex w) {
      if (v < w) out.emplace_back(v, w);
    });
  }
  return out;
}

int Graph::edgeCount() const {
  int twice = 0;
  for (const auto& a : adjacency_) twice += a.size();
  return twice / 2;
}

void Graph::checkSubset(VertexSet s) const {
  if (!s.subsetOf(all())) {
    throw Error(ErrorKind::kInvalidVertex,
                "vertex set contains indices outside the graph");
  }
}

std::string Graph::format(VertexSet s) const {
  if (s.empty()) return ".";
  std::string out;
  s.forEach([&](VertexIndex v) {
    if (!out.empty()) out += ',';
    out += names_.at(v);
  });
  return out;
}

VertexSet Border(const Graph& g, VertexSet u) {
  g.checkSubset(u);
  const VertexSet outside = g.all() - u;
  VertexSet result;
  u.forEach([&](VertexIndex v) {
    if (g.adj(v).intersects(outside)) result = result.with(v);
  });
  return result;
}

VertexSet CutBorders(const Graph& g, VertexSet u) {
  return Border(g, u) | Border(g, g.all() - u);
}

VertexSet AdjPlus(const Graph& g, VertexIndex v) { return g.adjPlus(v); }

std::vector<Cut> EnumerateCuts(const Graph& g, VertexSet constraint_a,
                               VertexSet constraint_c) {
  g.checkSubset(constraint_a);
  g.checkSubset(constraint_c);
  if (constraint_a.intersects(constraint_c)) {
    throw Error(ErrorKind::kNoValidCut,
                "cut constraints overlap on " +
                    g.format(constraint_a & constraint_c));
  }
  const VertexSet free = g.all() - constraint_a - constraint_c;
  std::vector<Cut> cuts;
  cuts.reserve(std::size_t{1} << free.size());
  free.forEachSubset([&](VertexSet chosen) {
    const VertexSet u = constraint_a | chosen;
    cuts.push_back(Cut{u, g.all() - u});
  });
  return cuts;
}

std::vector<VertexSet> EquivClasses(const Graph& g, VertexSet s) {
  g.checkSubset(s);
  // An edge may appear in a qualifying path iff at most one endpoint lies in
  // s, so the classes are the components of the graph restricted to those
  // edges.
  const int n = g.size();
  std::vector<VertexIndex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexIndex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [v, w] : g.edges()) {
    if (s.contains(v) && s.contains(w)) continue;
    const VertexIndex rv = find(v);
    const VertexIndex rw = find(w);
    if (rv != rw) parent[std::max(rv, rw)] = std::min(rv, rw);
  }
  std::vector<VertexSet> classes;
  std::vector<int> slot(n, -1);
  for (VertexIndex v = 0; v < n; ++v) {
    const VertexIndex r = find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[slot[r]] = classes[slot[r]].with(v);
  }
  return classes;
}

std::vector<std::vector<int>> Distances(const Graph& g) {
  const int n = g.size();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (VertexIndex src = 0; src < n; ++src) {
    std::deque<VertexIndex> queue{src};
    dist[src][src] = 0;
    while (!queue.empty()) {
      const VertexIndex v = queue.front();
      queue.pop_front();
      g.adj(v).forEach([&](VertexIndex w) {
        if (dist[src][w] < 0) {
          dist[src][w] = dist[src][v] + 1;
          queue.push_back(w);
        }
      });
    }
  }
  return dist;
}

bool IsSparse(const Graph& g, VertexSet w) {
  g.checkSubset(w);
  if (w.size() <= 1) return true;
  const auto dist = Distances(g);
  const auto members = w.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const int d = dist[members[i]][members[j]];
      if (d >= 0 && d < 3) return false;
    }
  }
  return true;
}

Graph CompleteGraph(const std::vector<std::string>& names) {
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      edges.emplace_back(names[i], names[j]);
    }
  }
  return Graph(names, edges);
}

}  // namespace fdep
