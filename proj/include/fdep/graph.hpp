#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fdep {

using VertexIndex = int;

// A subset of a graph's vertices, stored as a bitmask over the graph's
// (lexicographic) vertex order. Bit i stands for the i-th vertex.
class VertexSet {
 public:
  using Mask = std::uint32_t;

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(Mask mask) : mask_(mask) {}

  static constexpr VertexSet Single(VertexIndex v) {
    return VertexSet(Mask{1} << v);
  }
  // The first n vertices.
  static constexpr VertexSet Full(int n) {
    return VertexSet(n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1));
  }

  constexpr Mask mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(VertexIndex v) const { return (mask_ >> v) & 1u; }
  constexpr bool subsetOf(VertexSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr bool intersects(VertexSet other) const {
    return (mask_ & other.mask_) != 0;
  }

  constexpr VertexSet with(VertexIndex v) const {
    return VertexSet(mask_ | (Mask{1} << v));
  }
  constexpr VertexSet without(VertexIndex v) const {
    return VertexSet(mask_ & ~(Mask{1} << v));
  }

  constexpr VertexSet operator|(VertexSet o) const {
    return VertexSet(mask_ | o.mask_);
  }
  constexpr VertexSet operator&(VertexSet o) const {
    return VertexSet(mask_ & o.mask_);
  }
  // Set difference.
  constexpr VertexSet operator-(VertexSet o) const {
    return VertexSet(mask_ & ~o.mask_);
  }
  constexpr VertexSet& operator|=(VertexSet o) {
    mask_ |= o.mask_;
    return *this;
  }
  constexpr VertexSet& operator&=(VertexSet o) {
    mask_ &= o.mask_;
    return *this;
  }

  constexpr auto operator<=>(const VertexSet&) const = default;

  // Members in ascending index order.
  std::vector<VertexIndex> members() const;

  template <typename F>
  void forEach(F&& f) const {
    for (Mask m = mask_; m != 0; m &= m - 1) f(std::countr_zero(m));
  }

  // Calls f on every subset of this set (including the empty set and the set
  // itself), in ascending mask order.
  template <typename F>
  void forEachSubset(F&& f) const {
    Mask sub = 0;
    while (true) {
      f(VertexSet(sub));
      if (sub == mask_) break;
      sub = (sub - mask_) & mask_;
    }
  }

 private:
  Mask mask_ = 0;
};

struct Cut {
  VertexSet u;
  VertexSet w;

  friend bool operator==(const Cut&, const Cut&) = default;
};

// Finite simple undirected graph. Vertices are kept sorted by name, so vertex
// indices (and every set operation built on them) are deterministic.
class Graph {
 public:
  static constexpr int kMaxVertices = 32;

  Graph() = default;

  // Throws Error(kInvalidGraph) on bad names, duplicates, loops, duplicate
  // edges or unknown endpoints.
  Graph(std::vector<std::string> vertices,
        const std::vector<std::pair<std::string, std::string>>& edges);

  int size() const { return static_cast<int>(names_.size()); }
  VertexSet all() const { return VertexSet::Full(size()); }

  const std::string& name(VertexIndex v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  // Index of the named vertex; throws Error(kInvalidVertex) if absent.
  VertexIndex index(std::string_view name) const;
  bool hasVertex(std::string_view name) const;
  VertexSet setOf(const std::vector<std::string>& names) const;

  bool adjacent(VertexIndex v, VertexIndex w) const {
    return adjacency_.at(v).contains(w);
  }
  VertexSet adj(VertexIndex v) const;
  VertexSet adjPlus(VertexIndex v) const;

  // Edges as (smaller, larger) index pairs in ascending order.
  std::vector<std::pair<VertexIndex, VertexIndex>> edges() const;
  int edgeCount() const;

  // Throws Error(kInvalidVertex) unless s is a subset of the vertices.
  void checkSubset(VertexSet s) const;

  // "a,b,c" in vertex order; "." for the empty set.
  std::string format(VertexSet s) const;

  bool operator==(const Graph& other) const {
    return names_ == other.names_ && adjacency_ == other.adjacency_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<VertexSet> adjacency_;
};

bool IsValidVertexName(std::string_view name);

// {v in u : v has a neighbour outside u}.
VertexSet Border(const Graph& g, VertexSet u);

// Border(u) | Border(complement of u): the double layer separating a cut.
VertexSet CutBorders(const Graph& g, VertexSet u);

VertexSet AdjPlus(const Graph& g, VertexIndex v);

// Every cut (U, W) with constraint_a in U and constraint_c in W, ordered by
// ascending bitmask of U over the unconstrained vertices.
std::vector<Cut> EnumerateCuts(const Graph& g, VertexSet constraint_a,
                               VertexSet constraint_c);

// Partition of the vertices under u ~ v iff some u-v path has no two
// consecutive vertices in s. Classes are ordered by their smallest member.
std::vector<VertexSet> EquivClasses(const Graph& g, VertexSet s);

// True iff every two distinct members of w are at distance >= 3.
bool IsSparse(const Graph& g, VertexSet w);

// All-pairs shortest path lengths; -1 for unreachable pairs.
std::vector<std::vector<int>> Distances(const Graph& g);

Graph CompleteGraph(const std::vector<std::string>& names);

}  // namespace fdep
