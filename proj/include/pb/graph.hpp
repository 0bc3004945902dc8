#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "pb/linalg.hpp"

namespace pb {

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
  }

  bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }
  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

/// Nonorthogonality graph of a set of local vectors at one party: nodes
/// are state indices, and an edge joins two states whose local factors at
/// that party have inner product of magnitude >= tol. No self-loops.
struct OrthoGraph {
  std::size_t party = 0;
  std::vector<std::size_t> nodes;                            // state indices, ascending
  std::vector<std::pair<std::size_t, std::size_t>> edges;    // (i, j) with i < j, state indices
};

/// Build the graph from the local vectors themselves; node_ids[k] labels
/// locals[k] in the edge list.
inline OrthoGraph build_ortho_graph(const std::vector<LocalVector>& locals,
                                    const std::vector<std::size_t>& node_ids,
                                    std::size_t party, double tol) {
  detail::require(locals.size() == node_ids.size(), "ortho graph: id/vector count mismatch");
  OrthoGraph g;
  g.party = party;
  g.nodes = node_ids;
  for (std::size_t a = 0; a < locals.size(); ++a)
    for (std::size_t b = a + 1; b < locals.size(); ++b)
      if (std::abs(inner(locals[a], locals[b])) >= tol)
        g.edges.emplace_back(std::min(node_ids[a], node_ids[b]),
                             std::max(node_ids[a], node_ids[b]));
  return g;
}

/// Connected components as lists of node ids, each sorted ascending and
/// ordered among themselves by smallest member.
inline std::vector<std::vector<std::size_t>> connected_components(const OrthoGraph& g) {
  std::map<std::size_t, std::size_t> pos;  // node id -> dense index
  for (std::size_t k = 0; k < g.nodes.size(); ++k) pos[g.nodes[k]] = k;
  UnionFind uf(g.nodes.size());
  for (const auto& [a, b] : g.edges) uf.unite(pos.at(a), pos.at(b));

  std::map<std::size_t, std::vector<std::size_t>> groups;  // root -> members
  for (std::size_t k = 0; k < g.nodes.size(); ++k) groups[uf.find(k)].push_back(g.nodes[k]);

  std::vector<std::vector<std::size_t>> comps;
  for (auto& [root, members] : groups) comps.push_back(std::move(members));
  std::sort(comps.begin(), comps.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return comps;
}

inline bool is_connected(const OrthoGraph& g) {
  return g.nodes.size() <= 1 || connected_components(g).size() == 1;
}

}  // namespace pb
