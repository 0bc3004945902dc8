#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "pb/basis.hpp"
#include "pb/graph.hpp"
#include "pb/linalg.hpp"

namespace pb {

/// Nonorthogonality graph of one party's local vectors over a subset of
/// basis states.
inline OrthoGraph party_graph(const ProductBasis& basis, std::size_t party,
                              const std::vector<std::size_t>& subset) {
  detail::require(party < basis.parties(), "party_graph: invalid party");
  detail::require(!subset.empty(), "party_graph: empty subset");
  std::vector<LocalVector> locals;
  locals.reserve(subset.size());
  for (std::size_t i : subset) {
    detail::require(i < basis.size(), "party_graph: invalid state index");
    locals.push_back(basis.local(i, party));
  }
  return build_ortho_graph(locals, subset, party, basis.tolerance());
}

inline OrthoGraph party_graph(const ProductBasis& basis, std::size_t party) {
  std::vector<std::size_t> all(basis.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return party_graph(basis, party, all);
}

struct SplitResult {
  std::size_t party;
  std::vector<std::vector<std::size_t>> components;  // ordered by smallest member
};

/// Lowest-indexed party whose graph on the subset is disconnected,
/// together with its connected components. nullopt means every party
/// graph is connected, i.e. the subset is an irreducible core.
inline std::optional<SplitResult> find_split(const ProductBasis& basis,
                                             const std::vector<std::size_t>& subset) {
  detail::require(subset.size() >= 2, "find_split: subset must have >= 2 states");
  for (std::size_t p = 0; p < basis.parties(); ++p) {
    auto comps = connected_components(party_graph(basis, p, subset));
    if (comps.size() > 1) return SplitResult{p, std::move(comps)};
  }
  return std::nullopt;
}

/// Nested von Neumann measurement plan. A node measures one party with
/// one projector per outcome; a leaf pins down a single state.
struct ProtocolNode {
  struct Outcome {
    std::vector<LocalVector> projector_basis;  // orthonormal, spans the outcome's locals
    std::vector<std::size_t> subset;
    std::unique_ptr<ProtocolNode> child;
  };

  // Leaf fields
  std::size_t state = 0;
  // Node fields
  std::size_t party = 0;
  std::vector<Outcome> outcomes;

  bool is_leaf() const { return outcomes.empty(); }
};

using ProtocolTreePtr = std::unique_ptr<ProtocolNode>;

struct Decision {
  bool distinguishable = false;
  ProtocolTreePtr tree;                     // set when distinguishable
  std::vector<std::size_t> core;            // set when not: first multi-state leaf
  std::vector<OrthoGraph> core_witness;     // per-party graphs over the core, all connected
  bool outside_theorem_scope = false;       // input basis was not complete
};

namespace detail {

// Returns the subtree, or nullptr after recording the first irreducible
// core encountered in depth-first order.
inline ProtocolTreePtr build_protocol(const ProductBasis& basis,
                                      const std::vector<std::size_t>& subset,
                                      std::vector<std::size_t>& core_out) {
  auto node = std::make_unique<ProtocolNode>();
  if (subset.size() == 1) {
    node->state = subset.front();
    return node;
  }
  const std::optional<SplitResult> split = find_split(basis, subset);
  if (!split) {
    core_out = subset;
    return nullptr;
  }
  node->party = split->party;
  for (const std::vector<std::size_t>& comp : split->components) {
    ProtocolNode::Outcome out;
    out.subset = comp;
    std::vector<LocalVector> locals;
    for (std::size_t i : comp) locals.push_back(basis.local(i, split->party));
    out.projector_basis = orthonormal_span(locals, basis.tolerance());
    out.child = build_protocol(basis, comp, core_out);
    if (!out.child) return nullptr;
    node->outcomes.push_back(std::move(out));
  }
  return node;
}

}  // namespace detail

/// Decide LOCC distinguishability by recursive splitting. For complete
/// bases this is exact: distinguishable iff no irreducible core exists,
/// and the returned tree is a von Neumann protocol identifying every
/// state. For orthogonal-but-incomplete inputs the structural verdict is
/// still reported, with outside_theorem_scope set; a multi-state leaf is
/// then evidence of indistinguishability whenever the input is an
/// unextendible product basis.
inline Decision decide(const ProductBasis& basis) {
  const ValidationReport rep = validate(basis);
  detail::require(rep.orthogonal, "decide: basis is not orthogonal");
  detail::require(basis.size() >= 1, "decide: empty basis");

  Decision d;
  d.outside_theorem_scope = !rep.complete;

  std::vector<std::size_t> all(basis.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  std::vector<std::size_t> core;
  ProtocolTreePtr tree = detail::build_protocol(basis, all, core);
  if (tree) {
    d.distinguishable = true;
    d.tree = std::move(tree);
  } else {
    d.distinguishable = false;
    d.core = core;
    for (std::size_t p = 0; p < basis.parties(); ++p)
      d.core_witness.push_back(party_graph(basis, p, core));
  }
  return d;
}

struct SimulationResult {
  std::size_t identified = 0;
  std::size_t rounds = 0;
  std::vector<std::size_t> outcome_path;  // outcome index chosen at each node
};

/// Walk the protocol with a hidden basis state: at each node the outcome
/// is the unique projector that does not annihilate the hidden state's
/// local factor. Throws if the tree does not match the basis (no unique
/// surviving outcome).
inline SimulationResult simulate_protocol(const ProtocolNode& tree, const ProductBasis& basis,
                                          std::size_t hidden) {
  detail::require(hidden < basis.size(), "simulate_protocol: invalid hidden state");
  const double tol = basis.tolerance();
  SimulationResult res;
  const ProtocolNode* node = &tree;
  while (!node->is_leaf()) {
    const LocalVector& factor = basis.local(hidden, node->party);
    std::size_t chosen = node->outcomes.size();
    for (std::size_t o = 0; o < node->outcomes.size(); ++o) {
      double proj_sq = 0.0;
      for (const LocalVector& b : node->outcomes[o].projector_basis)
        proj_sq += std::norm(inner(b, factor));
      if (std::sqrt(proj_sq) >= tol) {
        detail::require(chosen == node->outcomes.size(),
                        "simulate_protocol: tree/basis mismatch (ambiguous outcome)");
        chosen = o;
      }
    }
    detail::require(chosen < node->outcomes.size(),
                    "simulate_protocol: tree/basis mismatch (state annihilated)");
    res.outcome_path.push_back(chosen);
    ++res.rounds;
    node = node->outcomes[chosen].child.get();
  }
  res.identified = node->state;
  return res;
}

/// Longest root-to-leaf path, counting measurement nodes.
inline std::size_t protocol_depth(const ProtocolNode& tree) {
  if (tree.is_leaf()) return 0;
  std::size_t best = 0;
  for (const auto& out : tree.outcomes) best = std::max(best, protocol_depth(*out.child));
  return 1 + best;
}

}  // namespace pb
