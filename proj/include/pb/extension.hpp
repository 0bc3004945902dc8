#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pb/basis.hpp"
#include "pb/linalg.hpp"

namespace pb {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t(1) << 20;

enum class ExtensionStatus { Extendible, Unextendible, BudgetExceeded };

struct ExtensionResult {
  ExtensionStatus status = ExtensionStatus::BudgetExceeded;
  std::optional<ProductState> witness;  // set when Extendible
  std::uint64_t assignments_tried = 0;
};

namespace detail {

// Incremental per-party span tracker for the assignment search.
struct PartySpan {
  std::size_t dim;
  std::vector<LocalVector> basis;  // orthonormal

  bool full() const { return basis.size() >= dim; }

  // Try to add v's new direction; returns true if a vector was pushed.
  bool push(const LocalVector& v, double tol) {
    LocalVector r = normalized(v, tol);
    project_out(r, basis);
    project_out(r, basis);
    const double n = norm(r);
    if (n <= tol) return false;
    for (Complex& z : r) z /= n;
    basis.push_back(std::move(r));
    return true;
  }

  void pop() { basis.pop_back(); }
};

struct ExtensionSearch {
  const ProductBasis& basis;
  std::uint64_t budget;
  std::uint64_t tried = 0;
  bool exceeded = false;
  std::vector<PartySpan> spans;
  std::optional<ProductState> witness;

  ExtensionSearch(const ProductBasis& b, std::uint64_t budget_) : basis(b), budget(budget_) {
    for (std::size_t d : b.dims()) spans.push_back(PartySpan{d, {}});
  }

  // Counts every maximal partial assignment explored (a completed
  // assignment or a pruned branch), so the total is at most
  // parties^states.
  bool charge() {
    ++tried;
    if (tried > budget) {
      exceeded = true;
      return false;
    }
    return true;
  }

  bool valid_witness(const ProductState& w) const {
    for (const ProductState& s : basis.states())
      if (std::abs(product_inner(w, s)) >= basis.tolerance()) return false;
    return true;
  }

  // Assign states state..n-1; true once a verified witness is found.
  bool search(std::size_t state) {
    if (exceeded) return false;
    if (state == basis.size()) {
      if (!charge()) return false;
      ProductState w;
      for (PartySpan& sp : spans) {
        const auto comp = complete_orthonormal(sp.basis, sp.dim);
        w.factors.push_back(comp.front());  // deterministic pick
      }
      w.name = "witness";
      if (valid_witness(w)) {
        witness = w;
        return true;
      }
      return false;
    }
    for (std::size_t p = 0; p < basis.parties(); ++p) {
      if (exceeded) return false;
      PartySpan& sp = spans[p];
      const bool pushed = sp.push(basis.local(state, p), basis.tolerance());
      if (sp.full()) {
        // No vector can be orthogonal to a full-rank set: prune.
        if (pushed) sp.pop();
        if (!charge()) return false;
        continue;
      }
      const bool found = search(state + 1);
      if (pushed) sp.pop();
      if (found) return true;
    }
    return false;
  }
};

}  // namespace detail

/// Search for a product state orthogonal to every basis member. Each
/// state is assigned one party that carries the orthogonality (product
/// states are orthogonal iff some factor pair is), and a branch dies as
/// soon as some party's assigned locals reach full rank. Complete bases
/// short-circuit to Unextendible: their orthocomplement is zero.
inline ExtensionResult find_extension(const ProductBasis& basis,
                                      std::uint64_t budget = kDefaultBudget) {
  const ValidationReport rep = validate(basis);
  detail::require(rep.orthogonal, "find_extension: basis is not orthogonal");

  if (rep.complete) return ExtensionResult{ExtensionStatus::Unextendible, std::nullopt, 0};

  detail::ExtensionSearch search(basis, budget);
  const bool found = search.search(0);
  ExtensionResult res;
  res.assignments_tried = std::min(search.tried, budget);
  if (found) {
    res.status = ExtensionStatus::Extendible;
    res.witness = search.witness;
  } else if (search.exceeded) {
    res.status = ExtensionStatus::BudgetExceeded;
  } else {
    res.status = ExtensionStatus::Unextendible;
  }
  return res;
}

/// Three-valued flags: the extension search may run out of budget.
enum class Tri { Yes, No, Unknown };

struct BasisClass {
  bool orthogonal = false;
  bool complete = false;
  Tri extendible = Tri::Unknown;
  Tri proper_upb = Tri::Unknown;
  std::uint64_t assignments_tried = 0;
  std::optional<ProductState> witness;
};

/// Classify a basis as extendible, proper UPB (orthogonal, incomplete,
/// unextendible) or complete (a trivial UPB).
inline BasisClass classify(const ProductBasis& basis, std::uint64_t budget = kDefaultBudget) {
  BasisClass c;
  const ValidationReport rep = validate(basis);
  c.orthogonal = rep.orthogonal;
  c.complete = rep.complete;
  if (!c.orthogonal) {
    c.proper_upb = Tri::No;  // not a product basis in the required sense
    return c;
  }
  const ExtensionResult ext = find_extension(basis, budget);
  c.assignments_tried = ext.assignments_tried;
  switch (ext.status) {
    case ExtensionStatus::Extendible:
      c.extendible = Tri::Yes;
      c.proper_upb = Tri::No;
      c.witness = ext.witness;
      break;
    case ExtensionStatus::Unextendible:
      c.extendible = Tri::No;
      c.proper_upb = c.complete ? Tri::No : Tri::Yes;
      break;
    case ExtensionStatus::BudgetExceeded:
      c.extendible = Tri::Unknown;
      c.proper_upb = Tri::Unknown;
      break;
  }
  return c;
}

}  // namespace pb
