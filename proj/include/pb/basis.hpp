#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pb/linalg.hpp"

namespace pb {

/// A pure product state: one local factor per party. Factors are kept
/// normalized; global phase is not canonicalized.
struct ProductState {
  std::vector<LocalVector> factors;
  std::string name;  // optional, empty = unnamed
};

/// Inner product of two product states with matching party structure,
/// i.e. the product of the per-party inner products.
inline Complex product_inner(const ProductState& a, const ProductState& b) {
  detail::require(a.factors.size() == b.factors.size(), "product_inner: party count mismatch");
  Complex acc = 1.0;
  for (std::size_t p = 0; p < a.factors.size(); ++p) acc *= inner(a.factors[p], b.factors[p]);
  return acc;
}

/// A list of mutually orthogonal product states over fixed party
/// dimensions. The constructor enforces structure (shapes, nonzero
/// factors) and normalizes every factor; orthogonality itself is checked
/// by validate(), so that offending pairs can be reported rather than
/// rejected blindly.
class ProductBasis {
 public:
  ProductBasis(std::vector<std::size_t> dims, std::vector<ProductState> states,
               double tolerance = kDefaultTol)
      : dims_(std::move(dims)), states_(std::move(states)), tol_(tolerance) {
    detail::require(!dims_.empty(), "basis: at least one party required");
    detail::require(tol_ > 0.0, "basis: tolerance must be positive");
    for (std::size_t d : dims_) detail::require(d >= 1, "basis: party dimension must be >= 1");
    for (ProductState& s : states_) {
      detail::require(s.factors.size() == dims_.size(), "basis: state party count mismatch");
      for (std::size_t p = 0; p < dims_.size(); ++p) {
        detail::require(s.factors[p].size() == dims_[p], "basis: factor dimension mismatch");
        s.factors[p] = normalized(s.factors[p], tol_);  // throws on the zero factor
      }
    }
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<ProductState>& states() const { return states_; }
  std::size_t parties() const { return dims_.size(); }
  std::size_t size() const { return states_.size(); }
  double tolerance() const { return tol_; }

  const ProductState& state(std::size_t i) const { return states_.at(i); }
  const LocalVector& local(std::size_t state, std::size_t party) const {
    return states_.at(state).factors.at(party);
  }

  std::size_t total_dimension() const {
    std::size_t t = 1;
    for (std::size_t d : dims_) t *= d;
    return t;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<ProductState> states_;
  double tol_;
};

struct ValidationReport {
  bool orthogonal = false;
  bool complete = false;
  std::vector<std::pair<std::size_t, std::size_t>> offending_pairs;
};

/// Pairwise orthogonality check. complete means orthogonal AND the state
/// count equals the full tensor dimension (a complete basis spans the
/// whole space).
inline ValidationReport validate(const ProductBasis& basis) {
  ValidationReport rep;
  const double tol = basis.tolerance();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (std::abs(product_inner(basis.state(i), basis.state(j))) >= tol)
        rep.offending_pairs.emplace_back(i, j);
  rep.orthogonal = rep.offending_pairs.empty();
  rep.complete = rep.orthogonal && basis.size() == basis.total_dimension();
  return rep;
}

}  // namespace pb
