#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pb/basis.hpp"
#include "pb/linalg.hpp"

namespace pb {

/// A positive operator acting on one party's space. POVM elements are
/// represented directly as their positive parts; unitary factors are
/// handled separately via the polar decomposition.
struct LocalOperator {
  std::size_t party = 0;
  Matrix matrix;
};

namespace detail {

inline void require_positive(const LocalOperator& op, const ProductBasis& basis, double tol) {
  require(op.party < basis.parties(), "operator: invalid party");
  require(op.matrix.rows() == basis.dims()[op.party] && op.matrix.cols() == op.matrix.rows(),
          "operator: matrix does not match party dimension");
  require(op.matrix.is_hermitian(tol), "operator: matrix not Hermitian");
  const EigResult eig = eig_hermitian(op.matrix, tol);
  const double scale = std::max(1.0, std::abs(eig.values.back()));
  require(eig.values.front() >= -tol * scale, "operator: matrix not positive");
}

}  // namespace detail

struct AppliedState {
  ProductState state;    // factor at the measured party replaced, NOT normalized
  bool survived = true;  // new factor norm >= tol
};

/// Apply E (x) I (x) ... : replace the factor at op.party by matrix*factor.
inline std::vector<AppliedState> apply_local(const LocalOperator& op, const ProductBasis& basis) {
  detail::require_positive(op, basis, basis.tolerance());
  std::vector<AppliedState> out;
  out.reserve(basis.size());
  for (const ProductState& s : basis.states()) {
    AppliedState a{s, true};
    a.state.factors[op.party] = op.matrix.apply(s.factors[op.party]);
    a.survived = norm(a.state.factors[op.party]) >= basis.tolerance();
    out.push_back(std::move(a));
  }
  return out;
}

/// How a positive operator acts on an orthogonal product basis: either it
/// is proportional to the identity on the measured party's local span, or
/// it annihilates some states while keeping the rest orthogonal, or it
/// makes surviving states overlap.
struct ActionClassification {
  enum class Kind { Proportional, Eliminates, CreatesOverlap };
  Kind kind = Kind::Proportional;

  double lambda = 0.0;                       // Proportional: the scale factor
  std::vector<std::size_t> killed;           // Eliminates: annihilated states
  bool rest_proportional = false;            // Eliminates: op ~ lambda*I on the survivors' span
  double delta = 0.0;                        // CreatesOverlap: max overlap of normalized survivors
  std::pair<std::size_t, std::size_t> pair;  // CreatesOverlap: the maximizing pair
};

namespace detail {

// Is M within tol*scale of lambda*I on the span of the given unit
// vectors? lambda is the mean Rayleigh quotient.
inline bool proportional_on_span(const Matrix& m, const std::vector<const LocalVector*>& locals,
                                 double tol, double scale, double& lambda_out) {
  if (locals.empty()) {
    lambda_out = 0.0;
    return true;
  }
  double lambda = 0.0;
  for (const LocalVector* v : locals) lambda += inner(*v, m.apply(*v)).real();
  lambda /= static_cast<double>(locals.size());
  for (const LocalVector* v : locals) {
    const LocalVector mv = m.apply(*v);
    for (std::size_t k = 0; k < mv.size(); ++k)
      if (std::abs(mv[k] - lambda * (*v)[k]) > tol * scale) return false;
  }
  lambda_out = lambda;
  return true;
}

}  // namespace detail

/// Classify per the measurement lemma: an operator that keeps an
/// orthogonal set orthogonal either eliminates states or acts as a
/// multiple of the identity on the local span; anything else creates a
/// nonzero overlap delta (the largest normalized pairwise overlap among
/// the surviving post-measurement states, annihilated states excluded).
inline ActionClassification classify_action(const LocalOperator& op, const ProductBasis& basis,
                                            double tol) {
  detail::require_positive(op, basis, basis.tolerance());
  detail::require(validate(basis).orthogonal, "classify_action: basis is not orthogonal");

  const EigResult eig = eig_hermitian(op.matrix, basis.tolerance());
  const double max_eig = std::max(eig.values.back(), 0.0);

  std::vector<const LocalVector*> all_locals;
  for (std::size_t i = 0; i < basis.size(); ++i) all_locals.push_back(&basis.local(i, op.party));

  ActionClassification cls;
  double lambda = 0.0;
  if (detail::proportional_on_span(op.matrix, all_locals, tol, std::max(max_eig, tol), lambda)) {
    cls.kind = ActionClassification::Kind::Proportional;
    cls.lambda = lambda;
    return cls;
  }

  // Post-measurement states, normalized survivors only.
  std::vector<std::size_t> survivors;
  std::vector<ProductState> post;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    LocalVector f = op.matrix.apply(basis.local(i, op.party));
    if (norm(f) < tol) {
      cls.killed.push_back(i);
      continue;
    }
    ProductState s = basis.state(i);
    s.factors[op.party] = normalized(f, 0.0);
    survivors.push_back(i);
    post.push_back(std::move(s));
  }

  double delta = 0.0;
  std::pair<std::size_t, std::size_t> worst{0, 0};
  for (std::size_t a = 0; a < post.size(); ++a)
    for (std::size_t b = a + 1; b < post.size(); ++b) {
      const double ov = std::abs(product_inner(post[a], post[b]));
      if (ov > delta) {
        delta = ov;
        worst = {survivors[a], survivors[b]};
      }
    }

  if (!cls.killed.empty() && delta < tol) {
    cls.kind = ActionClassification::Kind::Eliminates;
    std::vector<const LocalVector*> rest;
    for (std::size_t i : survivors) rest.push_back(&basis.local(i, op.party));
    double rest_lambda = 0.0;
    cls.rest_proportional = detail::proportional_on_span(op.matrix, rest, tol,
                                                         std::max(max_eig, tol), rest_lambda);
    return cls;
  }

  cls.kind = ActionClassification::Kind::CreatesOverlap;
  cls.killed.clear();
  cls.delta = delta;
  cls.pair = worst;
  return cls;
}

/// POVM completeness: sum of E'E equals the identity within tol.
inline bool check_povm(const std::vector<LocalOperator>& ops, double tol = kDefaultTol) {
  detail::require(!ops.empty(), "check_povm: empty element list");
  const std::size_t party = ops.front().party;
  const std::size_t d = ops.front().matrix.rows();
  Matrix sum(d, d);
  for (const LocalOperator& op : ops) {
    detail::require(op.party == party, "check_povm: elements on different parties");
    detail::require(op.matrix.rows() == d && op.matrix.cols() == d,
                    "check_povm: element dimension mismatch");
    sum = sum + op.matrix.adjoint() * op.matrix;
  }
  return (sum - Matrix::identity(d)).max_abs() <= tol;
}

/// Outcome posteriors under a uniform prior:
///   p_i = <psi_i|E'E (x) I|psi_i> / sum_j <psi_j|E'E (x) I|psi_j>.
/// Throws if the measurement annihilates every state.
inline std::vector<double> posterior(const LocalOperator& op, const ProductBasis& basis) {
  detail::require_positive(op, basis, basis.tolerance());
  std::vector<double> num(basis.size());
  double total = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double n = norm(op.matrix.apply(basis.local(i, op.party)));
    num[i] = n * n;  // other factors are unit vectors
    total += num[i];
    any = any || num[i] >= basis.tolerance();
  }
  detail::require(any, "posterior: measurement annihilates every state");
  for (double& p : num) p /= total;
  return num;
}

/// Maximum posterior advantage over the uniform prior: max_i p_i - 1/n.
inline double epsilon(const std::vector<double>& posteriors) {
  detail::require(!posteriors.empty(), "epsilon: empty posterior list");
  const double mx = *std::max_element(posteriors.begin(), posteriors.end());
  return mx - 1.0 / static_cast<double>(posteriors.size());
}

}  // namespace pb
