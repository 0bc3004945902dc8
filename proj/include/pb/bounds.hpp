#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "pb/basis.hpp"
#include "pb/linalg.hpp"

namespace pb {

/// Binary entropy h(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0.
inline double binary_entropy(double x) {
  detail::require(x >= 0.0 && x <= 1.0, "binary_entropy: argument outside [0,1]");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

/// Largest pairwise overlap magnitude among (normalized) product states.
inline double max_overlap(const std::vector<ProductState>& states) {
  detail::require(states.size() >= 2, "max_overlap: need at least 2 states");
  double best = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      best = std::max(best, std::abs(product_inner(states[i], states[j])));
  return best;
}

/// Lower bound on the residual uncertainty left after completing the
/// protocol, once two of the n states overlap by delta and the posterior
/// advantage is eps:
///   2 (1/n - (n-1) eps) h(1/2 - 1/2 sqrt(1 - delta^2)).
/// Strictly positive for delta > 0 whenever eps < 1/(n(n-1)); can go
/// negative (a vacuous bound) for larger eps.
inline double deficit_bound(int n, double eps, double delta) {
  detail::require(n >= 2, "deficit_bound: n must be >= 2");
  detail::require(eps >= 0.0, "deficit_bound: eps must be >= 0");
  detail::require(delta >= 0.0 && delta <= 1.0, "deficit_bound: delta outside [0,1]");
  const double nn = static_cast<double>(n);
  const double h = binary_entropy(0.5 - 0.5 * std::sqrt(1.0 - delta * delta));
  return 2.0 * (1.0 / nn - (nn - 1.0) * eps) * h;
}

/// Ceiling on the extractable mutual information given per-outcome
/// uncertainty deficits: log2 n - sum_m p(m) deficit_m.
inline double info_ceiling(int n, const std::vector<double>& outcome_probs,
                           const std::vector<double>& deficits) {
  detail::require(n >= 1, "info_ceiling: n must be >= 1");
  detail::require(outcome_probs.size() == deficits.size(), "info_ceiling: length mismatch");
  detail::require(!outcome_probs.empty(), "info_ceiling: empty outcome list");
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t m = 0; m < outcome_probs.size(); ++m) {
    detail::require(outcome_probs[m] >= 0.0, "info_ceiling: negative probability");
    detail::require(deficits[m] >= 0.0, "info_ceiling: negative deficit");
    total += outcome_probs[m];
    weighted += outcome_probs[m] * deficits[m];
  }
  detail::require(std::abs(total - 1.0) <= 1e-9, "info_ceiling: probabilities not normalized");
  return std::log2(static_cast<double>(n)) - weighted;
}

/// One weak-measurement sequence: per round, one Hermitian perturbation
/// per party, all scaled by delta_prime. Round i applies
/// I + delta_prime * A on each party.
struct RoundOperators {
  double delta_prime = 0.0;
  std::vector<std::vector<Matrix>> rounds;  // rounds[i][party]
};

enum class BoundStatus { Ok, NoBound };

struct BoundReport {
  BoundStatus status = BoundStatus::Ok;
  double delta = 0.0;             // max normalized overlap of post-measurement states
  double epsilon_observed = 0.0;  // from the exact posteriors
  double epsilon_bound = 0.0;     // delta * M_N / c_N (0 when status is NoBound)
  double m_n = 0.0;
  double c_n = 0.0;
  double deficit = 0.0;           // residual-uncertainty bound at (n, eps_obs, delta)
  double info_ceiling = 0.0;      // log2 n - deficit
};

/// First-order information bound for a sequence of weak rounds. The
/// accumulated generator is O = sum over rounds and parties of the
/// identity-padded perturbation; its matrix elements between the basis
/// states give a_j (diagonal) and c_N (largest off-diagonal magnitude),
/// and the bound is eps <= delta * M_N / c_N with
/// M_N = max_i (sum_j a_j / n^2 + a_i / n). O is normalized by its
/// largest-magnitude matrix element so M_N and c_N are scale-free.
/// When c_N vanishes (O proportional to the identity on the states, or
/// zero) no multiple of delta can bound eps and NoBound is reported.
inline BoundReport weak_round_bound(const RoundOperators& ops, const ProductBasis& basis) {
  detail::require(ops.delta_prime > 0.0, "weak_round_bound: delta_prime must be positive");
  detail::require(!ops.rounds.empty(), "weak_round_bound: no rounds");
  detail::require(validate(basis).orthogonal, "weak_round_bound: basis is not orthogonal");
  const std::size_t parties = basis.parties();
  const std::size_t n = basis.size();
  detail::require(n >= 2, "weak_round_bound: need at least 2 states");
  for (const auto& round : ops.rounds) {
    detail::require(round.size() == parties, "weak_round_bound: round/party count mismatch");
    for (std::size_t p = 0; p < parties; ++p) {
      detail::require(round[p].rows() == basis.dims()[p] && round[p].cols() == basis.dims()[p],
                      "weak_round_bound: operator dimension mismatch");
      detail::require(round[p].is_hermitian(basis.tolerance()),
                      "weak_round_bound: operator not Hermitian");
    }
  }
  const double tol = basis.tolerance();

  // Per-party product of the round factors (round 1 applied first).
  std::vector<Matrix> chain;
  for (std::size_t p = 0; p < parties; ++p) {
    Matrix s = Matrix::identity(basis.dims()[p]);
    for (const auto& round : ops.rounds)
      s = (Matrix::identity(basis.dims()[p]) + Complex(ops.delta_prime) * round[p]) * s;
    chain.push_back(std::move(s));
  }
  std::vector<Matrix> gram;  // S'S per party
  for (const Matrix& s : chain) gram.push_back(s.adjoint() * s);

  // <psi_j | S'S | psi_k> factorizes over parties.
  const auto overlap = [&](std::size_t j, std::size_t k) {
    Complex acc = 1.0;
    for (std::size_t p = 0; p < parties; ++p)
      acc *= inner(basis.local(j, p), gram[p].apply(basis.local(k, p)));
    return acc;
  };

  BoundReport rep;

  std::vector<double> weights(n);
  for (std::size_t j = 0; j < n; ++j) weights[j] = overlap(j, j).real();
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  detail::require(wsum > tol, "weak_round_bound: measurement annihilates every state");
  double pmax = 0.0;
  for (double w : weights) pmax = std::max(pmax, w / wsum);
  rep.epsilon_observed = pmax - 1.0 / static_cast<double>(n);

  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      const double ov =
          std::abs(overlap(j, k)) / std::sqrt(std::max(weights[j] * weights[k], 1e-300));
      rep.delta = std::max(rep.delta, ov);
    }
  rep.delta = std::min(rep.delta, 1.0);  // clip Cauchy-Schwarz roundoff

  // Matrix elements of O between the basis states.
  std::vector<std::vector<Complex>> o_elem(n, std::vector<Complex>(n, Complex(0.0)));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      Complex acc = 0.0;
      for (const auto& round : ops.rounds)
        for (std::size_t p = 0; p < parties; ++p) {
          Complex term = inner(basis.local(j, p), round[p].apply(basis.local(k, p)));
          for (std::size_t q = 0; q < parties; ++q)
            if (q != p) term *= inner(basis.local(j, q), basis.local(k, q));
          acc += term;
        }
      o_elem[j][k] = acc;
    }

  double o_scale = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) o_scale = std::max(o_scale, std::abs(o_elem[j][k]));

  const int ni = static_cast<int>(n);
  if (o_scale <= tol) {
    rep.status = BoundStatus::NoBound;  // O vanishes on the states
  } else {
    double a_sum = 0.0, a_max = 0.0, c_n = 0.0;
    std::vector<double> a(n);
    for (std::size_t j = 0; j < n; ++j) {
      a[j] = o_elem[j][j].real() / o_scale;
      a_sum += a[j];
    }
    for (std::size_t j = 0; j < n; ++j) a_max = std::max(a_max, a[j]);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (j != k) c_n = std::max(c_n, std::abs(o_elem[j][k]) / o_scale);
    rep.m_n = a_sum / static_cast<double>(n * n) + a_max / static_cast<double>(n);
    rep.c_n = c_n;
    if (c_n < tol) {
      rep.status = BoundStatus::NoBound;  // O ~ identity on the states
    } else {
      rep.epsilon_bound = rep.delta * rep.m_n / rep.c_n;
    }
  }

  rep.deficit = std::max(0.0, deficit_bound(ni, rep.epsilon_observed, rep.delta));
  rep.info_ceiling = info_ceiling(ni, {1.0}, {rep.deficit});
  return rep;
}

}  // namespace pb
