#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace pb {

using Complex = std::complex<double>;

/// One party's state vector, indexed in that party's computational basis.
using LocalVector = std::vector<Complex>;

/// Default tolerance for orthogonality, rank and Hermiticity decisions.
/// Catalog entries contain 1/sqrt2, 1/sqrt3 which are not exactly
/// representable, so exact-zero tests are never used.
inline constexpr double kDefaultTol = 1e-9;

namespace detail {
inline void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}
}  // namespace detail

/// Dense row-major complex matrix. Small dimensions only (parties here
/// have dimension <= ~16); no attempt at blocking or sparsity.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix adjoint() const {
    Matrix a(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) a(j, i) = std::conj((*this)(i, j));
    return a;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  bool is_hermitian(double tol = kDefaultTol) const {
    if (rows_ != cols_) return false;
    const double scale = std::max(1.0, max_abs());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol * scale) return false;
    return true;
  }

  LocalVector apply(const LocalVector& v) const {
    detail::require(v.size() == cols_, "matrix/vector dimension mismatch");
    LocalVector out(rows_, Complex(0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    detail::require(a.cols_ == b.rows_, "matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    detail::require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    detail::require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix difference dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend Matrix operator*(Complex s, const Matrix& a) {
    Matrix c = a;
    for (Complex& z : c.data_) z *= s;
    return c;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> data_;
};

/// Inner product, conjugate-linear in the FIRST argument:
///   inner(u, v) = sum_k conj(u_k) v_k.
inline Complex inner(const LocalVector& u, const LocalVector& v) {
  detail::require(u.size() == v.size(), "inner: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) acc += std::conj(u[k]) * v[k];
  return acc;
}

inline double norm(const LocalVector& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// Unit-norm copy. Throws on the (near-)zero vector.
inline LocalVector normalized(const LocalVector& v, double tol = kDefaultTol) {
  const double n = norm(v);
  detail::require(n > tol, "cannot normalize a zero vector");
  LocalVector out = v;
  for (Complex& z : out) z /= n;
  return out;
}

/// Dimension of the span, by Gaussian elimination with partial pivoting.
/// Rows are normalized first so the pivot threshold tol acts relative to
/// unit scale; this makes the result invariant under rescaling any input.
inline std::size_t rank(std::vector<LocalVector> vecs, double tol = kDefaultTol) {
  if (vecs.empty()) return 0;
  const std::size_t d = vecs.front().size();
  for (auto& v : vecs) {
    detail::require(v.size() == d, "rank: dimension mismatch");
    const double n = norm(v);
    if (n > tol)
      for (Complex& z : v) z /= n;
  }
  std::size_t r = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < d && row < vecs.size(); ++col) {
    std::size_t piv = row;
    double best = std::abs(vecs[row][col]);
    for (std::size_t k = row + 1; k < vecs.size(); ++k) {
      const double a = std::abs(vecs[k][col]);
      if (a > best) {
        best = a;
        piv = k;
      }
    }
    if (best <= tol) continue;
    std::swap(vecs[piv], vecs[row]);
    for (std::size_t k = row + 1; k < vecs.size(); ++k) {
      const Complex f = vecs[k][col] / vecs[row][col];
      if (f == Complex(0.0)) continue;
      for (std::size_t j = col; j < d; ++j) vecs[k][j] -= f * vecs[row][j];
      vecs[k][col] = 0.0;
    }
    ++row;
    ++r;
  }
  return r;
}

namespace detail {

// Subtract from v its projection onto each (orthonormal) basis vector.
inline void project_out(LocalVector& v, const std::vector<LocalVector>& basis) {
  for (const LocalVector& b : basis) {
    const Complex c = inner(b, v);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * b[k];
  }
}

}  // namespace detail

/// Orthonormal basis of span(vecs), by modified Gram-Schmidt with
/// reorthogonalization. Vectors whose residual falls below tol are
/// treated as dependent and dropped.
inline std::vector<LocalVector> orthonormal_span(const std::vector<LocalVector>& vecs,
                                                 double tol = kDefaultTol) {
  std::vector<LocalVector> basis;
  if (vecs.empty()) return basis;
  const std::size_t d = vecs.front().size();
  for (const LocalVector& v0 : vecs) {
    detail::require(v0.size() == d, "orthonormal_span: dimension mismatch");
    const double n0 = norm(v0);
    if (n0 <= tol) continue;
    LocalVector v = v0;
    for (Complex& z : v) z /= n0;
    detail::project_out(v, basis);
    detail::project_out(v, basis);  // second pass for accuracy
    const double n = norm(v);
    if (n <= tol) continue;
    for (Complex& z : v) z /= n;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Extend an orthonormal set to a full orthonormal basis of C^d.
/// Candidates are the standard basis vectors; at each step the one with
/// the largest residual is taken (ties broken by lowest index), so the
/// completion is deterministic. Returns only the added vectors.
inline std::vector<LocalVector> complete_orthonormal(const std::vector<LocalVector>& base,
                                                     std::size_t d) {
  std::vector<LocalVector> all = base;
  std::vector<LocalVector> added;
  while (all.size() < d) {
    LocalVector best;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < d; ++k) {
      LocalVector e(d, Complex(0.0));
      e[k] = 1.0;
      detail::project_out(e, all);
      const double n = norm(e);
      if (n > best_norm) {
        best_norm = n;
        best = std::move(e);
      }
    }
    detail::require(best_norm > 1e-12, "complete_orthonormal: no independent direction left");
    detail::project_out(best, all);  // reorthogonalize the winner
    const double n = norm(best);
    for (Complex& z : best) z /= n;
    added.push_back(best);
    all.push_back(std::move(best));
  }
  return added;
}

/// Orthonormal basis of the orthogonal complement of span(vecs) in C^d.
/// Result size is d - rank(vecs).
inline std::vector<LocalVector> orthogonal_complement(const std::vector<LocalVector>& vecs,
                                                      std::size_t d,
                                                      double tol = kDefaultTol) {
  for (const LocalVector& v : vecs)
    detail::require(v.size() == d, "orthogonal_complement: dimension mismatch");
  return complete_orthonormal(orthonormal_span(vecs, tol), d);
}

struct EigResult {
  std::vector<double> values;         // ascending
  std::vector<LocalVector> vectors;   // vectors[k] is the eigenvector of values[k]
};

/// Hermitian eigendecomposition by cyclic Jacobi rotations with a phase
/// factor absorbing the complex off-diagonal element. Accurate and
/// dependency-free at the dimensions used here.
inline EigResult eig_hermitian(const Matrix& H, double tol = kDefaultTol) {
  detail::require(H.rows() == H.cols(), "eig_hermitian: matrix not square");
  detail::require(H.is_hermitian(tol), "eig_hermitian: matrix not Hermitian");
  const std::size_t n = H.rows();

  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (H(i, j) + std::conj(H(j, i)));
  Matrix v = Matrix::identity(n);

  const double scale = std::max(a.max_abs(), 1e-300);
  const double stop = 1e-15 * scale;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= stop) continue;
        const Complex phase = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0) ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                        : -1.0 / (-theta + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex w = s * phase;  // s * e^{i arg(apq)}

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - std::conj(w) * akq;
          a(k, q) = w * akp + c * akq;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = Complex(c * c * app + s * s * aqq - 2.0 * s * c * r);
        a(q, q) = Complex(s * s * app + c * c * aqq + 2.0 * s * c * r);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(w) * vkq;
          v(k, q) = w * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigResult res;
  res.values.resize(n);
  res.vectors.assign(n, LocalVector(n));
  for (std::size_t k = 0; k < n; ++k) {
    res.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) res.vectors[k][i] = v(i, order[k]);
  }
  return res;
}

struct PolarResult {
  Matrix unitary;
  Matrix positive;
  bool non_unique = false;  // set when S is singular and the kernel part of
                            // the unitary was completed deterministically
};

/// Left polar decomposition S = U * E with U unitary and E = sqrt(S'S)
/// positive. For singular S the unitary is extended on the kernel by a
/// deterministic orthonormal completion and non_unique is set.
inline PolarResult polar_left(const Matrix& S, double tol = kDefaultTol) {
  detail::require(S.rows() == S.cols(), "polar_left: matrix not square");
  const std::size_t n = S.rows();

  const Matrix gram = S.adjoint() * S;
  const EigResult eig = eig_hermitian(gram, std::max(tol, 1e-12));

  std::vector<double> sigma(n);
  for (std::size_t k = 0; k < n; ++k) sigma[k] = std::sqrt(std::max(eig.values[k], 0.0));
  const double sigma_max = sigma.empty() ? 0.0 : *std::max_element(sigma.begin(), sigma.end());
  const double cutoff = tol * std::max(sigma_max, 1.0);

  // E = sum_k sigma_k |v_k><v_k|
  Matrix e(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        e(i, j) += sigma[k] * eig.vectors[k][i] * std::conj(eig.vectors[k][j]);

  // Range directions first (descending sigma), then fill the kernel.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  std::vector<LocalVector> us;
  std::vector<std::size_t> kernel;
  bool non_unique = false;
  for (std::size_t k : order) {
    if (sigma[k] > cutoff) {
      LocalVector u = S.apply(eig.vectors[k]);
      for (Complex& z : u) z /= sigma[k];
      detail::project_out(u, us);  // clean up residual non-orthogonality
      const double nn = norm(u);
      for (Complex& z : u) z /= nn;
      us.push_back(std::move(u));
    } else {
      kernel.push_back(k);
      non_unique = true;
    }
  }
  const std::vector<LocalVector> fill = complete_orthonormal(us, n);

  // U = sum_k |u_k><v_k| over range and kernel slots.
  Matrix u(n, n);
  std::size_t live = 0, dead = 0;
  for (std::size_t k : order) {
    const LocalVector& uk = (sigma[k] > cutoff) ? us[live++] : fill[dead++];
    const LocalVector& vk = eig.vectors[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u(i, j) += uk[i] * std::conj(vk[j]);
  }
  return PolarResult{std::move(u), std::move(e), non_unique};
}

/// Right polar decomposition S = E * U with E = sqrt(S S') positive.
/// Shares the unitary factor with the left form: S = UE' = (UE'U')U.
inline PolarResult polar_right(const Matrix& S, double tol = kDefaultTol) {
  PolarResult left = polar_left(S, tol);
  Matrix e = left.unitary * left.positive * left.unitary.adjoint();
  return PolarResult{std::move(left.unitary), std::move(e), left.non_unique};
}

}  // namespace pb
