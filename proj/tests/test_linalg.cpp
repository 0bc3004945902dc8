#include "pb/linalg.hpp"

#include <gtest/gtest.h>

#include "pb/catalog.hpp"

using namespace pb;

namespace {

LocalVector v2(double a, double b) { return {Complex(a), Complex(b)}; }
LocalVector v3(double a, double b, double c) { return {Complex(a), Complex(b), Complex(c)}; }

Matrix random_hermitian(std::size_t n, Rng& rng) {
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return h;
}

Matrix random_matrix(std::size_t n, Rng& rng) {
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
  return g;
}

}  // namespace

TEST(Inner, OrthonormalPairs) {
  EXPECT_NEAR(std::abs(inner(v2(1, 0), v2(0, 1))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inner(v2(1, 0), v2(1, 0)) - Complex(1.0)), 0.0, 1e-15);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(inner(v2(s, -s), v2(s, s))), 0.0, 1e-15);
}

TEST(Inner, ConjugateLinearInFirstArgument) {
  const LocalVector u = {Complex(0.3, 0.4), Complex(-0.1, 0.9)};
  const LocalVector v = {Complex(0.5, -0.2), Complex(0.8, 0.1)};
  const Complex uv = inner(u, v);
  const Complex vu = inner(v, u);
  EXPECT_NEAR(std::abs(uv - std::conj(vu)), 0.0, 1e-15);

  // scaling the first argument conjugates the scalar
  const Complex s(0.7, -0.3);
  LocalVector su = u;
  for (Complex& z : su) z *= s;
  EXPECT_NEAR(std::abs(inner(su, v) - std::conj(s) * uv), 0.0, 1e-14);
}

TEST(Inner, DimensionMismatchThrows) {
  EXPECT_THROW(inner(v2(1, 0), v3(1, 0, 0)), std::invalid_argument);
}

TEST(Rank, BasicSpans) {
  EXPECT_EQ(rank({v3(1, 0, 0), v3(0, 1, 0)}), 2u);
  EXPECT_EQ(rank({v3(1, 2, 3), v3(2, 4, 6)}), 1u);  // collinear
  EXPECT_EQ(rank({}), 0u);
}

TEST(Rank, TilesAliceLocals) {
  // |0>, (|0>-|1>)/sqrt2, |2>, (|1>-|2>)/sqrt2, (|0>+|1>+|2>)/sqrt3
  // reduce by hand: |0> gives e0; second adds e1; third adds e2; the
  // remaining two rows eliminate to zero. Span dimension 3.
  const std::vector<LocalVector> locals = {
      v3(1, 0, 0), v3(1, -1, 0), v3(0, 0, 1), v3(0, 1, -1), v3(1, 1, 1)};
  EXPECT_EQ(rank(locals), 3u);
}

TEST(Rank, InvariantUnderScalingAndPermutation) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<LocalVector> vecs;
    const std::size_t d = 3 + rng.below(3);
    const std::size_t count = 2 + rng.below(4);
    for (std::size_t k = 0; k < count; ++k) {
      LocalVector v(d);
      for (Complex& z : v) z = rng.normal();
      vecs.push_back(v);
    }
    const std::size_t base = rank(vecs);

    std::vector<LocalVector> scaled = vecs;
    const Complex s(0.25 * (1.0 + rng.uniform()), rng.uniform());
    for (Complex& z : scaled[rng.below(count)]) z *= s;
    EXPECT_EQ(rank(scaled), base);

    std::vector<LocalVector> shuffled = vecs;
    std::swap(shuffled[0], shuffled[count - 1]);
    EXPECT_EQ(rank(shuffled), base);
  }
}

TEST(OrthogonalComplement, Basic) {
  const auto c1 = orthogonal_complement({v2(1, 0)}, 2);
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_NEAR(std::abs(inner(c1[0], v2(0, 1))), 1.0, 1e-12);

  const auto c2 = orthogonal_complement({v2(1, 0), v2(0, 1)}, 2);
  EXPECT_TRUE(c2.empty());

  const double t = 1.0 / std::sqrt(3.0);
  const auto c3 = orthogonal_complement({v3(t, t, t)}, 3);
  ASSERT_EQ(c3.size(), 2u);
  for (const LocalVector& c : c3) EXPECT_LT(std::abs(inner(c, v3(t, t, t))), 1e-12);
}

TEST(OrthogonalComplement, PairingsNearlyOrthogonal) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + rng.below(5);
    const std::size_t count = 1 + rng.below(d);
    std::vector<LocalVector> vecs;
    for (std::size_t k = 0; k < count; ++k) {
      LocalVector v(d);
      for (Complex& z : v) z = rng.normal();
      vecs.push_back(v);
    }
    const auto comp = orthogonal_complement(vecs, d);
    EXPECT_EQ(comp.size(), d - rank(vecs));
    for (const LocalVector& w : vecs)
      for (const LocalVector& c : comp)
        EXPECT_LT(std::abs(inner(normalized(w), c)), 10 * kDefaultTol);
  }
}

TEST(EigHermitian, DiagonalAndPauliX) {
  Matrix d(2, 2);
  d(0, 0) = 3.5;
  d(1, 1) = -1.25;
  const EigResult e = eig_hermitian(d);
  EXPECT_NEAR(e.values[0], -1.25, 1e-12);
  EXPECT_NEAR(e.values[1], 3.5, 1e-12);

  Matrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  const EigResult ex = eig_hermitian(x);
  EXPECT_NEAR(ex.values[0], -1.0, 1e-12);
  EXPECT_NEAR(ex.values[1], 1.0, 1e-12);
  // eigenvectors (1, -/+ 1)/sqrt2 up to phase
  EXPECT_NEAR(std::abs(ex.vectors[0][0]), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(inner(ex.vectors[0], ex.vectors[1])), 0.0, 1e-12);
}

TEST(EigHermitian, ReconstructionAndTrace) {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(5);  // up to 6x6
    const Matrix h = random_hermitian(n, rng);
    const EigResult e = eig_hermitian(h);

    // V Lambda V' reconstructs H
    Matrix rec(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          rec(i, j) += e.values[k] * e.vectors[k][i] * std::conj(e.vectors[k][j]);
    EXPECT_LT((rec - h).max_abs(), 1e-9);

    // ascending values, orthonormal vectors, trace match
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) EXPECT_LE(e.values[k], e.values[k + 1] + 1e-12);
    for (std::size_t k = 0; k < n; ++k) {
      sum += e.values[k];
      for (std::size_t l = 0; l < n; ++l) {
        const double expect = (k == l) ? 1.0 : 0.0;
        EXPECT_NEAR(std::abs(inner(e.vectors[k], e.vectors[l])), expect, 1e-9);
      }
    }
    EXPECT_NEAR(sum, h.trace().real(), 1e-9);
  }
}

TEST(EigHermitian, RejectsNonHermitian) {
  Matrix m(2, 2);
  m(0, 1) = 1.0;  // m(1,0) left zero
  EXPECT_THROW(eig_hermitian(m), std::invalid_argument);
}

TEST(Polar, UnitaryAndPositiveSpecialCases) {
  // unitary input: E = I
  Matrix r(2, 2);
  const double a = 0.3;
  r(0, 0) = std::cos(a);
  r(0, 1) = -std::sin(a);
  r(1, 0) = std::sin(a);
  r(1, 1) = std::cos(a);
  const PolarResult pr = polar_left(r);
  EXPECT_FALSE(pr.non_unique);
  EXPECT_LT((pr.positive - Matrix::identity(2)).max_abs(), 1e-9);

  // positive input: U = I
  Matrix p(2, 2);
  p(0, 0) = 2.0;
  p(1, 1) = 0.5;
  const PolarResult pp = polar_left(p);
  EXPECT_LT((pp.unitary - Matrix::identity(2)).max_abs(), 1e-9);
  EXPECT_LT((pp.positive - p).max_abs(), 1e-9);
}

TEST(Polar, DiagTimesRotation) {
  Matrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  Matrix r(2, 2);
  const double a = 0.3;
  r(0, 0) = std::cos(a);
  r(0, 1) = -std::sin(a);
  r(1, 0) = std::sin(a);
  r(1, 1) = std::cos(a);
  const Matrix s = d * r;
  const PolarResult res = polar_left(s);
  const EigResult e = eig_hermitian(res.positive);
  EXPECT_NEAR(e.values[0], 2.0, 1e-9);
  EXPECT_NEAR(e.values[1], 3.0, 1e-9);
  EXPECT_LT((res.unitary * res.positive - s).max_abs(), 1e-9);
}

TEST(Polar, RandomInvertibleReconstruction) {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(5);  // 2..6
    Matrix s = random_matrix(n, rng);
    for (std::size_t i = 0; i < n; ++i) s(i, i) += 4.0;  // keep it well-conditioned

    const PolarResult left = polar_left(s);
    EXPECT_FALSE(left.non_unique);
    EXPECT_LT((left.unitary.adjoint() * left.unitary - Matrix::identity(n)).max_abs(), 1e-9);
    EXPECT_LT((left.unitary * left.positive - s).max_abs(), 1e-9);

    const PolarResult right = polar_right(s);
    EXPECT_LT((right.positive * right.unitary - s).max_abs(), 1e-9);
    const EigResult pe = eig_hermitian(right.positive, 1e-8);
    EXPECT_GE(pe.values.front(), -1e-9);
  }
}

TEST(Polar, SingularInputFlaggedAndStillUnitary) {
  Matrix s(3, 3);
  s(0, 0) = 1.0;
  s(0, 1) = 2.0;  // rank 1
  const PolarResult res = polar_left(s);
  EXPECT_TRUE(res.non_unique);
  EXPECT_LT((res.unitary.adjoint() * res.unitary - Matrix::identity(3)).max_abs(), 1e-9);
  // U*E still reproduces S on the range
  EXPECT_LT((res.unitary * res.positive - s).max_abs(), 1e-9);
}

TEST(Polar, RejectsNonSquare) {
  EXPECT_THROW(polar_left(Matrix(2, 3)), std::invalid_argument);
}
