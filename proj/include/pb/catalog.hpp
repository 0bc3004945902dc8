#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pb/basis.hpp"
#include "pb/linalg.hpp"

namespace pb {

/// Seeded deterministic randomness: mt19937_64 with a hand-rolled
/// Box-Muller transform, so streams do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // in (0,1)
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

  Complex normal() {  // standard complex normal
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double a = 2.0 * 3.14159265358979323846 * uniform();
    return Complex(r * std::cos(a), r * std::sin(a)) * 0.7071067811865476;
  }

 private:
  std::mt19937_64 gen_;
};

/// Random k x k unitary: orthonormalized columns of a complex Gaussian
/// matrix (QR-style, modified Gram-Schmidt).
inline Matrix random_unitary(std::size_t k, Rng& rng) {
  std::vector<LocalVector> cols;
  while (cols.size() < k) {
    LocalVector v(k);
    for (Complex& z : v) z = rng.normal();
    detail::project_out(v, cols);
    detail::project_out(v, cols);
    const double n = norm(v);
    if (n < 1e-6) continue;  // resample a degenerate draw
    for (Complex& z : v) z /= n;
    cols.push_back(std::move(v));
  }
  Matrix u(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) u(i, j) = cols[j][i];
  return u;
}

struct CatalogExpectation {
  bool complete = false;
  bool proper_upb = false;
  bool locc_distinguishable = false;
};

struct CatalogEntry {
  std::string name;
  ProductBasis basis;
  CatalogExpectation expected;
};

namespace detail {

inline LocalVector ket(std::size_t d, std::size_t i) {
  LocalVector v(d, Complex(0.0));
  v[i] = 1.0;
  return v;
}

inline LocalVector vec3(double a, double b, double c) { return {Complex(a), Complex(b), Complex(c)}; }
inline LocalVector vec2(double a, double b) { return {Complex(a), Complex(b)}; }

inline ProductState ps(std::string name, std::vector<LocalVector> factors) {
  ProductState s;
  s.name = std::move(name);
  s.factors = std::move(factors);
  return s;
}

}  // namespace detail

inline std::vector<std::string> builtin_names() {
  return {"domino-3x3", "shifts-2x2x2", "std-2x2", "tiles-3x3"};
}

/// Reference bases. Factors may be written unnormalized; the basis
/// constructor normalizes them.
inline CatalogEntry builtin(std::string_view name) {
  using detail::ket;
  using detail::ps;
  using detail::vec2;
  using detail::vec3;

  if (name == "std-2x2") {
    std::vector<ProductState> states;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        states.push_back(ps("s" + std::to_string(2 * a + b), {ket(2, a), ket(2, b)}));
    return CatalogEntry{"std-2x2", ProductBasis({2, 2}, std::move(states)),
                        CatalogExpectation{true, false, true}};
  }

  if (name == "tiles-3x3") {
    std::vector<ProductState> states = {
        ps("t0", {ket(3, 0), vec3(1, -1, 0)}),
        ps("t1", {vec3(1, -1, 0), ket(3, 2)}),
        ps("t2", {ket(3, 2), vec3(0, 1, -1)}),
        ps("t3", {vec3(0, 1, -1), ket(3, 0)}),
        ps("t4", {vec3(1, 1, 1), vec3(1, 1, 1)}),
    };
    return CatalogEntry{"tiles-3x3", ProductBasis({3, 3}, std::move(states)),
                        CatalogExpectation{false, true, false}};
  }

  if (name == "domino-3x3") {
    std::vector<ProductState> states = {
        ps("d0", {ket(3, 1), ket(3, 1)}),
        ps("d1", {ket(3, 0), vec3(1, 1, 0)}),
        ps("d2", {ket(3, 0), vec3(1, -1, 0)}),
        ps("d3", {ket(3, 2), vec3(0, 1, 1)}),
        ps("d4", {ket(3, 2), vec3(0, 1, -1)}),
        ps("d5", {vec3(0, 1, 1), ket(3, 0)}),
        ps("d6", {vec3(0, 1, -1), ket(3, 0)}),
        ps("d7", {vec3(1, 1, 0), ket(3, 2)}),
        ps("d8", {vec3(1, -1, 0), ket(3, 2)}),
    };
    return CatalogEntry{"domino-3x3", ProductBasis({3, 3}, std::move(states)),
                        CatalogExpectation{true, false, false}};
  }

  if (name == "shifts-2x2x2") {
    std::vector<ProductState> states = {
        ps("s0", {ket(2, 0), ket(2, 0), ket(2, 0)}),
        ps("s1", {vec2(1, 1), ket(2, 1), vec2(1, -1)}),
        ps("s2", {ket(2, 1), vec2(1, -1), vec2(1, 1)}),
        ps("s3", {vec2(1, -1), vec2(1, 1), ket(2, 1)}),
    };
    return CatalogEntry{"shifts-2x2x2", ProductBasis({2, 2, 2}, std::move(states)),
                        CatalogExpectation{false, true, false}};
  }

  throw std::invalid_argument("unknown catalog entry: " + std::string(name));
}

namespace detail {

// Frames: one orthonormal subspace basis per party. Splitting a party's
// frame with a random unitary produces two orthogonal local subspaces, so
// every recursion level is splittable by construction.
inline void random_split_rec(std::vector<std::vector<LocalVector>>& frames, Rng& rng,
                             std::vector<ProductState>& out) {
  std::vector<std::size_t> splittable;
  for (std::size_t p = 0; p < frames.size(); ++p)
    if (frames[p].size() >= 2) splittable.push_back(p);

  if (splittable.empty()) {
    ProductState s;
    for (const auto& frame : frames) s.factors.push_back(frame.front());
    s.name = "r" + std::to_string(out.size());
    out.push_back(std::move(s));
    return;
  }

  const std::size_t p = splittable[rng.below(splittable.size())];
  const std::size_t k = frames[p].size();
  const Matrix u = random_unitary(k, rng);

  // Rotate the frame: new_j = sum_i u(i,j) * frame_i.
  std::vector<LocalVector> rotated(k, LocalVector(frames[p].front().size(), Complex(0.0)));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t e = 0; e < rotated[j].size(); ++e)
        rotated[j][e] += u(i, j) * frames[p][i][e];

  const std::size_t s = 1 + rng.below(k - 1);
  const std::vector<LocalVector> saved = frames[p];

  frames[p].assign(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(s));
  random_split_rec(frames, rng, out);
  frames[p].assign(rotated.begin() + static_cast<std::ptrdiff_t>(s), rotated.end());
  random_split_rec(frames, rng, out);
  frames[p] = saved;
}

}  // namespace detail

/// Complete product basis built by recursive random orthonormal block
/// splits at random parties; always orthogonal, complete and LOCC
/// distinguishable. Deterministic per seed.
inline ProductBasis random_distinguishable(const std::vector<std::size_t>& dims,
                                           std::uint64_t seed) {
  detail::require(!dims.empty(), "random_distinguishable: no parties");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    detail::require(d >= 1, "random_distinguishable: dimensions must be >= 1");
    total *= d;
  }
  detail::require(total <= 4096, "random_distinguishable: total dimension above 4096");

  Rng rng(seed);
  std::vector<std::vector<LocalVector>> frames;
  for (std::size_t d : dims) {
    std::vector<LocalVector> frame;
    for (std::size_t i = 0; i < d; ++i) frame.push_back(detail::ket(d, i));
    frames.push_back(std::move(frame));
  }
  std::vector<ProductState> states;
  detail::random_split_rec(frames, rng, states);
  return ProductBasis(dims, std::move(states));
}

}  // namespace pb
