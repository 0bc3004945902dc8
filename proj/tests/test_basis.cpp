#include "pb/basis.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pb/catalog.hpp"
#include "pb/json_format.hpp"

using namespace pb;

TEST(ProductInner, ComputationalAndTiles) {
  const ProductBasis std2 = builtin("std-2x2").basis;
  EXPECT_LT(std::abs(product_inner(std2.state(0), std2.state(1))), 1e-15);  // |00> vs |01>
  EXPECT_NEAR(std::abs(product_inner(std2.state(0), std2.state(0))), 1.0, 1e-15);

  // Tiles psi0 vs psi4: the Bob factor gives (1-1)/sqrt6 = 0.
  const ProductBasis tiles = builtin("tiles-3x3").basis;
  EXPECT_LT(std::abs(product_inner(tiles.state(0), tiles.state(4))), 1e-15);
}

TEST(ProductInner, ConjugateSymmetry) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    ProductState a, b;
    for (std::size_t p = 0; p < 3; ++p) {
      LocalVector fa(2), fb(2);
      for (Complex& z : fa) z = rng.normal();
      for (Complex& z : fb) z = rng.normal();
      a.factors.push_back(fa);
      b.factors.push_back(fb);
    }
    EXPECT_LT(std::abs(product_inner(a, b) - std::conj(product_inner(b, a))), 1e-12);
  }
}

TEST(ProductInner, MatchesTensorExpansionBruteForce) {
  // product_inner equals the inner product of explicitly expanded
  // vectors, for total dimension up to 64.
  Rng rng(17);
  const std::vector<std::vector<std::size_t>> shapes = {{2, 2}, {3, 3}, {2, 2, 2}, {4, 4, 4}};
  for (const auto& dims : shapes) {
    for (int trial = 0; trial < 10; ++trial) {
      ProductState a, b;
      for (std::size_t d : dims) {
        LocalVector fa(d), fb(d);
        for (Complex& z : fa) z = rng.normal();
        for (Complex& z : fb) z = rng.normal();
        a.factors.push_back(fa);
        b.factors.push_back(fb);
      }
      const Complex got = product_inner(a, b);
      const auto expect = oracle::full_inner(oracle::expand(a), oracle::expand(b));
      EXPECT_LT(std::abs(got - Complex(static_cast<double>(expect.real()),
                                       static_cast<double>(expect.imag()))),
                1e-10);
    }
  }
}

TEST(ProductInner, PartyCountMismatchThrows) {
  ProductState a, b;
  a.factors = {{Complex(1), Complex(0)}};
  b.factors = {{Complex(1), Complex(0)}, {Complex(1), Complex(0)}};
  EXPECT_THROW(product_inner(a, b), std::invalid_argument);
}

TEST(Validate, StandardCompleteBasis) {
  const ValidationReport rep = validate(builtin("std-2x2").basis);
  EXPECT_TRUE(rep.orthogonal);
  EXPECT_TRUE(rep.complete);
  EXPECT_TRUE(rep.offending_pairs.empty());
}

TEST(Validate, TilesOrthogonalIncomplete) {
  const ValidationReport rep = validate(builtin("tiles-3x3").basis);
  EXPECT_TRUE(rep.orthogonal);
  EXPECT_FALSE(rep.complete);
}

TEST(Validate, DuplicatedStateReported) {
  const ProductBasis std2 = builtin("std-2x2").basis;
  std::vector<ProductState> states = std2.states();
  states[1] = states[0];  // duplicate |00>
  const ProductBasis broken({2, 2}, states);
  const ValidationReport rep = validate(broken);
  EXPECT_FALSE(rep.orthogonal);
  ASSERT_EQ(rep.offending_pairs.size(), 1u);
  EXPECT_EQ(rep.offending_pairs[0], (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Validate, CompleteBasisSpansFullTensorSpace) {
  // rank of the expanded states equals the tensor dimension
  for (const char* name : {"std-2x2", "domino-3x3"}) {
    const ProductBasis basis = builtin(name).basis;
    std::vector<std::vector<oracle::CxL>> rows;
    for (const ProductState& s : basis.states()) rows.push_back(oracle::expand(s));
    EXPECT_EQ(oracle::full_rank(rows), basis.total_dimension()) << name;
  }
  // and an incomplete one does not
  const ProductBasis tiles = builtin("tiles-3x3").basis;
  std::vector<std::vector<oracle::CxL>> rows;
  for (const ProductState& s : tiles.states()) rows.push_back(oracle::expand(s));
  EXPECT_EQ(oracle::full_rank(rows), 5u);
}

TEST(BasisConstruction, RejectsBadShapesAndZeroFactors) {
  EXPECT_THROW(ProductBasis({2, 2}, {ProductState{{{Complex(1), Complex(0), Complex(0)},
                                                   {Complex(1), Complex(0)}},
                                                  ""}}),
               std::invalid_argument);
  EXPECT_THROW(ProductBasis({2}, {ProductState{{{Complex(0), Complex(0)}}, ""}}),
               std::invalid_argument);
  EXPECT_THROW(ProductBasis({}, {}), std::invalid_argument);
}

TEST(BasisConstruction, NormalizesFactors) {
  const ProductBasis b({2}, {ProductState{{{Complex(3), Complex(4)}}, ""}});
  EXPECT_NEAR(norm(b.local(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(b.local(0, 0)[0].real(), 0.6, 1e-15);
}

TEST(BasisIo, ParseStandardDocument) {
  const std::string doc = R"({
    "parties": [2, 2],
    "states": [
      {"name": "00", "factors": [[[1,0],[0,0]], [[1,0],[0,0]]]},
      {"name": "01", "factors": [[[1,0],[0,0]], [[0,0],[1,0]]]},
      {"name": "10", "factors": [[[0,0],[1,0]], [[1,0],[0,0]]]},
      {"name": "11", "factors": [[[0,0],[1,0]], [[0,0],[1,0]]]}
    ]
  })";
  const ProductBasis basis = parse_basis(doc);
  EXPECT_EQ(basis.size(), 4u);
  EXPECT_EQ(basis.dims(), (std::vector<std::size_t>{2, 2}));
  EXPECT_TRUE(validate(basis).complete);
}

TEST(BasisIo, FactorLengthMismatchIsParseError) {
  const std::string doc = R"({
    "parties": [2, 2],
    "states": [{"factors": [[[1,0],[0,0],[0,0]], [[1,0],[0,0]]]}]
  })";
  EXPECT_THROW(parse_basis(doc), ParseError);
}

TEST(BasisIo, MalformedDocumentsThrow) {
  EXPECT_THROW(parse_basis("not json at all"), ParseError);
  EXPECT_THROW(parse_basis("{}"), ParseError);
  EXPECT_THROW(parse_basis(R"({"parties": [2], "states": [{"factors": [[[0,0],[0,0]]]}]})"),
               ParseError);  // zero factor
  EXPECT_THROW(parse_basis(R"({"parties": [0], "states": []})"), ParseError);
}

TEST(BasisIo, StrictModeRejectsNonOrthogonal) {
  const std::string doc = R"({
    "parties": [2],
    "states": [
      {"factors": [[[1,0],[0,0]]]},
      {"factors": [[[1,0],[1,0]]]}
    ]
  })";
  EXPECT_NO_THROW(parse_basis(doc));
  EXPECT_THROW(parse_basis(doc, true), ParseError);
}

TEST(BasisIo, RoundTripPreservesValidationAndValues) {
  for (const char* name : {"std-2x2", "tiles-3x3", "domino-3x3", "shifts-2x2x2"}) {
    const ProductBasis basis = builtin(name).basis;
    const ProductBasis again = parse_basis(serialize_basis(basis));
    const ValidationReport a = validate(basis);
    const ValidationReport b = validate(again);
    EXPECT_EQ(a.orthogonal, b.orthogonal) << name;
    EXPECT_EQ(a.complete, b.complete) << name;
    ASSERT_EQ(basis.size(), again.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      EXPECT_EQ(basis.state(i).name, again.state(i).name);
      for (std::size_t p = 0; p < basis.parties(); ++p)
        for (std::size_t k = 0; k < basis.dims()[p]; ++k)
          EXPECT_EQ(basis.local(i, p)[k], again.local(i, p)[k]) << name;
    }
    // serialize is stable across a round trip
    EXPECT_EQ(serialize_basis(basis), serialize_basis(again)) << name;
  }
}
