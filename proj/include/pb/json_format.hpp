#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pb/basis.hpp"
#include "pb/bounds.hpp"
#include "pb/distinguish.hpp"
#include "pb/linalg.hpp"
#include "pb/measurement.hpp"

namespace pb {

using Json = nlohmann::ordered_json;

/// Raised for any malformed document: bad JSON, wrong shapes, zero
/// factors, non-finite numbers.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline double json_number(const Json& j, const char* where) {
  if (!j.is_number()) throw ParseError(std::string(where) + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string(where) + ": non-finite number");
  return x;
}

inline Complex json_complex(const Json& j, const char* where) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError(std::string(where) + ": expected [re, im]");
  return Complex(json_number(j[0], where), json_number(j[1], where));
}

inline LocalVector json_vector(const Json& j, const char* where) {
  if (!j.is_array() || j.empty())
    throw ParseError(std::string(where) + ": expected a nonempty entry list");
  LocalVector v;
  for (const Json& e : j) v.push_back(json_complex(e, where));
  return v;
}

inline Json vector_to_json(const LocalVector& v) {
  Json j = Json::array();
  for (const Complex& z : v) j.push_back(Json::array({z.real(), z.imag()}));
  return j;
}

inline Json matrix_to_json(const Matrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    j.push_back(std::move(row));
  }
  return j;
}

inline Matrix json_matrix(const Json& j, const char* where) {
  if (!j.is_array() || j.empty()) throw ParseError(std::string(where) + ": expected a matrix");
  const std::size_t n = j.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n)
      throw ParseError(std::string(where) + ": matrix must be square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = json_complex(j[i][k], where);
  }
  return m;
}

}  // namespace detail

inline Json state_to_json(const ProductState& s) {
  Json j;
  if (!s.name.empty()) j["name"] = s.name;
  Json factors = Json::array();
  for (const LocalVector& f : s.factors) factors.push_back(detail::vector_to_json(f));
  j["factors"] = std::move(factors);
  return j;
}

/// Basis document:
///   { "parties": [d1, d2, ...],
///     "tolerance": 1e-9,                      // optional
///     "states": [ { "name": "...",            // optional
///                   "factors": [ [[re,im],...] per party ] }, ... ] }
/// Factors may be unnormalized; they are normalized on load and the
/// original norms are discarded. All-zero factors are rejected.
inline ProductBasis parse_basis(std::string_view text, bool strict = false) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("basis document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("basis document: expected an object");
  if (!doc.contains("parties") || !doc["parties"].is_array() || doc["parties"].empty())
    throw ParseError("basis document: missing or invalid 'parties'");

  std::vector<std::size_t> dims;
  for (const Json& d : doc["parties"]) {
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw ParseError("basis document: party dimensions must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }

  double tol = kDefaultTol;
  if (doc.contains("tolerance")) {
    tol = detail::json_number(doc["tolerance"], "tolerance");
    if (tol <= 0.0) throw ParseError("basis document: tolerance must be positive");
  }

  if (!doc.contains("states") || !doc["states"].is_array())
    throw ParseError("basis document: missing or invalid 'states'");
  std::vector<ProductState> states;
  for (const Json& js : doc["states"]) {
    if (!js.is_object() || !js.contains("factors") || !js["factors"].is_array())
      throw ParseError("basis document: each state needs a 'factors' array");
    ProductState s;
    if (js.contains("name")) {
      if (!js["name"].is_string()) throw ParseError("basis document: state name must be text");
      s.name = js["name"].get<std::string>();
    }
    if (js["factors"].size() != dims.size())
      throw ParseError("basis document: state factor count does not match party count");
    for (std::size_t p = 0; p < dims.size(); ++p) {
      LocalVector f = detail::json_vector(js["factors"][p], "factor");
      if (f.size() != dims[p])
        throw ParseError("basis document: factor length does not match party dimension");
      s.factors.push_back(std::move(f));
    }
    states.push_back(std::move(s));
  }

  ProductBasis basis = [&] {
    try {
      return ProductBasis(dims, std::move(states), tol);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("basis document: ") + e.what());
    }
  }();

  if (strict && !validate(basis).orthogonal)
    throw ParseError("basis document: states are not mutually orthogonal (strict mode)");
  return basis;
}

inline Json basis_to_json(const ProductBasis& basis) {
  Json doc;
  doc["parties"] = basis.dims();
  doc["tolerance"] = basis.tolerance();
  Json states = Json::array();
  for (const ProductState& s : basis.states()) states.push_back(state_to_json(s));
  doc["states"] = std::move(states);
  return doc;
}

inline std::string serialize_basis(const ProductBasis& basis) {
  return basis_to_json(basis).dump(2) + "\n";
}

/// Operator document: { "party": p, "matrix": [ [[re,im], ...], ... ] }.
inline LocalOperator operator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("party") || !j.contains("matrix"))
    throw ParseError("operator document: expected {party, matrix}");
  if (!j["party"].is_number_integer() || j["party"].get<long long>() < 0)
    throw ParseError("operator document: party must be a nonnegative integer");
  LocalOperator op;
  op.party = j["party"].get<std::size_t>();
  op.matrix = detail::json_matrix(j["matrix"], "operator matrix");
  return op;
}

inline LocalOperator parse_local_operator(std::string_view text) {
  try {
    return operator_from_json(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("operator document: ") + e.what());
  }
}

/// Rounds document for the weak-measurement bound:
///   { "delta_prime": 1e-3,
///     "rounds": [ [ {party, matrix}, ... ], ... ] }
/// Each round lists perturbation operators; parties without an entry get
/// a zero perturbation.
inline RoundOperators parse_rounds(std::string_view text, const std::vector<std::size_t>& dims) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("rounds document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("delta_prime") || !doc.contains("rounds"))
    throw ParseError("rounds document: expected {delta_prime, rounds}");
  RoundOperators ops;
  ops.delta_prime = detail::json_number(doc["delta_prime"], "delta_prime");
  if (!doc["rounds"].is_array() || doc["rounds"].empty())
    throw ParseError("rounds document: 'rounds' must be a nonempty array");
  for (const Json& jr : doc["rounds"]) {
    std::vector<Matrix> round;
    for (std::size_t d : dims) round.push_back(Matrix(d, d));
    if (jr.is_array()) {
      for (const Json& jop : jr) {
        const LocalOperator op = operator_from_json(jop);
        if (op.party >= dims.size()) throw ParseError("rounds document: party out of range");
        if (op.matrix.rows() != dims[op.party])
          throw ParseError("rounds document: operator dimension does not match party");
        round[op.party] = op.matrix;
      }
    } else if (jr.is_object()) {
      const LocalOperator op = operator_from_json(jr);
      if (op.party >= dims.size()) throw ParseError("rounds document: party out of range");
      if (op.matrix.rows() != dims[op.party])
        throw ParseError("rounds document: operator dimension does not match party");
      round[op.party] = op.matrix;
    } else {
      throw ParseError("rounds document: each round must be an operator or operator list");
    }
    ops.rounds.push_back(std::move(round));
  }
  return ops;
}

/// Protocol tree: leaves are {"state": k}; nodes are
/// {"party": p, "outcomes": [{"subset", "projector_basis", "child"}]}.
inline Json protocol_to_json(const ProtocolNode& node) {
  if (node.is_leaf()) return Json{{"state", node.state}};
  Json j;
  j["party"] = node.party;
  Json outs = Json::array();
  for (const auto& out : node.outcomes) {
    Json jo;
    jo["subset"] = out.subset;
    Json pbv = Json::array();
    for (const LocalVector& b : out.projector_basis) pbv.push_back(detail::vector_to_json(b));
    jo["projector_basis"] = std::move(pbv);
    jo["child"] = protocol_to_json(*out.child);
    outs.push_back(std::move(jo));
  }
  j["outcomes"] = std::move(outs);
  return j;
}

inline Json graph_to_json(const OrthoGraph& g) {
  Json j;
  j["party"] = g.party;
  j["nodes"] = g.nodes;
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back(Json::array({a, b}));
  j["edges"] = std::move(edges);
  return j;
}

}  // namespace pb
