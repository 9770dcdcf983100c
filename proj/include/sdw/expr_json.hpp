#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "sdw/expr.hpp"
#include "sdw/matrix.hpp"

namespace sdw {

// Canonical JSON for expressions: an array of terms, each
//   {"re":[p,q],"im":[p,q],"exps":{"u1":-1,"sin_eta":2,...},"qpow":rho}
// Integers that do not fit in int64 are written as decimal strings.

nlohmann::json to_json(const Term& t);
Term term_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Expr& e);
Expr expr_from_json(const nlohmann::json& j);

/// {"rows":4,"cols":4,"entries":[16 Expr arrays, row-major]}
nlohmann::json to_json(const MatrixExpr& m);
MatrixExpr matrix_from_json(const nlohmann::json& j);

/// 64-bit FNV-1a over the canonical serialization.
std::uint64_t content_hash(const Expr& e, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t content_hash(const MatrixExpr& m, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a(const std::string& s, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace sdw
