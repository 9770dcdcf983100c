#include "sdw/expr_json.hpp"

#include <stdexcept>

namespace sdw {

namespace {

using nlohmann::json;

json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(static_cast<std::int64_t>(z.get_si()));
  return json(z.get_str());
}

mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw std::invalid_argument("expr json: integer expected");
}

json rational_to_json(const mpq_class& q) {
  return json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

mpq_class rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expr json: [p,q] expected");
  mpz_class den = integer_from_json(j[1]);
  if (den == 0) throw std::invalid_argument("expr json: zero denominator");
  mpq_class q(integer_from_json(j[0]), den);
  q.canonicalize();
  return q;
}

}  // namespace

json to_json(const Term& t) {
  json exps = json::object();
  for (int k = 0; k < kNumVars; ++k)
    if (t.mono.slots[k] != 0) exps[VarId::from_index(k).name()] = int(t.mono.slots[k]);
  return {{"re", rational_to_json(t.coeff.re())},
          {"im", rational_to_json(t.coeff.im())},
          {"exps", exps},
          {"qpow", t.mono.qpow()}};
}

Term term_from_json(const json& jt) {
  Term t;
  t.coeff = GaussianRational(rational_from_json(jt.at("re")), rational_from_json(jt.at("im")));
  for (const auto& [name, e] : jt.at("exps").items()) t.mono.set_exp(VarId::from_name(name), e.get<int>());
  t.mono.set_qpow(jt.value("qpow", 0));
  return t;
}

json to_json(const Expr& e) {
  json arr = json::array();
  for (const auto& t : e.terms()) arr.push_back(to_json(t));
  return arr;
}

Expr expr_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expr json: array of terms expected");
  std::vector<Term> terms;
  terms.reserve(j.size());
  for (const auto& jt : j) terms.push_back(term_from_json(jt));
  return Expr::from_terms(std::move(terms));
}

json to_json(const MatrixExpr& m) {
  json entries = json::array();
  for (const auto& e : m.entries()) entries.push_back(to_json(e));
  return {{"rows", MatrixExpr::kDim}, {"cols", MatrixExpr::kDim}, {"entries", entries}};
}

MatrixExpr matrix_from_json(const json& j) {
  const auto& entries = j.at("entries");
  if (entries.size() != MatrixExpr::kDim * MatrixExpr::kDim)
    throw std::invalid_argument("matrix json: expected 16 entries");
  MatrixExpr m;
  for (int k = 0; k < MatrixExpr::kDim * MatrixExpr::kDim; ++k)
    m(k / MatrixExpr::kDim, k % MatrixExpr::kDim) = expr_from_json(entries[k]);
  return m;
}

std::uint64_t fnv1a(const std::string& s, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t content_hash(const Expr& e, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (const auto& t : e.terms()) {
    for (auto s : t.mono.slots) {
      h ^= static_cast<unsigned char>(s);
      h *= 0x100000001b3ULL;
    }
    h = fnv1a(t.coeff.re().get_str(), h);
    h = fnv1a("|" + t.coeff.im().get_str() + ";", h);
  }
  return h;
}

std::uint64_t content_hash(const MatrixExpr& m, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (const auto& e : m.entries()) h = content_hash(e, fnv1a("#", h));
  return h;
}

}  // namespace sdw
