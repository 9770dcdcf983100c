#include <gtest/gtest.h>

#include <sstream>

#include "sdw/expr.hpp"
#include "sdw/expr_json.hpp"
#include "test_util.hpp"

namespace sdw {
namespace {

using testing::close;
using testing::random_expr;
using testing::random_point;
using C = GaussianRational;

TEST(GaussianRational, FieldOperations) {
  const C a(mpq_class(1, 2), mpq_class(3));
  const C b(mpq_class(-2), mpq_class(1, 3));
  EXPECT_EQ(a * b, C(mpq_class(-1, 1) - mpq_class(1), mpq_class(1, 6) - mpq_class(6)));
  EXPECT_EQ(C::i() * C::i(), C(-1));
  C q = a;
  q /= b;
  q *= b;
  EXPECT_EQ(q, a);
  EXPECT_EQ(a.conj().im(), mpq_class(-3));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE(C::fraction(6, 4) == C(mpq_class(3, 2)));
  C z = a;
  EXPECT_THROW(z /= C(0), std::domain_error);
}

TEST(Monomial, ExponentOverflowIsReported) {
  Monomial m;
  m.set_exp(VarId::u(1), 100);
  EXPECT_THROW(m * m, std::overflow_error);
}

TEST(Monomial, DegreeByKind) {
  Monomial m;
  m.set_exp(VarId::xi(1), 2);
  m.set_exp(VarId::xi(4), -1);
  m.set_exp(VarId::zeta(2), 3);
  EXPECT_EQ(m.degree(VarKind::Xi), 1);
  EXPECT_EQ(m.degree(VarKind::Zeta), 3);
  EXPECT_FALSE(m.has_kind(VarKind::Mu));
}

TEST(VarId, NamesRoundTrip) {
  for (int k = 0; k < kNumVars; ++k) {
    const VarId v = VarId::from_index(k);
    EXPECT_EQ(VarId::from_name(v.name()), v);
  }
  EXPECT_EQ(VarId::omega(2, 3).name(), "om2_3");
  EXPECT_THROW(VarId::from_name("nope"), std::invalid_argument);
}

TEST(Expr, TrigNormalForm) {
  const Expr s = Expr::var(VarId::sin_eta());
  const Expr c = Expr::var(VarId::cos_eta());
  EXPECT_EQ(s * s + c * c, Expr(1));
  EXPECT_EQ(c * c * c, c - s * s * c);
  for (const auto& t : pow(c + s, 5).terms()) EXPECT_LE(t.mono.exp(VarId::cos_eta()), 1);
}

TEST(Expr, CanonicalFormIsOrderIndependent) {
  const Expr a = Expr::var(VarId::u(1)) + Expr::var(VarId::xi(2), 2) - Expr(3);
  const Expr b = Expr(-3) + Expr::var(VarId::xi(2), 2) + Expr::var(VarId::u(1));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.terms().size(), 3u);
  EXPECT_TRUE((a - b).is_zero());
}

TEST(ExprProperty, RingAxioms) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Expr a = random_expr(rng, 5, true), b = random_expr(rng, 5, true), c = random_expr(rng, 5, true);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + Expr(), a);
    EXPECT_EQ(a * Expr(1), a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(ExprProperty, ProductAgreesWithFloatingPointEvaluation) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Expr a = random_expr(rng), b = random_expr(rng);
    const Assignment p = random_point(rng);
    EXPECT_TRUE(close(eval(a * b, p), eval(a, p) * eval(b, p)));
    EXPECT_TRUE(close(eval(a + b, p), eval(a, p) + eval(b, p)));
  }
}

TEST(ExprProperty, NormalizeIsIdempotent) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Expr a = random_expr(rng, 8, true) * random_expr(rng, 4, true);
    EXPECT_EQ(normalize(a), a);
    EXPECT_EQ(normalize(normalize(a)), normalize(a));
  }
}

TEST(ExprProperty, JsonRoundTrip) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    Expr a = random_expr(rng, 6, true) * Expr::q_inverse(trial % 4);
    EXPECT_EQ(expr_from_json(to_json(a)), a);
    EXPECT_EQ(expr_from_json(nlohmann::json::parse(to_json(a).dump())), a);
  }
  // Integers beyond int64 travel as strings.
  mpz_class big("123456789012345678901234567890");
  mpq_class frac(big, mpz_class(7));
  frac.canonicalize();
  Expr e{C(frac)};
  EXPECT_EQ(expr_from_json(to_json(e)), e);
}

TEST(ExprJson, RejectsMalformedInput) {
  EXPECT_THROW(expr_from_json(nlohmann::json::object()), std::invalid_argument);
  const auto bad_var = nlohmann::json::parse(R"([{"re":[1,1],"im":[0,1],"exps":{"v9":1},"qpow":0}])");
  EXPECT_THROW(expr_from_json(bad_var), std::invalid_argument);
  const auto zero_den = nlohmann::json::parse(R"([{"re":[1,0],"im":[0,1],"exps":{},"qpow":0}])");
  EXPECT_THROW(expr_from_json(zero_den), std::invalid_argument);
}

TEST(ExprJson, ContentHashTracksContent) {
  const Expr a = Expr::var(VarId::u(1)) + Expr(2);
  EXPECT_EQ(content_hash(a), content_hash(Expr(2) + Expr::var(VarId::u(1))));
  EXPECT_NE(content_hash(a), content_hash(a + Expr(1)));
}

TEST(Expr, QPowersAndHelpers) {
  const Expr e = Expr::var(VarId::xi(1), 2) * Expr::q_inverse(2);
  EXPECT_EQ(max_qpow(e), 2);
  EXPECT_EQ(max_qpow(e.with_qpow_shift(1)), 3);
  EXPECT_TRUE(contains(e, VarId::xi(1)));
  EXPECT_TRUE(contains_kind(e, VarKind::Xi));
  EXPECT_FALSE(contains_kind(e, VarKind::Zeta));
  EXPECT_TRUE(is_trig_free(e));
  EXPECT_FALSE(is_trig_free(e * Expr::var(VarId::sin_psi())));
  EXPECT_TRUE(is_real(e));
  EXPECT_FALSE(is_real(e.scaled(C::i())));
  std::ostringstream os;
  os << e;
  EXPECT_FALSE(os.str().empty());
}

TEST(Expr, PowMatchesRepeatedProduct) {
  const Expr a = Expr::var(VarId::u(1)) + Expr::var(VarId::cos_psi());
  EXPECT_EQ(pow(a, 4), a * a * a * a);
  EXPECT_EQ(pow(a, 0), Expr(1));
}

}  // namespace
}  // namespace sdw
