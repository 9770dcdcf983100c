#include <gtest/gtest.h>

#include "sdw/calculus.hpp"
#include "test_util.hpp"

namespace sdw {
namespace {

using testing::close;
using testing::random_expr;
using testing::random_point;

double central_difference(const std::function<double(double)>& f, double x) {
  const double h = 1e-5;
  return (f(x + h) - f(x - h)) / (2 * h);
}

TEST(Derive, TimeDerivativeOfWeights) {
  const Expr u1 = Expr::var(VarId::u(1));
  const Expr om11 = Expr::var(VarId::omega(1, 1));
  EXPECT_EQ(derive(u1 * u1, Derivation::t()), om11);
  EXPECT_EQ(derive(u1, Derivation::t()), om11 * Expr::var(VarId::u(1), -1) * Expr(GaussianRational::fraction(1, 2)));
  EXPECT_EQ(derive(om11, Derivation::t()), Expr::var(VarId::omega(1, 2)));
  EXPECT_EQ(derive(Expr::var(VarId::xi(1)), Derivation::t()), Expr());
  EXPECT_THROW(derive(Expr::var(VarId::omega(2, kMaxOmegaOrder)), Derivation::t()), std::out_of_range);
}

TEST(Derive, AngleDerivatives) {
  const Expr s = Expr::var(VarId::sin_eta()), c = Expr::var(VarId::cos_eta());
  EXPECT_EQ(derive(s, Derivation::eta()), c);
  EXPECT_EQ(derive(c, Derivation::eta()), -s);
  EXPECT_EQ(derive(s, Derivation::psi()), Expr());
  EXPECT_EQ(derive(Expr::var(VarId::sin_psi()), Derivation::psi()), Expr::var(VarId::cos_psi()));
}

TEST(DeriveProperty, Leibniz) {
  std::mt19937_64 rng(21);
  for (const auto d : {Derivation::t(), Derivation::eta(), Derivation::psi(), Derivation::xi(1)}) {
    for (int trial = 0; trial < 60; ++trial) {
      const Expr a = random_expr(rng, 4, true), b = random_expr(rng, 4, true);
      EXPECT_EQ(derive(a * b, d), derive(a, d) * b + a * derive(b, d)) << d.tag();
      EXPECT_EQ(derive(a + b, d), derive(a, d) + derive(b, d));
    }
  }
}

TEST(DeriveProperty, AngleDerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const Expr a = random_expr(rng);
    Assignment p = random_point(rng);
    const double eta = std::atan2(p.at(VarId::sin_eta()), p.at(VarId::cos_eta()));
    auto f = [&](double x) {
      Assignment q = p;
      q.set(VarId::sin_eta(), std::sin(x));
      q.set(VarId::cos_eta(), std::cos(x));
      return eval(a, q);
    };
    EXPECT_TRUE(close(eval(derive(a, Derivation::eta()), p), central_difference(f, eta), 1e-5));
  }
}

TEST(DeriveProperty, XiDerivativeThroughQMatchesFiniteDifference) {
  const Expr xi1 = Expr::var(VarId::xi(1)), xi2 = Expr::var(VarId::xi(2));
  const QForm q(xi1 * xi1 + Expr::var(VarId::u(2), 2) * xi2 * xi2 + Expr::var(VarId::sin_eta()) * xi1 * xi2);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Expr a = (random_expr(rng, 3) + Expr(1)) * Expr::q_inverse(1 + trial % 3);
    Assignment p = random_point(rng);
    p.set(VarId::xi(1), 1.3);
    p.set(VarId::xi(2), -0.7);
    auto f = [&](double x) {
      Assignment r = p;
      r.set(VarId::xi(1), x);
      return eval(a, r, &q);
    };
    EXPECT_TRUE(close(eval(derive(a, Derivation::xi(1), &q), p, &q), central_difference(f, 1.3), 1e-5));
  }
}

TEST(Derive, QPowerWithoutContextThrows) {
  EXPECT_THROW(derive(Expr::q_inverse(1), Derivation::xi(1)), std::logic_error);
}

TEST(Derivation, TagRoundTrip) {
  for (const auto d : {Derivation::t(), Derivation::eta(), Derivation::psi(), Derivation::xi(3)})
    EXPECT_EQ(Derivation::parse(d.tag()), d);
  EXPECT_THROW(Derivation::parse("omega"), std::invalid_argument);
}

TEST(Substitute, PolynomialAndNegativePowers) {
  const Expr xi1 = Expr::var(VarId::xi(1)), z1 = Expr::var(VarId::zeta(1)), z2 = Expr::var(VarId::zeta(2));
  SubstitutionRules rules{{VarId::xi(1), z1 + z2}};
  EXPECT_EQ(substitute(xi1 * xi1, rules), z1 * z1 + Expr(2) * z1 * z2 + z2 * z2);
  EXPECT_THROW(substitute(Expr::var(VarId::xi(1), -1), rules), std::domain_error);
  SubstitutionRules scale{{VarId::xi(1), z1.scaled(GaussianRational(3))}};
  EXPECT_EQ(substitute(Expr::var(VarId::xi(1), -2), scale),
            Expr::var(VarId::zeta(1), -2).scaled(GaussianRational::fraction(1, 9)));
}

TEST(Substitute, CheckedQMove) {
  const Expr xi1 = Expr::var(VarId::xi(1)), z1 = Expr::var(VarId::zeta(1));
  const QForm from(xi1 * xi1 + Expr(1));
  const QForm to(z1 * z1 + Expr(1));
  const SubstitutionRules rules{{VarId::xi(1), z1}};
  EXPECT_EQ(substitute(xi1 * Expr::q_inverse(2), rules, from, to), z1 * Expr::q_inverse(2));
  const QForm wrong(z1 * z1 + Expr(2));
  EXPECT_THROW(substitute(xi1 * Expr::q_inverse(2), rules, from, wrong), std::logic_error);
}

}  // namespace
}  // namespace sdw
