#include <gtest/gtest.h>

#include <array>
#include <set>

#include "sdw/symbol.hpp"
#include "test_util.hpp"

namespace sdw {
namespace {

using testing::close;
using Mat4 = std::array<std::array<double, 4>, 4>;

Mat4 inverse(Mat4 a) {
  Mat4 inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = 1;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const double d = a[c][c];
    for (int k = 0; k < 4; ++k) {
      a[c][k] /= d;
      inv[c][k] /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (int k = 0; k < 4; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

const SymbolTriple& triple() {
  static const SymbolTriple p = square_symbol(dirac_symbol());
  return p;
}

// Metric w1 w2 w3 dt^2 + sum_a c_a sigma_a^2 in coordinates (t, eta, phi, psi),
// sigma_a the left-invariant forms of SU(2) in Euler angles.
TEST(SquareSymbol, PrincipalPartIsInverseMetric) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    Assignment p = testing::random_point(rng);
    const double w1 = p.w(1), w2 = p.w(2), w3 = p.w(3);
    const double se = p.at(VarId::sin_eta()), ce = p.at(VarId::cos_eta());
    const double sp = p.at(VarId::sin_psi()), cp = p.at(VarId::cos_psi());
    // Rows: coefficients of (dt, d eta, d phi, d psi).
    const std::array<std::array<double, 4>, 4> forms{{{1, 0, 0, 0},
                                                      {0, sp, -se * cp, 0},
                                                      {0, cp, se * sp, 0},
                                                      {0, 0, ce, 1}}};
    const std::array<double, 4> c{w1 * w2 * w3, w2 * w3 / w1, w1 * w3 / w2, w1 * w2 / w3};
    Mat4 g{};
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] += c[a] * forms[a][i] * forms[a][j];
    const Mat4 gi = inverse(g);
    double expected = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) expected += gi[i][j] * p.at(VarId::xi(i + 1)) * p.at(VarId::xi(j + 1));
    EXPECT_TRUE(close(eval(triple().p2_scalar, p), expected, 1e-10));
  }
}

TEST(SquareSymbol, PrincipalPartIsScalar) {
  const DiracSymbol q = dirac_symbol();
  EXPECT_EQ(mat_mul(q.q1, q.q1), triple().p2);
  EXPECT_TRUE(triple().p2.is_scalar());
  EXPECT_EQ(triple().p2(0, 0), triple().p2_scalar);
  for (const auto& e : triple().p1.entries()) EXPECT_EQ(homogeneity_violations(e, 1, VarKind::Xi), 0u);
  for (const auto& e : triple().p0.entries()) EXPECT_FALSE(contains_kind(e, VarKind::Xi));
}

TEST(SquareSymbol, IndependentOfGammaRepresentation) {
  const SymbolTriple alt = square_symbol(dirac_symbol(alternate_gamma_rep()));
  EXPECT_EQ(alt.p2_scalar, triple().p2_scalar);
  EXPECT_EQ(mat_trace(alt.p0), mat_trace(triple().p0));
}

TEST(Coordinates, QuadraticFormMovesToDiagonalForm) {
  for (int n : {1, 2}) {
    const Expr q_xi = xi_quadratic_form(triple(), n);
    EXPECT_EQ(substitute(q_xi, xi_to_zeta_rules(n)), zeta_quadratic_form(n));
  }
}

TEST(Coordinates, ZetaXiRoundTrip) {
  for (int n : {1, 2}) {
    for (int k = 1; k <= 2 * n + 2; ++k) {
      const Expr x = Expr::var(VarId::xi(k));
      EXPECT_EQ(substitute(substitute(x, xi_to_zeta_rules(n)), zeta_to_xi_rules(n)), x) << "xi" << k;
    }
  }
}

TEST(ResolventTuples, MatchesBruteForceEnumeration) {
  for (int m = -3; m >= -8; --m) {
    std::set<std::tuple<int, int, int, int, int>> expected;
    for (int j = -20; j <= 0; ++j)
      for (int k = -3; k <= 5; ++k)
        for (int a1 = 0; a1 <= 20; ++a1)
          for (int a2 = 0; a2 <= 20; ++a2)
            for (int a4 = 0; a4 <= 20; ++a4)
              if (m < j && j <= -2 && 0 <= k && k <= 2 && j - (a1 + a2 + a4) + k == m + 2)
                expected.insert({j, k, a1, a2, a4});
    std::set<std::tuple<int, int, int, int, int>> got;
    for (const auto& t : resolvent_tuples(m)) EXPECT_TRUE(got.insert({t.j, t.k, t.a1, t.a2, t.a4}).second);
    EXPECT_EQ(got, expected) << "m=" << m;
  }
}

class ResolventN1 : public ::testing::Test {
 protected:
  static const ResolventSymbol& full() {
    static const ResolventSymbol rs = resolvent(1, triple());
    return rs;
  }
};

TEST_F(ResolventN1, BaseLayer) { EXPECT_EQ(full().layer(-2), MatrixExpr::scalar(Expr::q_inverse(1))); }

TEST_F(ResolventN1, FirstCorrectionFromCompositionRule) {
  const QForm& q = full().q;
  const MatrixExpr s2 = full().layer(-2);
  MatrixExpr inner = mat_mul(s2, triple().p1);
  const std::pair<int, Derivation> pairs[] = {{1, Derivation::t()}, {2, Derivation::eta()}, {4, Derivation::psi()}};
  for (const auto& [k, dx] : pairs)
    inner += mat_mul(s2.derived(Derivation::xi(k), &q), triple().p2.derived(dx)).scaled(-GaussianRational::i());
  EXPECT_EQ(full().layer(-3), -mat_mul(inner, s2));
}

TEST_F(ResolventN1, Homogeneity) {
  for (const auto& [m, layer] : full().layers) EXPECT_EQ(homogeneity_violations(layer, m, VarKind::Xi), 0u) << m;
  EXPECT_EQ(full().layers.size(), 3u);
}

TEST_F(ResolventN1, TraceOnlyLastLayerMatchesFullTrace) {
  ResolventOptions opts;
  opts.trace_only_last = true;
  const ResolventSymbol t = resolvent(1, triple(), opts);
  ASSERT_TRUE(t.last_trace.has_value());
  EXPECT_FALSE(t.layers.contains(-4));
  EXPECT_EQ(*t.last_trace, mat_trace(full().layer(-4)));
  EXPECT_THROW(to_zeta(t), std::out_of_range);
  const Density a = traced_density(t), b = traced_density(full());
  EXPECT_EQ(a.expr, b.expr);
}

TEST_F(ResolventN1, ZetaFormIsXiFreeWithRightDegree) {
  const ZetaSymbol z = to_zeta(full());
  EXPECT_EQ(z.q.expr(), zeta_quadratic_form(1));
  for (const auto& e : z.sigma.entries()) {
    EXPECT_FALSE(contains_kind(e, VarKind::Xi));
    EXPECT_EQ(homogeneity_violations(e, -4, VarKind::Zeta), 0u);
  }
  EXPECT_EQ(traced_density(full()).expr, mat_trace(z.sigma));
}

TEST(Resolvent, UnsupportedDimension) {
  EXPECT_THROW(resolvent(0, triple()), std::out_of_range);
  EXPECT_THROW(resolvent(3, triple()), std::out_of_range);
}

}  // namespace
}  // namespace sdw
