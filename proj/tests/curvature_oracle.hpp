#pragma once

#include <array>
#include <cmath>

#include "sdw/calculus.hpp"
#include "sdw/numeric.hpp"

namespace sdw::testing {

/// Curvature of w1 w2 w3 dt^2 + sum_a c_a sigma_a^2 in coordinates
/// (t, eta, phi, psi), sigma_a the left-invariant forms of SU(2) in Euler
/// angles, c = (w2 w3 / w1, w1 w3 / w2, w1 w2 / w3). Christoffel symbols and
/// Riemann components are exact expressions; contractions are done in
/// floating point at a given assignment.
class CurvatureOracle {
 public:
  using E4 = std::array<std::array<Expr, 4>, 4>;

  CurvatureOracle() {
    const Expr se = v(VarId::sin_eta()), ce = v(VarId::cos_eta());
    const Expr sp = v(VarId::sin_psi()), cp = v(VarId::cos_psi());
    const Expr u1 = v(VarId::u(1)), u2 = v(VarId::u(2)), u3 = v(VarId::u(3));
    const Expr w1 = u1 * u1, w2 = u2 * u2, w3 = u3 * u3;
    const Expr iw1 = Expr::var(VarId::u(1), -2), iw2 = Expr::var(VarId::u(2), -2), iw3 = Expr::var(VarId::u(3), -2);
    const std::array<Expr, 4> c{w1 * w2 * w3, w2 * w3 * iw1, w1 * w3 * iw2, w1 * w2 * iw3};
    const std::array<Expr, 4> ic{iw1 * iw2 * iw3, w1 * iw2 * iw3, w2 * iw1 * iw3, w3 * iw1 * iw2};
    // Coframe rows over (dt, d eta, d phi, d psi) and the dual frame columns.
    const E4 forms{{{Expr(1), Expr(), Expr(), Expr()},
                    {Expr(), sp, -(se * cp), Expr()},
                    {Expr(), cp, se * sp, Expr()},
                    {Expr(), Expr(), ce, Expr(1)}}};
    const Expr csc = Expr::var(VarId::sin_eta(), -1);
    const E4 frame{{{Expr(1), Expr(), Expr(), Expr()},
                    {Expr(), sp, -(cp * csc), cp * ce * csc},
                    {Expr(), cp, sp * csc, -(sp * ce * csc)},
                    {Expr(), Expr(), Expr(), Expr(1)}}};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int a = 0; a < 4; ++a) {
          g_[i][j] += c[a] * forms[a][i] * forms[a][j];
          gi_[i][j] += ic[a] * frame[a][i] * frame[a][j];
        }
    for (int l = 0; l < 4; ++l)
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          Expr s;
          for (int k = 0; k < 4; ++k) s += gi_[l][k] * (d(g_[k][n], m) + d(g_[k][m], n) - d(g_[m][n], k));
          gamma_[l][m][n] = s.scaled(GaussianRational::fraction(1, 2));
        }
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s)
        for (int m = 0; m < 4; ++m)
          for (int n = m + 1; n < 4; ++n) {
            Expr x = d(gamma_[r][n][s], m) - d(gamma_[r][m][s], n);
            for (int l = 0; l < 4; ++l) x += gamma_[r][m][l] * gamma_[l][n][s] - gamma_[r][n][l] * gamma_[l][m][s];
            riem_[r][s][m][n] = x;
            riem_[r][s][n][m] = -x;
          }
    for (int s = 0; s < 4; ++s)
      for (int n = 0; n < 4; ++n)
        for (int r = 0; r < 4; ++r) ric_[s][n] += riem_[r][s][r][n];
    for (int s = 0; s < 4; ++s)
      for (int n = 0; n < 4; ++n) scalar_ += gi_[s][n] * ric_[s][n];
  }

  /// g * g^-1 == I exactly.
  bool inverse_ok() const {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Expr s;
        for (int k = 0; k < 4; ++k) s += g_[i][k] * gi_[k][j];
        if (!(s == Expr(i == j ? 1 : 0))) return false;
      }
    return true;
  }

  const Expr& scalar() const { return scalar_; }

  struct Invariants {
    double r = 0, ric2 = 0, riem2 = 0, box_r = 0;
  };

  Invariants at(const Assignment& a) const {
    double gi[4][4], rm[4][4][4][4], rc[4][4], gm[4][4][4];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        gi[i][j] = eval(gi_[i][j], a);
        rc[i][j] = eval(ric_[i][j], a);
        for (int k = 0; k < 4; ++k) {
          gm[i][j][k] = eval(gamma_[i][j][k], a);
          for (int l = 0; l < 4; ++l) rm[i][j][k][l] = eval(riem_[i][j][k][l], a);
        }
      }
    double g[4][4];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = eval(g_[i][j], a);
    Invariants out;
    out.r = eval(scalar_, a);
    // Ric^mn Ric_mn
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n)
        for (int p = 0; p < 4; ++p)
          for (int q = 0; q < 4; ++q) out.ric2 += gi[m][p] * gi[n][q] * rc[m][n] * rc[p][q];
    // R_rsmn R^rsmn = g_ra g^sb g^mc g^nd R^r_smn R^a_bcd
    double low[4][4][4][4] = {};
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s)
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n)
            for (int k = 0; k < 4; ++k) low[r][s][m][n] += g[r][k] * rm[k][s][m][n];
    double up[4][4][4][4] = {};
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s)
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n) {
            double x = 0;
            for (int b = 0; b < 4; ++b)
              for (int c = 0; c < 4; ++c)
                for (int e = 0; e < 4; ++e) x += gi[s][b] * gi[m][c] * gi[n][e] * rm[r][b][c][e];
            up[r][s][m][n] = x;
          }
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s)
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n) out.riem2 += low[r][s][m][n] * up[r][s][m][n];
    // box R = g^mn (d_m d_n R - Gamma^l_mn d_l R)
    double dr[4];
    for (int l = 0; l < 4; ++l) dr[l] = eval(d(scalar_, l), a);
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        double x = eval(d(d(scalar_, m), n), a);
        for (int l = 0; l < 4; ++l) x -= gm[l][m][n] * dr[l];
        out.box_r += gi[m][n] * x;
      }
    return out;
  }

 private:
  static Expr v(VarId id) { return Expr::var(id); }
  static Expr d(const Expr& e, int coord) {
    switch (coord) {
      case 0: return derive(e, Derivation::t());
      case 1: return derive(e, Derivation::eta());
      case 3: return derive(e, Derivation::psi());
      default: return Expr();  // nothing depends on phi
    }
  }

  E4 g_{}, gi_{};
  std::array<E4, 4> gamma_{};
  std::array<std::array<E4, 4>, 4> riem_{};
  E4 ric_{};
  Expr scalar_;
};

/// A point on the angle torus plus the given anisotropy data.
inline Assignment with_angles(Assignment a, double eta = 0.7, double psi = 1.1) {
  a.set(VarId::sin_eta(), std::sin(eta));
  a.set(VarId::cos_eta(), std::cos(eta));
  a.set(VarId::sin_psi(), std::sin(psi));
  a.set(VarId::cos_psi(), std::cos(psi));
  return a;
}

}  // namespace sdw::testing
