#pragma once

#include <cmath>
#include <random>

#include "sdw/expr.hpp"
#include "sdw/numeric.hpp"

namespace sdw::testing {

/// Random expression over a handful of variables, including both angles so
/// that products exercise the trig normal form. Coefficients are small real
/// rationals unless `complex` is set.
inline Expr random_expr(std::mt19937_64& rng, int max_terms = 5, bool complex = false) {
  const VarId vars[] = {VarId::u(1), VarId::u(2), VarId::omega(1, 1), VarId::sin_eta(), VarId::cos_eta(),
                        VarId::sin_psi(), VarId::cos_psi(), VarId::xi(1)};
  std::uniform_int_distribution<int> nterms(0, max_terms), coeff(-9, 9), den(1, 4), exp(-2, 3), pick(0, 7);
  Expr e;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m;
    for (int k = 0; k < 3; ++k) {
      const VarId v = vars[pick(rng)];
      int x = exp(rng);
      if (v.kind() == VarKind::CosEta || v.kind() == VarKind::CosPsi) x = std::abs(x);
      m.set_exp(v, x);
    }
    GaussianRational c(mpq_class(coeff(rng), den(rng)), complex ? mpq_class(coeff(rng), den(rng)) : mpq_class(0));
    e += Expr::monomial(m, c);
  }
  return e;
}

/// A point with sin^2 + cos^2 = 1 for both angles.
inline Assignment random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.5, 2.0), any(-1.5, 1.5), angle(0.2, 1.3);
  Assignment a;
  for (int i = 1; i <= 3; ++i) {
    a.set_w(i, pos(rng));
    for (int j = 1; j <= kMaxOmegaOrder; ++j) a.set_w_derivative(i, j, any(rng));
  }
  const double eta = angle(rng), psi = angle(rng);
  a.set(VarId::sin_eta(), std::sin(eta));
  a.set(VarId::cos_eta(), std::cos(eta));
  a.set(VarId::sin_psi(), std::sin(psi));
  a.set(VarId::cos_psi(), std::cos(psi));
  for (int k = 1; k <= kMaxXi; ++k) {
    a.set(VarId::xi(k), any(rng));
    a.set(VarId::zeta(k), any(rng));
  }
  a.set(VarId::mu(1), 0.3);
  a.set(VarId::mu(2), 0.4);
  return a;
}

inline bool close(double x, double y, double rel = 1e-9) {
  return std::abs(x - y) <= rel * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace sdw::testing
