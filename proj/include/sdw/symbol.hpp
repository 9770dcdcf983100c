#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdw/density.hpp"
#include "sdw/matrix.hpp"

namespace sdw {

/// Principal and subprincipal parts of the Dirac symbol, q1 + q0.
struct DiracSymbol {
  MatrixExpr q1;  // linear in xi_1..xi_4
  MatrixExpr q0;  // xi-free
};

/// Symbol of the Dirac operator of the Bianchi IX metric in the coordinates
/// (t, eta, phi, psi), with w_i = u_i^2 and w_i' = om_i_1.
DiracSymbol dirac_symbol(const GammaRep& rep = default_gamma_rep());

/// Symbol of D^2 split by xi-degree.
struct SymbolTriple {
  MatrixExpr p2;  // p2_scalar * I
  MatrixExpr p1;
  MatrixExpr p0;
  Expr p2_scalar;
};

/// p2 = q1^2, p1 = q0 q1 + q1 q0 - i sum_j (d_xi_j q1)(d_x_j q1),
/// p0 = q0^2 - i sum_j (d_xi_j q1)(d_x_j q0), with x-derivatives in t, eta
/// and psi only (nothing depends on phi). Throws std::logic_error when q1^2
/// is not a scalar matrix.
SymbolTriple square_symbol(const DiracSymbol& q);

/// Index tuple of one summand of the resolvent recursion for layer m:
/// m < j <= -2, 0 <= k <= 2, j - (a1 + a2 + a4) + k = m + 2.
struct ResolventTuple {
  int j, k, a1, a2, a4;
  bool operator==(const ResolventTuple&) const = default;
};

/// All admissible tuples for layer m (m <= -3), generated from the constraint.
std::vector<ResolventTuple> resolvent_tuples(int m);

/// Q in xi-coordinates: p2_scalar + xi_5^2 + ... + xi_{2n+2}^2.
Expr xi_quadratic_form(const SymbolTriple& p, int n);
/// Q_{W,2n} = sum_a W_a^2 zeta_a^2 + zeta_5^2 + ... + zeta_{2n+2}^2, W_a in u.
Expr zeta_quadratic_form(int n);

/// W_a^2 as a monomial in u (a = 1..4).
Expr w_squared(int a);

/// xi in terms of zeta (the map applied to symbols).
SubstitutionRules xi_to_zeta_rules(int n);
/// zeta in terms of xi (its inverse, used for consistency checks).
SubstitutionRules zeta_to_xi_rules(int n);

inline constexpr int kMinSupportedN = 1;
inline constexpr int kMaxSupportedN = 2;

struct ResolventOptions {
  /// When set, layers are read from / written to this directory.
  std::optional<std::filesystem::path> cache_dir;
  std::function<void(const std::string&)> log;
  /// Only the trace of the last layer sigma_{-2n-2} is formed (it is all the
  /// residue needs); layers() then stops at -2n-1.
  bool trace_only_last = false;
};

/// Homogeneous layers sigma_m of the parametrix of D^2 + (flat part),
/// m = -2 .. -2n-2, in xi-coordinates.
struct ResolventSymbol {
  int n = 1;
  QForm q;                           // xi-stage Q
  std::map<int, MatrixExpr> layers;  // key m
  std::optional<Expr> last_trace;    // tr sigma_{-2n-2}, when only the trace was formed
  std::vector<int> cached_layers;    // layers loaded from disk
  std::map<int, double> layer_seconds;

  const MatrixExpr& layer(int m) const;
};

/// Throws std::out_of_range for n outside {1, 2}.
ResolventSymbol resolvent(int n, const SymbolTriple& p, const ResolventOptions& opts = {});

/// Number of terms violating (degree in `kind`) - 2 qpow == m.
std::size_t homogeneity_violations(const Expr& e, int m, VarKind kind);
std::size_t homogeneity_violations(const MatrixExpr& e, int m, VarKind kind);

/// Zeta-coordinate form of the last layer.
struct ZetaSymbol {
  int n = 1;
  MatrixExpr sigma;
  QForm q;  // Q_{W,2n}
};

/// Substitutes xi -> zeta into sigma_{-2n-2}, moving the Q-context to
/// Q_{W,2n}. Throws std::logic_error if any xi survives and
/// std::out_of_range if only the trace of the last layer was formed.
ZetaSymbol to_zeta(const ResolventSymbol& rs);

/// tr(sigma_{-2n-2}) in zeta-coordinates (trace taken before substitution).
Density traced_density(const ResolventSymbol& rs);

}  // namespace sdw
