#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace sdw {

/// Integer polynomial in the Lefschetz class L. Zero coefficients are never
/// stored.
class LPoly {
 public:
  LPoly() = default;
  LPoly(long c);  // NOLINT(google-explicit-constructor)
  static LPoly L(int k = 1);
  static LPoly from_coeffs(const std::map<int, mpz_class>& coeffs);

  const std::map<int, mpz_class>& coeffs() const { return coeffs_; }
  mpz_class coeff(int degree) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Throws std::domain_error for the zero polynomial.
  int degree() const;
  int low_degree() const;

  LPoly& operator+=(const LPoly& o);
  LPoly& operator-=(const LPoly& o);
  friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
  friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
  friend LPoly operator-(LPoly a);
  friend LPoly operator*(const LPoly& a, const LPoly& b);
  bool operator==(const LPoly&) const = default;

  mpz_class eval(const mpz_class& x) const;

  /// Exact division by a monic polynomial; quotient and remainder.
  std::pair<LPoly, LPoly> divmod_monic(const LPoly& d) const;

  /// "L^4 - L^3 - L^2 + L", highest degree first.
  std::string to_string() const;

 private:
  void add(int degree, const mpz_class& c);
  std::map<int, mpz_class> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const LPoly& p);

/// A factor and its multiplicity in a factored-by-inspection rendering.
struct LFactor {
  LPoly poly;
  int multiplicity = 1;
};

/// Factorization found by trial division against small cyclotomic-style
/// candidates (L, L - 2, L^k - 1, 1 + L + ... + L^k, L^k + 1). Whatever
/// is left over is kept as one final factor.
struct LFactorization {
  mpz_class content{1};
  std::vector<LFactor> factors;

  LPoly expand() const;
  std::string to_string() const;
};

LFactorization factor_by_inspection(const LPoly& p);

/// [P^m] = 1 + L + ... + L^m. Throws std::invalid_argument for m < 0.
LPoly proj_space(int m);
/// [affine cone] = (L - 1)[Z] + 1.
LPoly affine_cone(const LPoly& z);
/// [projective cone] = L[Z] + 1.
LPoly proj_cone(const LPoly& z);

/// [A^{2n+4} minus the affine cone over C^2 Z] = L^{2n+4} - L^3 [Z] + L^2([Z] - 1).
LPoly complement_c2(const LPoly& z, int n);
/// The same complement with the hyperplanes mu2 = +1 and mu2 = -1 removed too:
/// L^{2n+4} - 2L^{2n+3} - L^3[Z] + 3L^2[Z] - 2L[Z] - L^2 + 2L.
LPoly complement_c2_h(const LPoly& z, int n);
/// Class of the union (affine cone over C^2 Z) u H+ u H-, assembled by
/// inclusion-exclusion from the cone and the two hyperplanes.
LPoly union_c2_h(const LPoly& z, int n);

/// [Z_{W,2n}] = 1 + L + ... + L^{n-1} + 2L^n + L^{n+1} + ... + L^{2n}.
LPoly quadric_class(int n);
/// C_{2n} = [A^{2n+2} minus the affine cone over Z_{W,2n}], closed form
/// L^{2n+2} - L^{2n+1} - L^{n+1} + L^n.
LPoly c2n_closed(int n);
/// C_{2n} by iterating C_{2n} = L^{2n+2} - 2L^{2n+1} + L^{2n} + L C_{2n-2}
/// from C_2 = L^4 - affine_cone([Z_{W,2}]).
LPoly c2n_rec(int n);

/// Closed forms of the two complements.
LPoly complement_c2_closed(int n);
LPoly complement_c2_h_closed(int n);

/// The four classes tabulated per n, in display order.
struct ClassRow {
  std::string name;
  LPoly poly;
};
std::vector<ClassRow> class_table(int n);

/// {"n", "class_name", "coeffs": {"degree": "integer"}}
nlohmann::json to_json(int n, const ClassRow& row);

}  // namespace sdw
