#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdw/density.hpp"

namespace sdw {

/// Keeps only the terms whose sin/cos exponents in eta and psi are all even.
/// Requires the canonical trig form (cos exponents 0 or 1).
Density parity_filter(const Density& d);

/// rational * pi^pi_power.
struct PiRational {
  mpq_class value{0};
  int pi_power = 0;
  bool operator==(const PiRational&) const = default;
};

/// Integral of zeta^beta over the unit sphere in R^N, N = beta.size():
/// 0 if some beta_k is odd, else 2 prod Gamma((beta_k+1)/2) / Gamma((|beta|+N)/2).
/// Half-integer Gamma values are tracked exactly as rational * sqrt(pi); N must
/// be even. Throws std::invalid_argument on negative entries or odd N.
PiRational zeta_moment(std::span<const int> beta);

/// |W_a| as a positive monomial in u (a = 1..4).
Monomial abs_w_monomial(int a);

/// Integral of the density over the cycle Q_{W,2n} = 1 against the sphere
/// form: Q^rho -> 1 and zeta^beta -> prod_a |W_a|^-(beta_a+1) * moment(beta),
/// with pi kept as the variable `pi`. Trig factors pass through. Throws
/// std::invalid_argument if a term is not of zeta-degree -2n-2.
Expr cycle_integral(const Density& d);

class IndependenceViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RationalityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SdwStats {
  std::map<int, std::size_t> layer_terms;
  std::size_t density_terms = 0;
  std::size_t filtered_terms = 0;
  std::size_t alpha_terms = 0;
  std::size_t negative_sin_psi_terms = 0;  // in the unfiltered density
  std::size_t negative_sin_eta_terms = 0;
  bool even_u = true;
  std::map<std::string, double> seconds;
  std::vector<int> cached_layers;
};

/// The heat coefficient density alpha_2n as a rational function of the u_i
/// (always through even powers when even_u holds) and the om_i_j.
struct SdwResult {
  int n = 1;
  Expr alpha;
  SdwStats stats;
};

/// alpha_2n = pi^-(n+2) * (integral of sin(eta) over [0, pi/2] = 1)
///          * (pi/2) * cycle_integral(parity_filter(density)).
/// Throws IndependenceViolation when the cycle integral depends on eta or psi
/// and RationalityViolation when a power of pi survives.
SdwResult assemble_alpha(const Density& density);

/// Domain of the mu-integral.
enum class PeriodDomain {
  /// {0 < mu1, mu2 < 1, mu1^2 + mu2^2 < 1}: the image of (eta, psi) in (0, pi/2)^2.
  QuarterDisk,
  /// The open unit square, taken literally.
  UnitSquare,
};

/// b_{-2n-2} / (1 - mu2^2) as numerator / ((1-mu2^2)^c_pow (1-mu1^2-mu2^2)^s_pow),
/// numerator in mu, zeta, u, om over powers of Q_{W,2n}.
struct PeriodForm {
  int n = 1;
  Expr numerator;
  int c_pow = 0;  // power of (1 - mu2^2)
  int s_pow = 0;  // power of (1 - mu1^2 - mu2^2); nonzero only if sin(eta) has negative powers
  QForm q;
  PeriodDomain domain = PeriodDomain::QuarterDisk;

  std::string domain_description() const;
};

/// Rewrites an even-trig density in mu: sin^2 psi = mu2^2, cos^2 psi = 1 - mu2^2,
/// sin^2 eta = (1-mu1^2-mu2^2)/(1-mu2^2), cos^2 eta = mu1^2/(1-mu2^2), over a
/// common denominator. Throws std::invalid_argument on an odd trig exponent.
PeriodForm mu_substitute(const Density& filtered);

/// mu_substitute followed by the division by (1 - mu2^2).
PeriodForm emit_period_form(const Density& filtered);

}  // namespace sdw
