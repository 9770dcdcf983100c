#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sdw/density.hpp"
#include "sdw/residue.hpp"

namespace sdw {

/// Numeric values for variables. Anisotropy data is entered through w_i and
/// its derivatives; u_i = sqrt(w_i) is derived and must be positive.
class Assignment {
 public:
  void set(VarId v, double x);
  bool has(VarId v) const { return values_[v.index()].has_value(); }
  /// Throws std::invalid_argument if v is unassigned.
  double at(VarId v) const;

  /// Sets u_i = sqrt(w); throws std::invalid_argument unless w > 0.
  void set_w(int i, double w);
  /// j-th derivative of w_i (om_i_j).
  void set_w_derivative(int i, int j, double value);
  /// The w_i given to set_w (u_i^2 if u_i was set directly).
  double w(int i) const;

  /// Anisotropy data with every derivative defaulting to 0.
  static Assignment anisotropy(std::array<double, 3> w);

  /// Parses "w1=1,w2=2,w3=3,w1'=0.5,w3''=2,w2^(3)=0" on top of the all-zero
  /// derivative defaults. w1, w2, w3 are required.
  static Assignment parse_pairs(std::string_view text);
  /// Same keys as parse_pairs, as a JSON object.
  static Assignment from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  std::array<std::optional<double>, kNumVars> values_{};
  std::array<std::optional<double>, 3> w_{};
};

/// w = (1, 2, 3), w' = (1/2, -1, 1), w'' = (0, 0, 2), higher derivatives 0.
Assignment default_verification_assignment();

/// Direct term-by-term evaluation. Q^-rho uses q evaluated at the same
/// point. Throws std::domain_error if |Q| < 1e-12 or e has a non-real
/// coefficient, std::invalid_argument on unassigned variables.
double eval(const Expr& e, const Assignment& a, const QForm* q = nullptr);

/// An expression with some variables fixed to numbers and the rest left as
/// free inputs; like terms after fixing are merged.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  CompiledExpr(const Expr& e, const Assignment& fixed, std::vector<VarId> free_vars);

  /// free_values in the order given at construction; q_value is used for
  /// Q-powers.
  double operator()(std::span<const double> free_values, double q_value = 1.0) const;
  std::size_t size() const { return coeffs_.size(); }

 private:
  std::vector<VarId> free_;
  std::vector<int> min_exp_, max_exp_;
  int max_q_ = 0;
  std::vector<double> coeffs_;
  std::vector<std::int8_t> exps_;  // size() * (free_.size() + 1); last slot is qpow
};

struct McEstimate {
  double mean = 0;
  double stderr_ = 0;
  long long samples = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

/// Terms of a zeta-density whose sin(eta) exponent is <= -2 are not absolutely
/// integrable against sin(eta) d eta at fixed zeta; the eta, psi, zeta
/// integral only exists because their zeta-sphere averages vanish. The Monte
/// Carlo estimators integrate the regular part and check the singular part
/// separately.
struct DensitySplit {
  Density regular;   // sin(eta) exponent >= -1
  Density singular;  // sin(eta) exponent <= -2
};
DensitySplit split_singular(const Density& d);

/// Monte Carlo of pi^-(n+2) int_0^{pi/2} sin(eta) d eta int_0^{pi/2} d psi
/// int_{|zeta|=1} of the regular part of the density (unfiltered). eta and
/// psi are uniform on (0, pi/2) with the sin(eta) factor kept in the
/// integrand, which is then bounded; zeta is uniform on the Euclidean unit
/// sphere. Deterministic in (N, seed) and independent of the worker count.
McEstimate mc_sdw(const Density& density, const Assignment& a, long long samples, std::uint64_t seed);

/// Zeta-sphere integral of one trig monomial's coefficient in the singular part.
struct SingularComponent {
  int sin_eta = 0, cos_eta = 0, sin_psi = 0, cos_psi = 0;
  McEstimate integral;  // int_{|zeta|=1} coefficient d sigma
};

/// One estimate per trig monomial of the singular part, all from the same
/// zeta samples. Each should vanish.
std::vector<SingularComponent> mc_singular(const Density& density, const Assignment& a, long long samples,
                                           std::uint64_t seed);

/// Two-sided z threshold that keeps the family-wise false alarm rate of k
/// simultaneous comparisons at the single 3-sigma level (Bonferroni).
double bonferroni_threshold(std::size_t k, double sigmas = 3.0);

/// Monte Carlo of pi^-(n+2) int_{domain} integrand d mu1 d mu2 sigma_zeta.
/// QuarterDisk: mu2 = sin(psi) with psi uniform and mu1 uniform on
/// (0, sqrt(1 - mu2^2)), each sample weighted by the inverse density, so the
/// 1/(1 - mu2^2) corner singularity is cancelled. UnitSquare: mu uniform on
/// (0,1)^2, taken literally. Samples with 1 - mu2^2 < 1e-12 are redrawn.
McEstimate mc_period(const PeriodForm& form, const Assignment& a, long long samples, std::uint64_t seed);

}  // namespace sdw
