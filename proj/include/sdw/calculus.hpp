#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "sdw/expr.hpp"

namespace sdw {

/// One of d/dt, d/d(eta), d/d(psi), d/d(xi_k).
struct Derivation {
  enum class Kind { T, Eta, Psi, Xi };
  Kind kind = Kind::T;
  int index = 0;  // k for Xi

  static Derivation t() { return {Kind::T, 0}; }
  static Derivation eta() { return {Kind::Eta, 0}; }
  static Derivation psi() { return {Kind::Psi, 0}; }
  static Derivation xi(int k);
  /// "t", "eta", "psi", "xi<k>"; throws std::invalid_argument otherwise.
  static Derivation parse(std::string_view tag);
  std::string tag() const;

  bool operator==(const Derivation&) const = default;
};

/// The quadratic form Q standing behind every qpow of the expressions it is
/// registered with. Its derivatives are computed once at construction.
class QForm {
 public:
  QForm() = default;
  /// q must be qpow-free.
  explicit QForm(Expr q);

  const Expr& expr() const { return q_; }
  const Expr& derivative(const Derivation& d) const;

  friend bool operator==(const QForm& a, const QForm& b) { return a.q_ == b.q_; }

 private:
  Expr q_;
  Expr dt_, deta_, dpsi_;
  std::array<Expr, kMaxXi> dxi_{};
};

/// Leibniz rule over terms. d/dt sends u_i to om_i_1 / (2 u_i) and om_i_j to
/// om_i_{j+1}; the angle derivatives act on sin/cos; Q^-rho differentiates
/// by the chain rule through q without ever expanding Q^-rho. Throws
/// std::logic_error if e carries a Q-power and q is null.
Expr derive(const Expr& e, const Derivation& d, const QForm* q = nullptr);

using SubstitutionRules = std::map<VarId, Expr>;

/// Replaces each variable with a rule by its image (variables without a rule
/// are kept). Negative exponents require the image to be a single term;
/// otherwise, or if that term's coefficient is zero, std::domain_error.
/// Q-powers are carried through untouched: the caller vouches that the
/// registered Q is unaffected, or uses the checked overload below.
Expr substitute(const Expr& e, const SubstitutionRules& rules);

/// Substitution that also moves the Q-context: verifies
/// substitute(from.expr(), rules) == to.expr() and throws std::logic_error
/// otherwise.
Expr substitute(const Expr& e, const SubstitutionRules& rules, const QForm& from, const QForm& to);

}  // namespace sdw
