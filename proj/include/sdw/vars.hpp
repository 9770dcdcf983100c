#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sdw {

inline constexpr int kMaxOmegaOrder = 6;   // w_i^(j), j = 1..6
inline constexpr int kMaxXi = 6;           // xi_1..xi_6 covers 2n+2 for n <= 2
inline constexpr int kNumVars = 40;

enum class VarKind : std::uint8_t { U, Omega, SinEta, CosEta, SinPsi, CosPsi, Xi, Zeta, Mu, Pi };

/// Identifier of an expression variable.
///
/// The variable universe is closed and its total order is the order of
/// `index()`:
///
///   u1 u2 u3 | om1_1..om1_6 om2_1..om2_6 om3_1..om3_6 |
///   sin_eta cos_eta sin_psi cos_psi | xi1..xi6 | zeta1..zeta6 | mu1 mu2 | pi
///
/// `u_i` stands for sqrt(w_i); w_i itself is always u_i^2. `om_i_j` is the
/// j-th time derivative of w_i. `pi` carries powers of pi produced by sphere
/// moments so that their cancellation is an exact check.
class VarId {
 public:
  static VarId u(int i);
  static VarId omega(int i, int j);
  static constexpr VarId sin_eta() { return VarId(21); }
  static constexpr VarId cos_eta() { return VarId(22); }
  static constexpr VarId sin_psi() { return VarId(23); }
  static constexpr VarId cos_psi() { return VarId(24); }
  static VarId xi(int k);
  static VarId zeta(int k);
  static VarId mu(int k);
  static constexpr VarId pi() { return VarId(39); }

  /// Throws std::out_of_range for indices outside [0, kNumVars).
  static VarId from_index(int idx);
  /// Inverse of name(); throws std::invalid_argument on unknown names.
  static VarId from_name(std::string_view name);

  constexpr int index() const { return idx_; }
  VarKind kind() const;
  /// i for U/Omega, k for Xi/Zeta/Mu, 0 otherwise.
  int family() const;
  /// j for Omega, 0 otherwise.
  int order() const;
  std::string name() const;

  constexpr auto operator<=>(const VarId&) const = default;

 private:
  explicit constexpr VarId(int idx) : idx_(static_cast<std::uint8_t>(idx)) {}
  std::uint8_t idx_;
};

}  // namespace sdw
