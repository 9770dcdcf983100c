#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sdw/grothendieck.hpp"

namespace sdw {

enum class Locus {
  /// zeta in F_q^{2n+2} with Q_{W,2n}(zeta) != 0.
  QuadricComplementAffine,
  /// (mu1, mu2, zeta) in F_q^{2n+4} with Q_{W,2n}(zeta) != 0.
  Cone2Complement,
  /// As Cone2Complement, and also mu2 != +1, -1.
  Cone2ComplementMinusHyperplanes,
  /// Points of the projective quadric Q_{W,2n} = 0 in P^{2n+1}.
  QuadricProjective,
};

std::string_view locus_name(Locus l);
/// Accepts the names from locus_name and "quadric-complement" as an alias for
/// the affine quadric complement. Throws std::invalid_argument otherwise.
Locus parse_locus(std::string_view name);

class CountGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Q_{W,2n} = sum_a W_a^2 zeta_a^2 + zeta_5^2 + ... over F_q.
struct CountSpec {
  int n = 1;
  std::uint32_t q = 5;
  std::array<std::int64_t, 4> w{1, 1, 1, 1};
  Locus locus = Locus::QuadricComplementAffine;
};

inline constexpr double kCountGuard = 1e8;

/// Throws std::invalid_argument when q is not prime, q = 3 mod 4, or some
/// W_a = 0 mod q.
void validate(const CountSpec& spec);

/// Brute-force enumeration. Throws CountGuardError when the search space
/// exceeds kCountGuard points.
std::uint64_t count_points(const CountSpec& spec);

/// The class the count should realize at L = q.
LPoly expected_class(const CountSpec& spec);

bool is_prime(std::uint64_t q);
/// A square root of -1 mod q, or nullopt when none exists.
std::optional<std::uint64_t> sqrt_minus_one(std::uint64_t q);

/// Builds X1 = W1 z1 + i W2 z2, Y1 = W1 z1 - i W2 z2, X2 = i(W3 z3 + i W4 z4),
/// Y2 = i(W3 z3 - i W4 z4) over F_q and compares X1 Y1 - X2 Y2 with Q_{W,2}
/// coefficient by coefficient. For n >= 2 it also checks that the pairs
/// (zeta_{2k-1}, zeta_{2k}), k = 3..n+1, contribute X_k Y_k with
/// X_k = zeta_{2k-1} + i zeta_{2k}, Y_k = zeta_{2k-1} - i zeta_{2k}.
/// Throws std::invalid_argument when q is not a prime = 1 mod 4.
bool split_form_check(std::uint64_t q, std::array<std::int64_t, 4> w, int n = 1);

}  // namespace sdw
