#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "sdw/gaussian_rational.hpp"
#include "sdw/vars.hpp"

namespace sdw {

/// Exponent vector over the fixed variable universe plus the power rho of
/// the formal denominator Q^rho. Q itself is supplied by context (QForm).
///
/// Slots [0, kNumVars) hold variable exponents in VarId order, slot
/// kQSlot holds rho; the remaining slots are zero padding. Comparison is
/// lexicographic on slots, i.e. by (exps, qpow).
struct Monomial {
  static constexpr int kQSlot = kNumVars;
  static constexpr int kSlots = 48;

  std::array<std::int8_t, kSlots> slots{};

  int exp(VarId v) const { return slots[v.index()]; }
  void set_exp(VarId v, int e);
  void add_exp(VarId v, int delta) { set_exp(v, exp(v) + delta); }
  int qpow() const { return slots[kQSlot]; }
  void set_qpow(int rho);

  /// Product of monomials (exponents and rho add). Throws std::overflow_error
  /// if any exponent leaves the int8 range.
  Monomial operator*(const Monomial& o) const;

  /// Total exponent over the given variable kind (e.g. xi-degree).
  int degree(VarKind kind) const;
  bool has_kind(VarKind kind) const;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t w[Monomial::kSlots / 8];
    std::memcpy(w, m.slots.data(), sizeof(w));
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t x : w) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

struct Term {
  GaussianRational coeff;
  Monomial mono;
};

class Expr;

/// Hash-based collector of terms. Applies the trigonometric normal form on
/// insertion: cos^2 = 1 - sin^2 for both angles, so stored cos exponents are
/// 0 or 1.
class TermAccumulator {
 public:
  TermAccumulator() = default;
  explicit TermAccumulator(std::size_t expected) { map_.reserve(expected); }

  void add(const Monomial& m, const GaussianRational& c);
  void add(const Term& t) { add(t.mono, t.coeff); }
  void add(const Expr& e);
  /// Adds c * m * e.
  void add_scaled(const Expr& e, const Monomial& m, const GaussianRational& c);
  std::size_t size() const { return map_.size(); }
  Expr take();

 private:
  std::unordered_map<Monomial, GaussianRational, MonomialHash> map_;
};

/// Canonical sum of terms: sorted by Monomial, no duplicate monomials, no
/// zero coefficients, cos exponents in {0, 1}.
class Expr {
 public:
  Expr() = default;
  Expr(const GaussianRational& c);  // NOLINT(google-explicit-constructor)
  Expr(long c) : Expr(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)

  static Expr var(VarId v, int exp = 1);
  static Expr monomial(const Monomial& m, const GaussianRational& c = GaussianRational(1));
  /// 1 / Q^rho.
  static Expr q_inverse(int rho);
  /// Normalizes an arbitrary term list.
  static Expr from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Single term with empty monomial (or zero).
  bool is_constant() const;
  /// Coefficient of the empty monomial.
  GaussianRational constant_term() const;
  /// Coefficient of m (zero if absent).
  GaussianRational coeff(const Monomial& m) const;

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr operator-() const;

  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend bool operator==(const Expr& a, const Expr& b);

  Expr scaled(const GaussianRational& c) const;
  /// Multiplies every term by c * m.
  Expr times_monomial(const Monomial& m, const GaussianRational& c = GaussianRational(1)) const;
  /// Shifts every rho by delta (multiplication by Q^-delta).
  Expr with_qpow_shift(int delta) const;

  /// Keeps terms satisfying pred(term).
  template <class Pred>
  Expr filtered(Pred pred) const {
    Expr r;
    for (const auto& t : terms_)
      if (pred(t)) r.terms_.push_back(t);
    return r;
  }

 private:
  friend class TermAccumulator;
  std::vector<Term> terms_;
};

Expr pow(const Expr& e, int k);

/// Re-normalizes e. Idempotent; the identity on any Expr built through the
/// public API.
Expr normalize(const Expr& e);

bool is_trig_free(const Expr& e);
bool is_real(const Expr& e);
/// True iff some term has a nonzero exponent on v.
bool contains(const Expr& e, VarId v);
bool contains_kind(const Expr& e, VarKind kind);
int max_qpow(const Expr& e);

std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace sdw
