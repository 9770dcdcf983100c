#pragma once

#include <array>
#include <string>
#include <vector>

#include "sdw/calculus.hpp"
#include "sdw/expr.hpp"

namespace sdw {

/// 4x4 matrix with Expr entries, row-major.
class MatrixExpr {
 public:
  static constexpr int kDim = 4;

  MatrixExpr() = default;
  static MatrixExpr identity();
  static MatrixExpr scalar(const Expr& s);

  const Expr& operator()(int r, int c) const { return m_[r * kDim + c]; }
  Expr& operator()(int r, int c) { return m_[r * kDim + c]; }
  const std::array<Expr, kDim * kDim>& entries() const { return m_; }

  /// s*I for some s (including the zero matrix).
  bool is_scalar() const;
  bool is_zero() const;
  std::size_t term_count() const;

  MatrixExpr& operator+=(const MatrixExpr& o);
  MatrixExpr& operator-=(const MatrixExpr& o);
  friend MatrixExpr operator+(MatrixExpr a, const MatrixExpr& b) { return a += b; }
  friend MatrixExpr operator-(MatrixExpr a, const MatrixExpr& b) { return a -= b; }
  MatrixExpr operator-() const;
  friend bool operator==(const MatrixExpr& a, const MatrixExpr& b) { return a.m_ == b.m_; }

  MatrixExpr scaled(const Expr& s) const;
  MatrixExpr scaled(const GaussianRational& c) const;
  MatrixExpr with_qpow_shift(int delta) const;

  /// Entry-wise maps.
  MatrixExpr derived(const Derivation& d, const QForm* q = nullptr) const;
  MatrixExpr substituted(const SubstitutionRules& rules) const;

 private:
  std::array<Expr, kDim * kDim> m_{};
};

/// Exact 4x4 product; entries are computed in parallel.
MatrixExpr mat_mul(const MatrixExpr& a, const MatrixExpr& b);
Expr mat_trace(const MatrixExpr& a);

/// Four constant 4x4 matrices gamma^1..gamma^4 with (gamma^i)^2 = -I,
/// pairwise anticommuting, traceless.
struct GammaRep {
  std::string name;
  std::array<MatrixExpr, 4> gamma;

  const MatrixExpr& operator[](int i) const { return gamma.at(i - 1); }
};

/// The shipped representation (chiral, gamma^a = i e_a with Hermitian e_a).
const GammaRep& default_gamma_rep();
/// An independent representation (Dirac-type) for invariance checks.
const GammaRep& alternate_gamma_rep();

/// Human-readable list of violated Clifford relations; empty when all hold.
std::vector<std::string> clifford_violations(const GammaRep& rep);

}  // namespace sdw
