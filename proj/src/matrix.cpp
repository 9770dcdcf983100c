#include "sdw/matrix.hpp"

#include "sdw/parallel.hpp"

#include <cassert>

namespace sdw {

MatrixExpr MatrixExpr::identity() { return scalar(Expr(1)); }

MatrixExpr MatrixExpr::scalar(const Expr& s) {
  MatrixExpr r;
  for (int k = 0; k < kDim; ++k) r(k, k) = s;
  return r;
}

bool MatrixExpr::is_scalar() const {
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c) {
      if (r == c) {
        if (!((*this)(r, c) == (*this)(0, 0))) return false;
      } else if (!(*this)(r, c).is_zero()) {
        return false;
      }
    }
  return true;
}

bool MatrixExpr::is_zero() const {
  for (const auto& e : m_)
    if (!e.is_zero()) return false;
  return true;
}

std::size_t MatrixExpr::term_count() const {
  std::size_t n = 0;
  for (const auto& e : m_) n += e.size();
  return n;
}

MatrixExpr& MatrixExpr::operator+=(const MatrixExpr& o) {
  for (int k = 0; k < kDim * kDim; ++k) m_[k] += o.m_[k];
  return *this;
}

MatrixExpr& MatrixExpr::operator-=(const MatrixExpr& o) {
  for (int k = 0; k < kDim * kDim; ++k) m_[k] -= o.m_[k];
  return *this;
}

MatrixExpr MatrixExpr::operator-() const {
  MatrixExpr r;
  for (int k = 0; k < kDim * kDim; ++k) r.m_[k] = -m_[k];
  return r;
}

MatrixExpr MatrixExpr::scaled(const Expr& s) const {
  MatrixExpr r;
  parallel_for(kDim * kDim, [&](std::size_t k) { r.m_[k] = m_[k] * s; });
  return r;
}

MatrixExpr MatrixExpr::scaled(const GaussianRational& c) const {
  MatrixExpr r;
  for (int k = 0; k < kDim * kDim; ++k) r.m_[k] = m_[k].scaled(c);
  return r;
}

MatrixExpr MatrixExpr::with_qpow_shift(int delta) const {
  MatrixExpr r;
  for (int k = 0; k < kDim * kDim; ++k) r.m_[k] = m_[k].with_qpow_shift(delta);
  return r;
}

MatrixExpr MatrixExpr::derived(const Derivation& d, const QForm* q) const {
  MatrixExpr r;
  parallel_for(kDim * kDim, [&](std::size_t k) { r.m_[k] = derive(m_[k], d, q); });
  return r;
}

MatrixExpr MatrixExpr::substituted(const SubstitutionRules& rules) const {
  MatrixExpr r;
  parallel_for(kDim * kDim, [&](std::size_t k) { r.m_[k] = substitute(m_[k], rules); });
  return r;
}

MatrixExpr mat_mul(const MatrixExpr& a, const MatrixExpr& b) {
  if (a.is_scalar()) return b.scaled(a(0, 0));
  if (b.is_scalar()) return a.scaled(b(0, 0));
  constexpr int n = MatrixExpr::kDim;
  MatrixExpr r;
  parallel_for(n * n, [&](std::size_t k) {
    const int row = static_cast<int>(k) / n;
    const int col = static_cast<int>(k) % n;
    TermAccumulator acc;
    for (int j = 0; j < n; ++j) {
      const Expr& x = a(row, j);
      const Expr& y = b(j, col);
      if (x.is_zero() || y.is_zero()) continue;
      for (const auto& s : x.terms())
        for (const auto& t : y.terms()) acc.add(s.mono * t.mono, s.coeff * t.coeff);
    }
    r(row, col) = acc.take();
  });
  return r;
}

Expr mat_trace(const MatrixExpr& a) {
  Expr t;
  for (int k = 0; k < MatrixExpr::kDim; ++k) t += a(k, k);
  return t;
}

namespace {

using C = GaussianRational;

struct Block2 {
  C a, b, c, d;
};

MatrixExpr from_blocks(const Block2& tl, const Block2& tr, const Block2& bl, const Block2& br) {
  MatrixExpr m;
  auto put = [&](int r0, int c0, const Block2& blk) {
    m(r0, c0) = Expr(blk.a);
    m(r0, c0 + 1) = Expr(blk.b);
    m(r0 + 1, c0) = Expr(blk.c);
    m(r0 + 1, c0 + 1) = Expr(blk.d);
  };
  put(0, 0, tl);
  put(0, 2, tr);
  put(2, 0, bl);
  put(2, 2, br);
  return m;
}

Block2 scale(const Block2& x, const C& s) { return {x.a * s, x.b * s, x.c * s, x.d * s}; }

const Block2 kZero{0, 0, 0, 0};
const Block2 kOne{1, 0, 0, 1};
const Block2 kSigma1{0, 1, 1, 0};
const Block2 kSigma2{0, -C::i(), C::i(), 0};
const Block2 kSigma3{1, 0, 0, -1};

GammaRep make_default() {
  // Hermitian generators e_a of Cl(4) in the chiral basis; gamma^a = i e_a.
  const C i = C::i();
  const std::array<Block2, 3> sigma{kSigma1, kSigma2, kSigma3};
  GammaRep rep;
  rep.name = "chiral";
  for (int k = 0; k < 3; ++k)
    rep.gamma[k] = from_blocks(kZero, scale(sigma[k], i), scale(sigma[k], i), kZero);
  rep.gamma[3] = from_blocks(kZero, scale(kOne, i * -i), scale(kOne, i * i), kZero);
  return rep;
}

GammaRep make_alternate() {
  // Dirac-type basis, deliberately relabelled.
  const C i = C::i();
  auto spatial = [&](const Block2& s) { return from_blocks(kZero, s, scale(s, -1), kZero); };
  GammaRep rep;
  rep.name = "dirac";
  rep.gamma[0] = spatial(kSigma3);
  rep.gamma[1] = spatial(kSigma1);
  rep.gamma[2] = from_blocks(scale(kOne, i), kZero, kZero, scale(kOne, -i));
  rep.gamma[3] = spatial(kSigma2);
  return rep;
}

}  // namespace

std::vector<std::string> clifford_violations(const GammaRep& rep) {
  std::vector<std::string> out;
  const MatrixExpr id = MatrixExpr::identity();
  for (int a = 1; a <= 4; ++a) {
    if (!(mat_mul(rep[a], rep[a]) == -id)) out.push_back("(gamma^" + std::to_string(a) + ")^2 != -I");
    if (!mat_trace(rep[a]).is_zero()) out.push_back("tr(gamma^" + std::to_string(a) + ") != 0");
    for (int b = a + 1; b <= 4; ++b)
      if (!(mat_mul(rep[a], rep[b]) + mat_mul(rep[b], rep[a])).is_zero())
        out.push_back("gamma^" + std::to_string(a) + " and gamma^" + std::to_string(b) + " do not anticommute");
  }
  return out;
}

const GammaRep& default_gamma_rep() {
  static const GammaRep rep = [] {
    GammaRep r = make_default();
#ifndef NDEBUG
    assert(clifford_violations(r).empty());
#endif
    return r;
  }();
  return rep;
}

const GammaRep& alternate_gamma_rep() {
  static const GammaRep rep = make_alternate();
  return rep;
}

}  // namespace sdw
