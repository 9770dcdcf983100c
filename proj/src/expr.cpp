#include "sdw/expr.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace sdw {

namespace {

constexpr int kMinExp = std::numeric_limits<std::int8_t>::min();
constexpr int kMaxExp = std::numeric_limits<std::int8_t>::max();

const int kCosEta = VarId::cos_eta().index();
const int kSinEta = VarId::sin_eta().index();
const int kCosPsi = VarId::cos_psi().index();
const int kSinPsi = VarId::sin_psi().index();

bool needs_trig_reduction(const Monomial& m) {
  return m.slots[kCosEta] >= 2 || m.slots[kCosPsi] >= 2 || m.slots[kCosEta] < 0 || m.slots[kCosPsi] < 0;
}

}  // namespace

void Monomial::set_exp(VarId v, int e) {
  if (e < kMinExp || e > kMaxExp) throw std::overflow_error("Monomial: exponent overflow on " + v.name());
  slots[v.index()] = static_cast<std::int8_t>(e);
}

void Monomial::set_qpow(int rho) {
  if (rho < 0 || rho > kMaxExp) throw std::overflow_error("Monomial: Q-power out of range");
  slots[kQSlot] = static_cast<std::int8_t>(rho);
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  bool overflow = false;
  for (int k = 0; k <= kQSlot; ++k) {
    int s = int(slots[k]) + int(o.slots[k]);
    overflow |= (s < kMinExp) | (s > kMaxExp);
    r.slots[k] = static_cast<std::int8_t>(s);
  }
  if (overflow) throw std::overflow_error("Monomial: exponent overflow in product");
  return r;
}

int Monomial::degree(VarKind kind) const {
  int d = 0;
  for (int k = 0; k < kNumVars; ++k)
    if (VarId::from_index(k).kind() == kind) d += slots[k];
  return d;
}

bool Monomial::has_kind(VarKind kind) const {
  for (int k = 0; k < kNumVars; ++k)
    if (slots[k] != 0 && VarId::from_index(k).kind() == kind) return true;
  return false;
}

// ---------------------------------------------------------------------------

void TermAccumulator::add(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  if (needs_trig_reduction(m)) {
    for (auto [cs, ss] : {std::pair{kCosEta, kSinEta}, std::pair{kCosPsi, kSinPsi}}) {
      if (m.slots[cs] < 0) throw std::domain_error("Expr: negative cosine exponent");
      if (m.slots[cs] >= 2) {
        Monomial a = m;
        a.slots[cs] = static_cast<std::int8_t>(m.slots[cs] - 2);
        add(a, c);
        Monomial b = a;
        if (int(b.slots[ss]) + 2 > kMaxExp) throw std::overflow_error("Monomial: exponent overflow");
        b.slots[ss] = static_cast<std::int8_t>(b.slots[ss] + 2);
        add(b, -c);
        return;
      }
    }
  }
  auto [it, inserted] = map_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void TermAccumulator::add(const Expr& e) {
  for (const auto& t : e.terms()) add(t.mono, t.coeff);
}

void TermAccumulator::add_scaled(const Expr& e, const Monomial& m, const GaussianRational& c) {
  for (const auto& t : e.terms()) add(t.mono * m, t.coeff * c);
}

Expr TermAccumulator::take() {
  Expr r;
  r.terms_.reserve(map_.size());
  for (auto& [m, c] : map_)
    if (!c.is_zero()) r.terms_.push_back(Term{std::move(c), m});
  map_.clear();
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  return r;
}

// ---------------------------------------------------------------------------

Expr::Expr(const GaussianRational& c) {
  if (!c.is_zero()) terms_.push_back(Term{c, Monomial{}});
}

Expr Expr::var(VarId v, int exp) {
  Monomial m;
  m.set_exp(v, exp);
  return monomial(m);
}

Expr Expr::monomial(const Monomial& m, const GaussianRational& c) {
  TermAccumulator acc;
  acc.add(m, c);
  return acc.take();
}

Expr Expr::q_inverse(int rho) {
  Monomial m;
  m.set_qpow(rho);
  return monomial(m);
}

Expr Expr::from_terms(std::vector<Term> terms) {
  TermAccumulator acc(terms.size());
  for (auto& t : terms) acc.add(t.mono, t.coeff);
  return acc.take();
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == Monomial{});
}

GaussianRational Expr::constant_term() const { return coeff(Monomial{}); }

GaussianRational Expr::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.mono < key; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return GaussianRational(0);
}

namespace {

// Merge of two canonical term lists with sign on the right operand.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono < b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono < a[i].mono) {
      out.push_back(subtract ? Term{-b[j].coeff, b[j].mono} : b[j]);
      ++j;
    } else {
      GaussianRational c = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back(Term{std::move(c), a[i].mono});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Expr& Expr::operator+=(const Expr& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Expr Expr::operator-() const {
  Expr r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Expr& Expr::operator*=(const Expr& o) {
  *this = *this * o;
  return *this;
}

Expr Expr::scaled(const GaussianRational& c) const {
  if (c.is_zero()) return Expr();
  Expr r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Expr Expr::times_monomial(const Monomial& m, const GaussianRational& c) const {
  if (c.is_zero()) return Expr();
  const bool has_cos = m.slots[kCosEta] != 0 || m.slots[kCosPsi] != 0;
  if (!has_cos) {
    // Translation of exponents is order preserving and injective.
    Expr r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back(Term{t.coeff * c, t.mono * m});
    return r;
  }
  TermAccumulator acc(terms_.size() * 2);
  acc.add_scaled(*this, m, c);
  return acc.take();
}

Expr Expr::with_qpow_shift(int delta) const {
  Monomial m;
  if (delta < 0) {
    Expr r = *this;
    for (auto& t : r.terms_) t.mono.set_qpow(t.mono.qpow() + delta);
    return r;
  }
  m.set_qpow(delta);
  return times_monomial(m);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Expr();
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coeff);
  TermAccumulator acc(std::min<std::size_t>(a.terms_.size() * b.terms_.size(), 1u << 20));
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) acc.add(x.mono * y.mono, x.coeff * y.coeff);
  return acc.take();
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k)
    if (!(a.terms_[k].mono == b.terms_[k].mono) || !(a.terms_[k].coeff == b.terms_[k].coeff)) return false;
  return true;
}

Expr pow(const Expr& e, int k) {
  if (k < 0) throw std::domain_error("pow: negative exponent on Expr");
  Expr result(1);
  Expr base = e;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Expr normalize(const Expr& e) { return Expr::from_terms(e.terms()); }

bool is_trig_free(const Expr& e) {
  for (const auto& t : e.terms())
    if (t.mono.slots[kSinEta] || t.mono.slots[kCosEta] || t.mono.slots[kSinPsi] || t.mono.slots[kCosPsi])
      return false;
  return true;
}

bool is_real(const Expr& e) {
  for (const auto& t : e.terms())
    if (!t.coeff.is_real()) return false;
  return true;
}

bool contains(const Expr& e, VarId v) {
  for (const auto& t : e.terms())
    if (t.mono.exp(v) != 0) return true;
  return false;
}

bool contains_kind(const Expr& e, VarKind kind) {
  for (const auto& t : e.terms())
    if (t.mono.has_kind(kind)) return true;
  return false;
}

int max_qpow(const Expr& e) {
  int r = 0;
  for (const auto& t : e.terms()) r = std::max(r, t.mono.qpow());
  return r;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) {
  if (e.is_zero()) return os << "0";
  bool first = true;
  for (const auto& t : e.terms()) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff;
    for (int k = 0; k < kNumVars; ++k)
      if (t.mono.slots[k]) {
        os << "*" << VarId::from_index(k).name();
        if (t.mono.slots[k] != 1) os << "^" << int(t.mono.slots[k]);
      }
    if (t.mono.qpow()) os << "/Q^" << t.mono.qpow();
  }
  return os;
}

}  // namespace sdw
