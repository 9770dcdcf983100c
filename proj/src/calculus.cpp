#include "sdw/calculus.hpp"

#include <stdexcept>

namespace sdw {

Derivation Derivation::xi(int k) {
  if (k < 1 || k > kMaxXi) throw std::invalid_argument("Derivation: xi index out of range");
  return {Kind::Xi, k};
}

Derivation Derivation::parse(std::string_view tag) {
  if (tag == "t") return t();
  if (tag == "eta") return eta();
  if (tag == "psi") return psi();
  if (tag.size() > 2 && tag.substr(0, 2) == "xi") {
    int k = 0;
    for (char c : tag.substr(2)) {
      if (c < '0' || c > '9') throw std::invalid_argument("Derivation: unknown tag '" + std::string(tag) + "'");
      k = k * 10 + (c - '0');
    }
    return xi(k);
  }
  throw std::invalid_argument("Derivation: unknown tag '" + std::string(tag) + "'");
}

std::string Derivation::tag() const {
  switch (kind) {
    case Kind::T: return "t";
    case Kind::Eta: return "eta";
    case Kind::Psi: return "psi";
    case Kind::Xi: return "xi" + std::to_string(index);
  }
  return "?";
}

QForm::QForm(Expr q) : q_(std::move(q)) {
  if (max_qpow(q_) != 0) throw std::invalid_argument("QForm: Q must not carry Q-powers");
  dt_ = derive(q_, Derivation::t());
  deta_ = derive(q_, Derivation::eta());
  dpsi_ = derive(q_, Derivation::psi());
  for (int k = 1; k <= kMaxXi; ++k) dxi_[k - 1] = derive(q_, Derivation::xi(k));
}

const Expr& QForm::derivative(const Derivation& d) const {
  switch (d.kind) {
    case Derivation::Kind::T: return dt_;
    case Derivation::Kind::Eta: return deta_;
    case Derivation::Kind::Psi: return dpsi_;
    case Derivation::Kind::Xi: return dxi_[d.index - 1];
  }
  throw std::logic_error("QForm: bad derivation");
}

namespace {

// Derivative of a single (qpow-free part of a) term, accumulated into acc.
void derive_variables(const Term& t, const Derivation& d, TermAccumulator& acc) {
  const Monomial& m = t.mono;
  switch (d.kind) {
    case Derivation::Kind::T: {
      for (int i = 1; i <= 3; ++i) {
        VarId u = VarId::u(i);
        int e = m.exp(u);
        if (e == 0) continue;
        // d(u^e)/dt = e u^(e-1) * om_1 / (2u)
        Monomial r = m;
        r.add_exp(u, -2);
        r.add_exp(VarId::omega(i, 1), 1);
        acc.add(r, t.coeff * GaussianRational::fraction(e, 2));
      }
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= kMaxOmegaOrder; ++j) {
          VarId w = VarId::omega(i, j);
          int e = m.exp(w);
          if (e == 0) continue;
          if (j == kMaxOmegaOrder) throw std::out_of_range("derive: derivative order exceeds supported range");
          Monomial r = m;
          r.add_exp(w, -1);
          r.add_exp(VarId::omega(i, j + 1), 1);
          acc.add(r, t.coeff * GaussianRational(e));
        }
      }
      break;
    }
    case Derivation::Kind::Eta:
    case Derivation::Kind::Psi: {
      const bool eta = d.kind == Derivation::Kind::Eta;
      VarId s = eta ? VarId::sin_eta() : VarId::sin_psi();
      VarId c = eta ? VarId::cos_eta() : VarId::cos_psi();
      int se = m.exp(s);
      int ce = m.exp(c);
      if (se != 0) {
        Monomial r = m;
        r.add_exp(s, -1);
        r.add_exp(c, 1);
        acc.add(r, t.coeff * GaussianRational(se));
      }
      if (ce != 0) {
        Monomial r = m;
        r.add_exp(c, -1);
        r.add_exp(s, 1);
        acc.add(r, -(t.coeff * GaussianRational(ce)));
      }
      break;
    }
    case Derivation::Kind::Xi: {
      VarId x = VarId::xi(d.index);
      int e = m.exp(x);
      if (e != 0) {
        Monomial r = m;
        r.add_exp(x, -1);
        acc.add(r, t.coeff * GaussianRational(e));
      }
      break;
    }
  }
}

}  // namespace

Expr derive(const Expr& e, const Derivation& d, const QForm* q) {
  TermAccumulator acc(e.size() * 2);
  for (const auto& t : e.terms()) {
    derive_variables(t, d, acc);
    const int rho = t.mono.qpow();
    if (rho == 0) continue;
    if (q == nullptr) throw std::logic_error("derive: Q-power present but no Q-context registered");
    const Expr& dq = q->derivative(d);
    if (dq.is_zero()) continue;
    // d(Q^-rho) = -rho Q^-(rho+1) dQ
    Monomial r = t.mono;
    r.set_qpow(rho + 1);
    acc.add_scaled(dq, r, -(t.coeff * GaussianRational(rho)));
  }
  return acc.take();
}

namespace {

struct PowerCache {
  const SubstitutionRules& rules;
  std::map<std::pair<int, int>, Expr> cache;

  const Expr& power(VarId v, const Expr& image, int k) {
    auto key = std::make_pair(v.index(), k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Expr val;
    if (k >= 0) {
      val = pow(image, k);
    } else {
      if (image.size() != 1)
        throw std::domain_error("substitute: negative power of non-monomial image for " + v.name());
      const Term& t = image.terms()[0];
      if (t.coeff.is_zero()) throw std::domain_error("substitute: zero denominator");
      Monomial inv;
      for (int s = 0; s <= Monomial::kQSlot; ++s) inv.slots[s] = static_cast<std::int8_t>(-t.mono.slots[s]);
      if (t.mono.qpow() != 0) throw std::domain_error("substitute: image with Q-power raised to negative power");
      GaussianRational c = GaussianRational(1) / t.coeff;
      val = Expr::monomial(Monomial{}, GaussianRational(1));
      for (int r = 0; r < -k; ++r) val = val.times_monomial(inv, c);
    }
    return cache.emplace(key, std::move(val)).first->second;
  }
};

}  // namespace

Expr substitute(const Expr& e, const SubstitutionRules& rules) {
  if (rules.empty()) return e;
  for (const auto& [v, image] : rules)
    if (image.is_zero()) {
      // A zero image is fine unless the variable appears with a negative exponent.
      for (const auto& t : e.terms())
        if (t.mono.exp(v) < 0) throw std::domain_error("substitute: zero denominator for " + v.name());
    }

  PowerCache powers{rules, {}};
  // Group terms by the exponents of the substituted variables so each image
  // product is built once.
  std::map<std::vector<int>, Expr> products;
  TermAccumulator acc(e.size() * 2);
  std::vector<int> key(rules.size());
  for (const auto& t : e.terms()) {
    Monomial rest = t.mono;
    std::size_t idx = 0;
    bool any = false;
    for (const auto& [v, image] : rules) {
      key[idx++] = t.mono.exp(v);
      if (t.mono.exp(v) != 0) any = true;
      rest.set_exp(v, 0);
    }
    if (!any) {
      acc.add(t);
      continue;
    }
    auto it = products.find(key);
    if (it == products.end()) {
      Expr prod(1);
      std::size_t j = 0;
      for (const auto& [v, image] : rules) {
        int k = key[j++];
        if (k != 0) prod = prod * powers.power(v, image, k);
      }
      it = products.emplace(key, std::move(prod)).first;
    }
    acc.add_scaled(it->second, rest, t.coeff);
  }
  return acc.take();
}

Expr substitute(const Expr& e, const SubstitutionRules& rules, const QForm& from, const QForm& to) {
  if (!(substitute(from.expr(), rules) == to.expr()))
    throw std::logic_error("substitute: registered Q is not mapped onto the target Q-context");
  return substitute(e, rules);
}

}  // namespace sdw
