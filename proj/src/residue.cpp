#include "sdw/residue.hpp"

#include <algorithm>
#include <sstream>

namespace sdw {

namespace {

bool all_trig_even(const Monomial& m) {
  return m.exp(VarId::sin_eta()) % 2 == 0 && m.exp(VarId::cos_eta()) % 2 == 0 &&
         m.exp(VarId::sin_psi()) % 2 == 0 && m.exp(VarId::cos_psi()) % 2 == 0;
}

mpz_class factorial(unsigned long k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

}  // namespace

Density parity_filter(const Density& d) {
  for (const auto& t : d.expr.terms())
    if (t.mono.exp(VarId::cos_eta()) > 1 || t.mono.exp(VarId::cos_psi()) > 1)
      throw std::invalid_argument("parity_filter: density not in trig normal form");
  return Density{d.n, d.expr.filtered([](const Term& t) { return all_trig_even(t.mono); }), d.q};
}

PiRational zeta_moment(std::span<const int> beta) {
  const int dim = static_cast<int>(beta.size());
  if (dim == 0 || dim % 2 != 0) throw std::invalid_argument("zeta_moment: dimension must be even and positive");
  int total = 0;
  for (int b : beta) {
    if (b < 0) throw std::invalid_argument("zeta_moment: negative exponent");
    total += b;
  }
  for (int b : beta)
    if (b % 2 != 0) return PiRational{0, 0};
  // Gamma(a + 1/2) = (2a)! / (4^a a!) * sqrt(pi)
  mpq_class value(2);
  for (int b : beta) {
    const unsigned long a = static_cast<unsigned long>(b / 2);
    mpz_class four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, a);
    value *= mpq_class(factorial(2 * a), four_pow * factorial(a));
  }
  // (|beta| + N)/2 is an integer >= 1 here.
  value /= mpq_class(factorial(static_cast<unsigned long>((total + dim) / 2 - 1)));
  value.canonicalize();
  return PiRational{value, dim / 2};
}

Monomial abs_w_monomial(int a) {
  static constexpr int kExps[4][3] = {{-1, -1, -1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  if (a < 1 || a > 4) throw std::out_of_range("abs_w_monomial: index must be 1..4");
  Monomial m;
  for (int i = 1; i <= 3; ++i) m.set_exp(VarId::u(i), kExps[a - 1][i - 1]);
  return m;
}

Expr cycle_integral(const Density& d) {
  const int dim = 2 * d.n + 2;
  if (dim > kMaxXi) throw std::invalid_argument("cycle_integral: n too large for the variable universe");
  TermAccumulator acc(d.expr.size());
  std::vector<int> beta(dim);
  for (const auto& t : d.expr.terms()) {
    if (t.mono.degree(VarKind::Zeta) - 2 * t.mono.qpow() != -dim)
      throw std::invalid_argument("cycle_integral: term is not homogeneous of degree " + std::to_string(-dim));
    Monomial m = t.mono;
    for (int k = 1; k <= kMaxXi; ++k) {
      const int e = t.mono.exp(VarId::zeta(k));
      if (k > dim && e != 0) throw std::invalid_argument("cycle_integral: zeta index beyond 2n+2");
      if (k <= dim) beta[k - 1] = e;
      m.set_exp(VarId::zeta(k), 0);
    }
    PiRational mom = zeta_moment(beta);
    if (sgn(mom.value) == 0) continue;
    m.set_qpow(0);
    for (int a = 1; a <= 4; ++a) {
      const Monomial w = abs_w_monomial(a);
      for (int i = 1; i <= 3; ++i) m.add_exp(VarId::u(i), -(beta[a - 1] + 1) * w.exp(VarId::u(i)));
    }
    m.add_exp(VarId::pi(), mom.pi_power);
    acc.add(m, t.coeff * GaussianRational(mom.value));
  }
  return acc.take();
}

namespace {

std::string describe_terms(const Expr& e, std::size_t limit) {
  std::ostringstream os;
  std::size_t shown = 0;
  for (const auto& t : e.terms()) {
    if (shown++ == limit) {
      os << " ... (" << e.size() << " terms)";
      break;
    }
    os << (shown > 1 ? " + " : "") << Expr::monomial(t.mono, t.coeff);
  }
  return os.str();
}

}  // namespace

SdwResult assemble_alpha(const Density& density) {
  SdwResult r;
  r.n = density.n;
  r.stats.density_terms = density.expr.size();
  for (const auto& t : density.expr.terms()) {
    if (t.mono.exp(VarId::sin_psi()) < 0) ++r.stats.negative_sin_psi_terms;
    if (t.mono.exp(VarId::sin_eta()) < 0) ++r.stats.negative_sin_eta_terms;
  }

  const Density filtered = parity_filter(density);
  r.stats.filtered_terms = filtered.expr.size();
  const Expr integral = cycle_integral(filtered);
  if (!is_trig_free(integral)) {
    Expr offending = integral.filtered([](const Term& t) {
      return t.mono.exp(VarId::sin_eta()) || t.mono.exp(VarId::cos_eta()) || t.mono.exp(VarId::sin_psi()) ||
             t.mono.exp(VarId::cos_psi());
    });
    throw IndependenceViolation("independence violated: cycle integral depends on eta/psi: " +
                                describe_terms(offending, 8));
  }

  Monomial prefactor;
  prefactor.set_exp(VarId::pi(), 1 - (density.n + 2));
  r.alpha = integral.times_monomial(prefactor, GaussianRational::fraction(1, 2));
  Expr with_pi = r.alpha.filtered([](const Term& t) { return t.mono.exp(VarId::pi()) != 0; });
  if (!with_pi.is_zero())
    throw RationalityViolation("rationality violated: surviving power of pi: " + describe_terms(with_pi, 8));

  r.stats.alpha_terms = r.alpha.size();
  for (const auto& t : r.alpha.terms())
    for (int i = 1; i <= 3; ++i)
      if (t.mono.exp(VarId::u(i)) % 2 != 0) r.stats.even_u = false;
  return r;
}

std::string PeriodForm::domain_description() const {
  std::string sphere = "sum_{i=1}^{" + std::to_string(2 * n + 2) + "} zeta_i^2 = 1";
  if (domain == PeriodDomain::QuarterDisk) return "0 < mu1, 0 < mu2, mu1^2 + mu2^2 < 1, " + sphere;
  return "0 < mu1 < 1, 0 < mu2 < 1, " + sphere;
}

PeriodForm mu_substitute(const Density& filtered) {
  const Expr mu1sq = Expr::var(VarId::mu(1), 2);
  const Expr mu2sq = Expr::var(VarId::mu(2), 2);
  const Expr one_minus_mu2sq = Expr(1) - mu2sq;               // cos^2 psi
  const Expr one_minus_musq = Expr(1) - mu1sq - mu2sq;        // sin^2 eta * cos^2 psi

  // Group by a = (sin eta exponent)/2; sin^(2a) eta = S^a / C^a.
  std::map<int, TermAccumulator> parts;
  for (const auto& t : filtered.expr.terms()) {
    const Monomial& m0 = t.mono;
    if (!all_trig_even(m0) || m0.exp(VarId::cos_eta()) != 0 || m0.exp(VarId::cos_psi()) != 0)
      throw std::invalid_argument("mu_substitute: odd trig exponent (run the parity filter first)");
    Monomial m = m0;
    const int a = m.exp(VarId::sin_eta()) / 2;
    m.set_exp(VarId::sin_eta(), 0);
    m.add_exp(VarId::mu(2), m.exp(VarId::sin_psi()));
    m.set_exp(VarId::sin_psi(), 0);
    parts[a].add(m, t.coeff);
  }

  PeriodForm pf;
  pf.n = filtered.n;
  pf.q = filtered.q;
  if (parts.empty()) return pf;
  const int amax = parts.rbegin()->first;
  const int amin = parts.begin()->first;
  pf.c_pow = std::max(0, amax);
  pf.s_pow = std::max(0, -amin);
  for (auto& [a, acc] : parts) {
    Expr factor = pow(one_minus_musq, a + pf.s_pow) * pow(one_minus_mu2sq, pf.c_pow - a);
    pf.numerator += acc.take() * factor;
  }
  return pf;
}

PeriodForm emit_period_form(const Density& filtered) {
  PeriodForm pf = mu_substitute(filtered);
  pf.c_pow += 1;
  return pf;
}

}  // namespace sdw
