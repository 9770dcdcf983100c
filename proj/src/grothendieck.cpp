#include "sdw/grothendieck.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sdw {

LPoly::LPoly(long c) {
  if (c != 0) coeffs_[0] = c;
}

LPoly LPoly::L(int k) {
  if (k < 0) throw std::invalid_argument("LPoly::L: negative degree");
  LPoly p;
  p.coeffs_[k] = 1;
  return p;
}

LPoly LPoly::from_coeffs(const std::map<int, mpz_class>& coeffs) {
  LPoly p;
  for (const auto& [d, c] : coeffs) {
    if (d < 0) throw std::invalid_argument("LPoly: negative degree");
    p.add(d, c);
  }
  return p;
}

mpz_class LPoly::coeff(int degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? mpz_class(0) : it->second;
}

int LPoly::degree() const {
  if (coeffs_.empty()) throw std::domain_error("LPoly: degree of zero");
  return coeffs_.rbegin()->first;
}

int LPoly::low_degree() const {
  if (coeffs_.empty()) throw std::domain_error("LPoly: degree of zero");
  return coeffs_.begin()->first;
}

void LPoly::add(int degree, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(degree, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

LPoly& LPoly::operator+=(const LPoly& o) {
  for (const auto& [d, c] : o.coeffs_) add(d, c);
  return *this;
}

LPoly& LPoly::operator-=(const LPoly& o) {
  for (const auto& [d, c] : o.coeffs_) add(d, -c);
  return *this;
}

LPoly operator-(LPoly a) {
  for (auto& [d, c] : a.coeffs_) c = -c;
  return a;
}

LPoly operator*(const LPoly& a, const LPoly& b) {
  LPoly r;
  for (const auto& [da, ca] : a.coeffs_)
    for (const auto& [db, cb] : b.coeffs_) r.add(da + db, ca * cb);
  return r;
}

mpz_class LPoly::eval(const mpz_class& x) const {
  mpz_class r = 0;
  int deg = coeffs_.empty() ? 0 : degree();
  for (int d = deg; d >= 0; --d) r = r * x + coeff(d);
  return r;
}

std::pair<LPoly, LPoly> LPoly::divmod_monic(const LPoly& d) const {
  if (d.is_zero() || d.coeff(d.degree()) != 1) throw std::invalid_argument("LPoly::divmod_monic: divisor not monic");
  LPoly q, r = *this;
  const int dd = d.degree();
  while (!r.is_zero() && r.degree() >= dd) {
    const int shift = r.degree() - dd;
    const mpz_class lead = r.coeff(r.degree());
    LPoly term;
    term.coeffs_[shift] = lead;
    q += term;
    r -= term * d;
  }
  return {q, r};
}

namespace {

std::string power_of_L(int d) {
  if (d == 0) return "1";
  if (d == 1) return "L";
  return "L^" + std::to_string(d);
}

}  // namespace

std::string LPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto& [d, c] = *it;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (d == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << "*";
      os << power_of_L(d);
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LPoly& p) { return os << p.to_string(); }

LPoly LFactorization::expand() const {
  LPoly r = LPoly::from_coeffs({{0, content}});
  for (const auto& f : factors)
    for (int k = 0; k < f.multiplicity; ++k) r = r * f.poly;
  return r;
}

std::string LFactorization::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (content == -1) {
    os << "-";
  } else if (content != 1 || factors.empty()) {
    os << content;
    first = false;
  }
  for (const auto& f : factors) {
    const bool is_power_of_L = f.poly.coeffs().size() == 1;
    if (!first) os << " ";
    first = false;
    if (is_power_of_L) {
      os << power_of_L(f.poly.degree() * f.multiplicity);
      continue;
    }
    os << "(" << f.poly.to_string() << ")";
    if (f.multiplicity > 1) os << "^" << f.multiplicity;
  }
  return os.str();
}

LFactorization factor_by_inspection(const LPoly& p) {
  LFactorization out;
  if (p.is_zero()) {
    out.content = 0;
    return out;
  }
  mpz_class g = 0;
  for (const auto& [d, c] : p.coeffs()) g = gcd(g, c);
  if (p.coeff(p.degree()) < 0) g = -g;
  out.content = g;
  std::map<int, mpz_class> scaled;
  for (const auto& [d, c] : p.coeffs()) scaled[d] = c / g;
  LPoly rest = LPoly::from_coeffs(scaled);

  if (int low = rest.low_degree(); low > 0) {
    out.factors.push_back({LPoly::L(low), 1});
    rest = rest.divmod_monic(LPoly::L(low)).first;
  }

  auto strip = [&](const LPoly& cand) {
    int mult = 0;
    while (!rest.is_zero() && rest.degree() >= cand.degree() && rest.degree() > 0) {
      auto [q, r] = rest.divmod_monic(cand);
      if (!r.is_zero()) break;
      rest = q;
      ++mult;
    }
    if (mult > 0) out.factors.push_back({cand, mult});
  };

  strip(LPoly::L() - LPoly(2));
  for (int k = rest.degree(); k >= 1; --k) strip(LPoly::L(k) - LPoly(1));
  for (int k = rest.degree(); k >= 2; --k) strip(proj_space(k));
  for (int k = rest.degree(); k >= 1; --k) strip(LPoly::L(k) + LPoly(1));
  if (!rest.is_zero() && rest != LPoly(1)) out.factors.push_back({rest, 1});
  return out;
}

LPoly proj_space(int m) {
  if (m < 0) throw std::invalid_argument("proj_space: m must be >= 0");
  LPoly p;
  for (int k = 0; k <= m; ++k) p += LPoly::L(k);
  return p;
}

LPoly affine_cone(const LPoly& z) { return (LPoly::L() - LPoly(1)) * z + LPoly(1); }

LPoly proj_cone(const LPoly& z) { return LPoly::L() * z + LPoly(1); }

namespace {

void require_n(int n, const char* who) {
  if (n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
}

}  // namespace

LPoly complement_c2(const LPoly& z, int n) {
  require_n(n, "complement_c2");
  return LPoly::L(2 * n + 4) - LPoly::L(3) * z + LPoly::L(2) * (z - LPoly(1));
}

LPoly complement_c2_h(const LPoly& z, int n) {
  require_n(n, "complement_c2_h");
  const LPoly L = LPoly::L();
  return LPoly::L(2 * n + 4) - LPoly(2) * LPoly::L(2 * n + 3) - LPoly::L(3) * z + LPoly(3) * LPoly::L(2) * z -
         LPoly(2) * L * z - LPoly::L(2) + LPoly(2) * L;
}

LPoly union_c2_h(const LPoly& z, int n) {
  require_n(n, "union_c2_h");
  // Each hyperplane mu2 = c is an A^{2n+3}; the two are disjoint. Its
  // intersection with the cone is {mu2 = c, Q(zeta) = 0}, i.e. A^1 (mu1)
  // times the affine cone over Z.
  const LPoly cone_c2 = LPoly::L(2 * n + 4) - complement_c2(z, n);
  const LPoly hyperplanes = LPoly(2) * LPoly::L(2 * n + 3);
  const LPoly overlap = LPoly(2) * LPoly::L() * affine_cone(z);
  return cone_c2 + hyperplanes - overlap;
}

LPoly quadric_class(int n) {
  require_n(n, "quadric_class");
  return proj_space(2 * n) + LPoly::L(n);
}

LPoly c2n_closed(int n) {
  require_n(n, "c2n_closed");
  return LPoly::L(2 * n + 2) - LPoly::L(2 * n + 1) - LPoly::L(n + 1) + LPoly::L(n);
}

LPoly c2n_rec(int n) {
  require_n(n, "c2n_rec");
  LPoly c = LPoly::L(4) - affine_cone(LPoly::L(2) + LPoly(2) * LPoly::L() + LPoly(1));
  for (int k = 2; k <= n; ++k)
    c = LPoly::L(2 * k + 2) - LPoly(2) * LPoly::L(2 * k + 1) + LPoly::L(2 * k) + LPoly::L() * c;
  return c;
}

LPoly complement_c2_closed(int n) {
  require_n(n, "complement_c2_closed");
  return LPoly::L(2 * n + 4) - LPoly::L(2 * n + 3) - LPoly::L(n + 3) + LPoly::L(n + 2);
}

LPoly complement_c2_h_closed(int n) {
  require_n(n, "complement_c2_h_closed");
  return LPoly::L(2 * n + 4) - LPoly(3) * LPoly::L(2 * n + 3) + LPoly(2) * LPoly::L(2 * n + 2) - LPoly::L(n + 3) +
         LPoly(3) * LPoly::L(n + 2) - LPoly(2) * LPoly::L(n + 1);
}

std::vector<ClassRow> class_table(int n) {
  const LPoly z = quadric_class(n);
  return {
      {"C_2n", c2n_closed(n)},
      {"Z_W,2n", z},
      {"A^(2n+4) \\ C2Z", complement_c2(z, n)},
      {"A^(2n+4) \\ (C2Z u H+ u H-)", complement_c2_h(z, n)},
  };
}

nlohmann::json to_json(int n, const ClassRow& row) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [d, c] : row.poly.coeffs()) coeffs[std::to_string(d)] = c.get_str();
  return {{"n", n}, {"class_name", row.name}, {"coeffs", coeffs}};
}

}  // namespace sdw
