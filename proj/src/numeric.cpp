#include "sdw/numeric.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sdw/parallel.hpp"

namespace sdw {

void Assignment::set(VarId v, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("Assignment: non-finite value for " + v.name());
  if (v.kind() == VarKind::U && !(x > 0)) throw std::invalid_argument("Assignment: " + v.name() + " must be positive");
  values_[v.index()] = x;
}

double Assignment::at(VarId v) const {
  const auto& x = values_[v.index()];
  if (!x) throw std::invalid_argument("Assignment: no value for " + v.name());
  return *x;
}

void Assignment::set_w(int i, double w) {
  if (!(w > 0)) throw std::invalid_argument("Assignment: w" + std::to_string(i) + " must be positive");
  set(VarId::u(i), std::sqrt(w));
  w_.at(static_cast<std::size_t>(i - 1)) = w;
}

double Assignment::w(int i) const {
  const double u = at(VarId::u(i));
  const auto& raw = w_.at(static_cast<std::size_t>(i - 1));
  return raw && std::sqrt(*raw) == u ? *raw : u * u;
}

void Assignment::set_w_derivative(int i, int j, double value) { set(VarId::omega(i, j), value); }

Assignment Assignment::anisotropy(std::array<double, 3> w) {
  Assignment a;
  for (int i = 1; i <= 3; ++i) {
    a.set_w(i, w[i - 1]);
    for (int j = 1; j <= kMaxOmegaOrder; ++j) a.set_w_derivative(i, j, 0.0);
  }
  return a;
}

namespace {

// "w2" -> (2, 0), "w2'" -> (2, 1), "w2''" -> (2, 2), "w2^(3)" -> (2, 3)
std::pair<int, int> parse_key(std::string_view key) {
  auto bad = [&] { return std::invalid_argument("assignment: bad key '" + std::string(key) + "'"); };
  if (key.size() < 2 || key[0] != 'w' || key[1] < '1' || key[1] > '3') throw bad();
  const int i = key[1] - '0';
  std::string_view rest = key.substr(2);
  if (rest.empty()) return {i, 0};
  if (rest.find_first_not_of('\'') == std::string_view::npos) return {i, static_cast<int>(rest.size())};
  if (rest.size() >= 4 && rest.substr(0, 2) == "^(" && rest.back() == ')') {
    int j = 0;
    for (char c : rest.substr(2, rest.size() - 3)) {
      if (c < '0' || c > '9') throw bad();
      j = j * 10 + (c - '0');
    }
    return {i, j};
  }
  throw bad();
}

void apply_key(Assignment& a, std::string_view key, double value, std::array<bool, 3>& seen) {
  auto [i, j] = parse_key(key);
  if (j == 0) {
    a.set_w(i, value);
    seen[i - 1] = true;
  } else {
    if (j > kMaxOmegaOrder) throw std::invalid_argument("assignment: derivative order too high in '" + std::string(key) + "'");
    a.set_w_derivative(i, j, value);
  }
}

Assignment zero_derivatives() {
  Assignment a;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= kMaxOmegaOrder; ++j) a.set_w_derivative(i, j, 0.0);
  return a;
}

double parse_number(std::string_view s) {
  std::string str(s);
  std::size_t used = 0;
  double v = 0;
  try {
    // Accept p/q fractions as well as decimals.
    if (auto slash = str.find('/'); slash != std::string::npos) {
      double num = std::stod(str.substr(0, slash), &used);
      double den = std::stod(str.substr(slash + 1));
      return num / den;
    }
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("assignment: bad number '" + str + "'");
  }
  if (used != str.size()) throw std::invalid_argument("assignment: bad number '" + str + "'");
  return v;
}

}  // namespace

Assignment Assignment::parse_pairs(std::string_view text) {
  Assignment a = zero_derivatives();
  std::array<bool, 3> seen{};
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("assignment: expected key=value, got '" + std::string(item) + "'");
    apply_key(a, item.substr(0, eq), parse_number(item.substr(eq + 1)), seen);
  }
  for (int i = 0; i < 3; ++i)
    if (!seen[i]) throw std::invalid_argument("assignment: w" + std::to_string(i + 1) + " is required");
  return a;
}

Assignment Assignment::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("assignment: JSON object expected");
  Assignment a = zero_derivatives();
  std::array<bool, 3> seen{};
  for (const auto& [key, value] : j.items()) {
    double v = value.is_string() ? parse_number(value.get<std::string>()) : value.get<double>();
    apply_key(a, key, v, seen);
  }
  for (int i = 0; i < 3; ++i)
    if (!seen[i]) throw std::invalid_argument("assignment: w" + std::to_string(i + 1) + " is required");
  return a;
}

nlohmann::json Assignment::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (int i = 1; i <= 3; ++i) {
    if (has(VarId::u(i))) j["w" + std::to_string(i)] = w(i);
    for (int k = 1; k <= kMaxOmegaOrder; ++k)
      if (has(VarId::omega(i, k)) && at(VarId::omega(i, k)) != 0.0)
        j["w" + std::to_string(i) + "^(" + std::to_string(k) + ")"] = at(VarId::omega(i, k));
  }
  return j;
}

Assignment default_verification_assignment() {
  Assignment a = Assignment::anisotropy({1.0, 2.0, 3.0});
  a.set_w_derivative(1, 1, 0.5);
  a.set_w_derivative(2, 1, -1.0);
  a.set_w_derivative(3, 1, 1.0);
  a.set_w_derivative(3, 2, 2.0);
  return a;
}

double eval(const Expr& e, const Assignment& a, const QForm* q) {
  double q_value = 1.0;
  const int rho_max = max_qpow(e);
  if (rho_max > 0) {
    if (q == nullptr) throw std::logic_error("eval: Q-power present but no Q-context registered");
    q_value = eval(q->expr(), a);
    if (std::abs(q_value) < 1e-12) throw std::domain_error("eval: |Q| below 1e-12");
  }
  double sum = 0;
  for (const auto& t : e.terms()) {
    if (!t.coeff.is_real()) throw std::domain_error("eval: expression has a non-real coefficient");
    double v = t.coeff.re().get_d();
    for (int k = 0; k < kNumVars; ++k) {
      const int ex = t.mono.slots[k];
      if (ex == 0) continue;
      VarId var = VarId::from_index(k);
      double x = var.kind() == VarKind::Pi ? std::numbers::pi : a.at(var);
      v *= std::pow(x, ex);
    }
    if (t.mono.qpow()) v /= std::pow(q_value, t.mono.qpow());
    sum += v;
  }
  return sum;
}

// ---------------------------------------------------------------------------

CompiledExpr::CompiledExpr(const Expr& e, const Assignment& fixed, std::vector<VarId> free_vars)
    : free_(std::move(free_vars)) {
  const std::size_t nf = free_.size();
  std::vector<int> slot_of(kNumVars, -1);
  for (std::size_t f = 0; f < nf; ++f) slot_of[free_[f].index()] = static_cast<int>(f);

  std::map<std::vector<std::int8_t>, double> merged;
  std::vector<std::int8_t> key(nf + 1);
  for (const auto& t : e.terms()) {
    if (!t.coeff.is_real()) throw std::domain_error("CompiledExpr: non-real coefficient");
    double c = t.coeff.re().get_d();
    std::fill(key.begin(), key.end(), 0);
    for (int k = 0; k < kNumVars; ++k) {
      const int ex = t.mono.slots[k];
      if (ex == 0) continue;
      if (slot_of[k] >= 0) {
        key[slot_of[k]] = static_cast<std::int8_t>(ex);
      } else {
        VarId var = VarId::from_index(k);
        double x = var.kind() == VarKind::Pi ? std::numbers::pi : fixed.at(var);
        c *= std::pow(x, ex);
      }
    }
    key[nf] = static_cast<std::int8_t>(t.mono.qpow());
    merged[key] += c;
  }

  min_exp_.assign(nf, 0);
  max_exp_.assign(nf, 0);
  for (const auto& [k, c] : merged) {
    coeffs_.push_back(c);
    exps_.insert(exps_.end(), k.begin(), k.end());
    for (std::size_t f = 0; f < nf; ++f) {
      min_exp_[f] = std::min<int>(min_exp_[f], k[f]);
      max_exp_[f] = std::max<int>(max_exp_[f], k[f]);
    }
    max_q_ = std::max<int>(max_q_, k[nf]);
  }
}

double CompiledExpr::operator()(std::span<const double> x, double q_value) const {
  const std::size_t nf = free_.size();
  if (x.size() != nf) throw std::invalid_argument("CompiledExpr: wrong number of free values");
  // Power tables indexed by exponent - min_exp.
  thread_local std::vector<std::vector<double>> tables;
  tables.resize(nf + 1);
  for (std::size_t f = 0; f < nf; ++f) {
    auto& tab = tables[f];
    tab.assign(static_cast<std::size_t>(max_exp_[f] - min_exp_[f] + 1), 1.0);
    for (int ex = min_exp_[f]; ex <= max_exp_[f]; ++ex) tab[ex - min_exp_[f]] = ex == 0 ? 1.0 : std::pow(x[f], ex);
  }
  auto& qtab = tables[nf];
  qtab.assign(static_cast<std::size_t>(max_q_ + 1), 1.0);
  for (int r = 1; r <= max_q_; ++r) qtab[r] = qtab[r - 1] / q_value;

  double sum = 0;
  const std::int8_t* ex = exps_.data();
  for (std::size_t t = 0; t < coeffs_.size(); ++t, ex += nf + 1) {
    double v = coeffs_[t];
    for (std::size_t f = 0; f < nf; ++f) v *= tables[f][ex[f] - min_exp_[f]];
    sum += v * qtab[ex[nf]];
  }
  return sum;
}

// ---------------------------------------------------------------------------

nlohmann::json McEstimate::to_json() const {
  return {{"estimate", mean}, {"stderr", stderr_}, {"N", samples}, {"seed", seed}};
}

namespace {

constexpr long long kBlockSize = 1 << 14;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t block) : rng_(splitmix64(seed ^ splitmix64(block + 1))) {}

  /// Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53; }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double th = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
  }

  void sphere(std::span<double> out) {
    double norm2 = 0;
    do {
      norm2 = 0;
      for (double& z : out) {
        z = gaussian();
        norm2 += z * z;
      }
    } while (norm2 < 1e-300);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& z : out) z *= inv;
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0;
  bool has_spare_ = false;
};

struct BlockMoments {
  long long count = 0;
  double mean = 0;
  double m2 = 0;

  void push(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  void merge(const BlockMoments& o) {
    if (o.count == 0) return;
    const double n = static_cast<double>(count + o.count);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / n;
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
  }
};

// sample(stream) -> integrand value; result scaled by `weight`.
template <class Sampler>
McEstimate run_mc(long long samples, std::uint64_t seed, double weight, const Sampler& sample) {
  if (samples <= 0) throw std::invalid_argument("Monte Carlo: sample count must be positive");
  const long long blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<BlockMoments> moments(static_cast<std::size_t>(blocks));
  parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    SampleStream stream(seed, b);
    const long long begin = static_cast<long long>(b) * kBlockSize;
    const long long end = std::min(samples, begin + kBlockSize);
    BlockMoments& bm = moments[b];
    for (long long s = begin; s < end; ++s) bm.push(sample(stream));
  });
  BlockMoments total;
  for (const auto& bm : moments) total.merge(bm);
  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.mean = weight * total.mean;
  const double var = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
  est.stderr_ = std::abs(weight) * std::sqrt(var / static_cast<double>(total.count));
  return est;
}

double sphere_area(int n) {
  // |S^{2n+1}| = 2 pi^{n+1} / n!
  return 2.0 * std::pow(std::numbers::pi, n + 1) / std::tgamma(n + 1.0);
}

void require_anisotropy(const Assignment& a) {
  for (int i = 1; i <= 3; ++i) (void)a.at(VarId::u(i));
}

std::vector<VarId> zeta_vars(int dim) {
  std::vector<VarId> v;
  for (int k = 1; k <= dim; ++k) v.push_back(VarId::zeta(k));
  return v;
}

}  // namespace

DensitySplit split_singular(const Density& d) {
  auto singular = [](const Term& t) { return t.mono.exp(VarId::sin_eta()) <= -2; };
  return {Density{d.n, d.expr.filtered([&](const Term& t) { return !singular(t); }), d.q},
          Density{d.n, d.expr.filtered(singular), d.q}};
}

McEstimate mc_sdw(const Density& density, const Assignment& a, long long samples, std::uint64_t seed) {
  require_anisotropy(a);
  const int n = density.n;
  const int dim = 2 * n + 2;
  std::vector<VarId> free{VarId::sin_eta(), VarId::cos_eta(), VarId::sin_psi(), VarId::cos_psi()};
  for (VarId z : zeta_vars(dim)) free.push_back(z);
  const CompiledExpr f(split_singular(density).regular.expr, a, free);
  const CompiledExpr q(density.q.expr(), a, zeta_vars(dim));
  const double pi = std::numbers::pi;
  const double weight = std::pow(pi, -(n + 2)) * (pi / 2) * (pi / 2) * sphere_area(n);

  return run_mc(samples, seed, weight, [&](SampleStream& s) {
    double x[4 + kMaxXi];
    const double eta = 0.5 * pi * s.uniform();
    const double psi = 0.5 * pi * s.uniform();
    x[0] = std::sin(eta);
    x[1] = std::cos(eta);
    x[2] = std::sin(psi);
    x[3] = std::cos(psi);
    std::span<double> zeta(x + 4, static_cast<std::size_t>(dim));
    s.sphere(zeta);
    const double qv = q(zeta);
    if (std::abs(qv) < 1e-12) throw std::domain_error("mc_sdw: |Q| below 1e-12");
    return x[0] * f(std::span<const double>(x, 4 + dim), qv);
  });
}

std::vector<SingularComponent> mc_singular(const Density& density, const Assignment& a, long long samples,
                                           std::uint64_t seed) {
  require_anisotropy(a);
  if (samples <= 0) throw std::invalid_argument("Monte Carlo: sample count must be positive");
  const int n = density.n;
  const int dim = 2 * n + 2;
  const std::array<VarId, 4> trig{VarId::sin_eta(), VarId::cos_eta(), VarId::sin_psi(), VarId::cos_psi()};

  const Density singular = split_singular(density).singular;
  std::map<std::array<int, 4>, TermAccumulator> parts;
  for (const auto& t : singular.expr.terms()) {
    std::array<int, 4> key;
    Monomial m = t.mono;
    for (int k = 0; k < 4; ++k) {
      key[k] = m.exp(trig[k]);
      m.set_exp(trig[k], 0);
    }
    parts[key].add(m, t.coeff);
  }
  std::vector<SingularComponent> out;
  std::vector<CompiledExpr> coeffs;
  for (auto& [key, acc] : parts) {
    SingularComponent c;
    c.sin_eta = key[0];
    c.cos_eta = key[1];
    c.sin_psi = key[2];
    c.cos_psi = key[3];
    out.push_back(c);
    coeffs.emplace_back(acc.take(), a, zeta_vars(dim));
  }
  if (out.empty()) return out;
  const CompiledExpr q(density.q.expr(), a, zeta_vars(dim));

  const std::size_t k = coeffs.size();
  const long long blocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<std::vector<BlockMoments>> moments(static_cast<std::size_t>(blocks), std::vector<BlockMoments>(k));
  parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    SampleStream stream(seed, b);
    const long long begin = static_cast<long long>(b) * kBlockSize;
    const long long end = std::min(samples, begin + kBlockSize);
    double x[kMaxXi];
    std::span<double> zeta(x, static_cast<std::size_t>(dim));
    for (long long s = begin; s < end; ++s) {
      stream.sphere(zeta);
      const double qv = q(zeta);
      for (std::size_t c = 0; c < k; ++c) moments[b][c].push(coeffs[c](zeta, qv));
    }
  });
  const double area = sphere_area(n);
  for (std::size_t c = 0; c < k; ++c) {
    BlockMoments total;
    for (const auto& bm : moments) total.merge(bm[c]);
    McEstimate& est = out[c].integral;
    est.samples = samples;
    est.seed = seed;
    est.mean = area * total.mean;
    const double var = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
    est.stderr_ = area * std::sqrt(var / static_cast<double>(total.count));
  }
  return out;
}

double bonferroni_threshold(std::size_t k, double sigmas) {
  if (k <= 1) return sigmas;
  const double alpha = std::erfc(sigmas / std::sqrt(2.0)) / static_cast<double>(k);
  double lo = sigmas, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (std::erfc(mid / std::sqrt(2.0)) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

McEstimate mc_period(const PeriodForm& form, const Assignment& a, long long samples, std::uint64_t seed) {
  require_anisotropy(a);
  const int n = form.n;
  const int dim = 2 * n + 2;
  std::vector<VarId> free{VarId::mu(1), VarId::mu(2)};
  for (VarId z : zeta_vars(dim)) free.push_back(z);
  const CompiledExpr f(form.numerator, a, free);
  const CompiledExpr q(form.q.expr(), a, zeta_vars(dim));
  const double pi = std::numbers::pi;
  const double weight = std::pow(pi, -(n + 2)) * sphere_area(n);
  const bool disk = form.domain == PeriodDomain::QuarterDisk;

  return run_mc(samples, seed, weight, [&](SampleStream& s) {
    double x[2 + kMaxXi];
    double c = 0;
    double inverse_density = 1.0;
    do {
      if (disk) {
        x[1] = std::sin(0.5 * pi * s.uniform());
        c = 1.0 - x[1] * x[1];
        const double width = std::sqrt(std::max(c, 0.0));
        x[0] = width * s.uniform();
        inverse_density = 0.5 * pi * c;  // 1 / ((2/pi) (1 - mu2^2)^-1)
      } else {
        x[0] = s.uniform();
        x[1] = s.uniform();
        c = 1.0 - x[1] * x[1];
      }
    } while (c < 1e-12);
    std::span<double> zeta(x + 2, static_cast<std::size_t>(dim));
    s.sphere(zeta);
    const double qv = q(zeta);
    if (std::abs(qv) < 1e-12) throw std::domain_error("mc_period: |Q| below 1e-12");
    double v = f(std::span<const double>(x, 2 + dim), qv);
    v /= std::pow(c, form.c_pow);
    if (form.s_pow) v /= std::pow(1.0 - x[0] * x[0] - x[1] * x[1], form.s_pow);
    return v * inverse_density;
  });
}

}  // namespace sdw
