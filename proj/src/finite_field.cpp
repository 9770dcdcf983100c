#include "sdw/finite_field.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <vector>

#include "sdw/parallel.hpp"

namespace sdw {

std::string_view locus_name(Locus l) {
  switch (l) {
    case Locus::QuadricComplementAffine: return "quadric-complement-affine";
    case Locus::Cone2Complement: return "cone2-complement";
    case Locus::Cone2ComplementMinusHyperplanes: return "cone2-complement-minus-hyperplanes";
    case Locus::QuadricProjective: return "quadric-projective";
  }
  return "?";
}

Locus parse_locus(std::string_view name) {
  if (name == "quadric-complement") return Locus::QuadricComplementAffine;
  for (Locus l : {Locus::QuadricComplementAffine, Locus::Cone2Complement, Locus::Cone2ComplementMinusHyperplanes,
                  Locus::QuadricProjective})
    if (locus_name(l) == name) return l;
  throw std::invalid_argument("unknown locus '" + std::string(name) + "'");
}

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

std::optional<std::uint64_t> sqrt_minus_one(std::uint64_t q) {
  for (std::uint64_t x = 1; x < q; ++x)
    if ((x * x + 1) % q == 0) return x;
  return std::nullopt;
}

namespace {

std::uint64_t residue(std::int64_t v, std::uint64_t q) {
  const auto m = static_cast<std::int64_t>(q);
  return static_cast<std::uint64_t>(((v % m) + m) % m);
}

void validate_field(std::uint64_t q) {
  if (!is_prime(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not prime");
  if (q % 4 != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not 1 mod 4; -1 is not a square");
}

}  // namespace

void validate(const CountSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
  validate_field(spec.q);
  for (int a = 0; a < 4; ++a)
    if (residue(spec.w[a], spec.q) == 0)
      throw std::invalid_argument("W" + std::to_string(a + 1) + " vanishes mod " + std::to_string(spec.q));
}

std::uint64_t count_points(const CountSpec& spec) {
  validate(spec);
  const std::uint64_t q = spec.q;
  const int dim_zeta = 2 * spec.n + 2;
  const bool with_mu = spec.locus == Locus::Cone2Complement || spec.locus == Locus::Cone2ComplementMinusHyperplanes;
  const int dim = dim_zeta + (with_mu ? 2 : 0);
  if (std::pow(static_cast<double>(q), dim) > kCountGuard)
    throw CountGuardError("search space " + std::to_string(q) + "^" + std::to_string(dim) + " exceeds the 1e8 guard");

  std::vector<std::uint64_t> coef(dim_zeta, 1);
  for (int a = 0; a < 4; ++a) coef[a] = residue(spec.w[a], q) * residue(spec.w[a], q) % q;

  // Last coordinate handled in closed form: zeros_last[s] = #{x : s + c x^2 = 0}.
  const std::uint64_t c_last = coef[dim_zeta - 1];
  std::vector<std::uint64_t> zeros_last(q, 0);
  for (std::uint64_t x = 0; x < q; ++x) ++zeros_last[(q - c_last * x % q * x % q) % q];

  // Distribution of the partial sum over zeta_2 .. zeta_{d-1}, for each zeta_1.
  std::vector<std::uint64_t> zero_counts(q, 0);  // per zeta_1 value: #{zeta : Q = 0}
  parallel_for(q, [&](std::size_t z1) {
    std::vector<std::uint64_t> dist(q, 0), next(q);
    dist[coef[0] * z1 % q * z1 % q] = 1;
    for (int k = 1; k < dim_zeta - 1; ++k) {
      std::fill(next.begin(), next.end(), 0);
      for (std::uint64_t s = 0; s < q; ++s) {
        if (dist[s] == 0) continue;
        for (std::uint64_t x = 0; x < q; ++x) next[(s + coef[k] * x % q * x) % q] += dist[s];
      }
      dist.swap(next);
    }
    std::uint64_t zeros = 0;
    for (std::uint64_t s = 0; s < q; ++s) zeros += dist[s] * zeros_last[s];
    zero_counts[z1] = zeros;
  });
  std::uint64_t zeros = 0;
  for (auto z : zero_counts) zeros += z;
  std::uint64_t total = 1;
  for (int k = 0; k < dim_zeta; ++k) total *= q;
  const std::uint64_t nonzero = total - zeros;

  switch (spec.locus) {
    case Locus::QuadricComplementAffine: return nonzero;
    case Locus::QuadricProjective: return (zeros - 1) / (q - 1);
    case Locus::Cone2Complement:
    case Locus::Cone2ComplementMinusHyperplanes: {
      std::uint64_t mu_count = 0;
      for (std::uint64_t mu1 = 0; mu1 < q; ++mu1)
        for (std::uint64_t mu2 = 0; mu2 < q; ++mu2) {
          if (spec.locus == Locus::Cone2ComplementMinusHyperplanes && (mu2 == 1 || mu2 == q - 1)) continue;
          ++mu_count;
        }
      return mu_count * nonzero;
    }
  }
  return 0;
}

LPoly expected_class(const CountSpec& spec) {
  const LPoly z = quadric_class(spec.n);
  switch (spec.locus) {
    case Locus::QuadricComplementAffine: return c2n_closed(spec.n);
    case Locus::QuadricProjective: return z;
    case Locus::Cone2Complement: return complement_c2(z, spec.n);
    case Locus::Cone2ComplementMinusHyperplanes: return complement_c2_h(z, spec.n);
  }
  return {};
}

namespace {

// Quadratic forms over F_q in variables 0..d-1 as a coefficient map on
// (i, j) with i <= j.
using QuadForm = std::map<std::pair<int, int>, std::uint64_t>;
using LinForm = std::vector<std::uint64_t>;

QuadForm product(const LinForm& a, const LinForm& b, std::uint64_t q) {
  QuadForm r;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i] == 0 || b[j] == 0) continue;
      const std::pair<int, int> key{static_cast<int>(std::min(i, j)), static_cast<int>(std::max(i, j))};
      r[key] = (r[key] + a[i] * b[j]) % q;
    }
  return r;
}

QuadForm combine(const QuadForm& a, const QuadForm& b, std::uint64_t q, bool subtract) {
  QuadForm r = a;
  for (const auto& [k, v] : b) r[k] = (r[k] + (subtract ? q - v : v)) % q;
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

}  // namespace

bool split_form_check(std::uint64_t q, std::array<std::int64_t, 4> w, int n) {
  validate_field(q);
  if (n < 1) throw std::invalid_argument("split_form_check: n must be >= 1");
  const auto root = sqrt_minus_one(q);
  if (!root) throw std::invalid_argument("no square root of -1 mod " + std::to_string(q));
  const std::uint64_t i = *root;
  std::array<std::uint64_t, 4> W;
  for (int a = 0; a < 4; ++a) W[a] = residue(w[a], q);

  const int d = 2 * n + 2;
  QuadForm target;
  for (int a = 0; a < d; ++a) {
    const std::uint64_t c = a < 4 ? W[a] * W[a] % q : 1;
    if (c) target[{a, a}] = c;
  }

  auto lin = [&](std::initializer_list<std::pair<int, std::uint64_t>> entries) {
    LinForm f(d, 0);
    for (auto [k, c] : entries) f[k] = c % q;
    return f;
  };
  const std::uint64_t minus_i = q - i;
  const LinForm X1 = lin({{0, W[0]}, {1, i * W[1]}});
  const LinForm Y1 = lin({{0, W[0]}, {1, minus_i * W[1]}});
  // X2 = i W3 z3 - W4 z4, Y2 = i W3 z3 + W4 z4
  const LinForm X2 = lin({{2, i * W[2]}, {3, (q - W[3]) % q}});
  const LinForm Y2 = lin({{2, i * W[2]}, {3, W[3]}});
  QuadForm split = combine(product(X1, Y1, q), product(X2, Y2, q), q, true);
  for (int k = 3; k <= n + 1; ++k) {
    const int a = 2 * k - 2, b = 2 * k - 1;
    split = combine(split, product(lin({{a, 1}, {b, i}}), lin({{a, 1}, {b, minus_i}}), q), q, false);
  }
  return split == target;
}

}  // namespace sdw
