#include "sdw/symbol.hpp"

#include <chrono>
#include <stdexcept>
#include <tuple>

#include "sdw/expr_json.hpp"
#include "sdw/layer_cache.hpp"

namespace sdw {

namespace {

using C = GaussianRational;

Expr u(int i, int e = 1) { return Expr::var(VarId::u(i), e); }
Expr xi(int k) { return Expr::var(VarId::xi(k)); }
Expr zeta(int k) { return Expr::var(VarId::zeta(k)); }
Expr om(int i, int j) { return Expr::var(VarId::omega(i, j)); }
const Expr kSinEta = Expr::var(VarId::sin_eta());
const Expr kCosEta = Expr::var(VarId::cos_eta());
const Expr kCscEta = Expr::var(VarId::sin_eta(), -1);
const Expr kSinPsi = Expr::var(VarId::sin_psi());
const Expr kCosPsi = Expr::var(VarId::cos_psi());

// Pairs (xi_j, x_j) entering the composition formula; phi is absent.
const std::array<std::pair<Derivation, Derivation>, 3> kConjugatePairs{{
    {Derivation{Derivation::Kind::Xi, 1}, Derivation::t()},
    {Derivation{Derivation::Kind::Xi, 2}, Derivation::eta()},
    {Derivation{Derivation::Kind::Xi, 4}, Derivation::psi()},
}};

}  // namespace

DiracSymbol dirac_symbol(const GammaRep& g) {
  const C i = C::i();
  // Coefficients of gamma^a, read off the local formula of D.
  Expr a2 = (u(1) * u(2, -1) * u(3, -1)).scaled(-i) *
            (kCscEta * kCosPsi * (xi(4) * kCosEta - xi(3)) + xi(2) * kSinPsi);
  Expr a3 = (u(2) * u(1, -1) * u(3, -1)).scaled(i) *
            (kSinPsi * (xi(3) * kCscEta - xi(4) * kCosEta * kCscEta) + xi(2) * kCosPsi);
  Expr a1 = (xi(1) * u(1, -1) * u(2, -1) * u(3, -1)).scaled(i);
  Expr a4 = (xi(4) * u(3) * u(1, -1) * u(2, -1)).scaled(i);

  DiracSymbol d;
  d.q1 = g[1].scaled(a1) + g[2].scaled(a2) + g[3].scaled(a3) + g[4].scaled(a4);

  const Expr prod_u = u(1) * u(2) * u(3);
  const Expr inv_prod_u = u(1, -1) * u(2, -1) * u(3, -1);
  Expr c1 = (inv_prod_u * (om(1, 1) * u(1, -2) + om(2, 1) * u(2, -2) + om(3, 1) * u(3, -2))).scaled(C::fraction(1, 4));
  Expr c234 = (prod_u * (u(1, -4) + u(2, -4) + u(3, -4))).scaled(C::fraction(-1, 4));
  d.q0 = g[1].scaled(c1) + mat_mul(mat_mul(g[2], g[3]), g[4]).scaled(c234);
  return d;
}

SymbolTriple square_symbol(const DiracSymbol& q) {
  SymbolTriple p;
  p.p2 = mat_mul(q.q1, q.q1);
  if (!p.p2.is_scalar()) throw std::logic_error("square_symbol: q1^2 is not a scalar matrix");
  p.p2_scalar = p.p2(0, 0);

  const C minus_i = -C::i();
  p.p1 = mat_mul(q.q0, q.q1) + mat_mul(q.q1, q.q0);
  p.p0 = mat_mul(q.q0, q.q0);
  for (const auto& [dxi, dx] : kConjugatePairs) {
    MatrixExpr dq1 = q.q1.derived(dxi);
    p.p1 += mat_mul(dq1, q.q1.derived(dx)).scaled(minus_i);
    p.p0 += mat_mul(dq1, q.q0.derived(dx)).scaled(minus_i);
  }
  return p;
}

std::vector<ResolventTuple> resolvent_tuples(int m) {
  std::vector<ResolventTuple> out;
  for (int j = m + 1; j <= -2; ++j)
    for (int k = 0; k <= 2; ++k) {
      const int total = j + k - m - 2;
      if (total < 0) continue;
      for (int a1 = 0; a1 <= total; ++a1)
        for (int a2 = 0; a1 + a2 <= total; ++a2) out.push_back({j, k, a1, a2, total - a1 - a2});
    }
  return out;
}

Expr xi_quadratic_form(const SymbolTriple& p, int n) {
  Expr q = p.p2_scalar;
  for (int k = 5; k <= 2 * n + 2; ++k) q += xi(k) * xi(k);
  return q;
}

Expr w_squared(int a) {
  switch (a) {
    case 1: return u(1, -2) * u(2, -2) * u(3, -2);
    case 2: return u(1, 2) * u(2, -2) * u(3, -2);
    case 3: return u(2, 2) * u(1, -2) * u(3, -2);
    case 4: return u(3, 2) * u(1, -2) * u(2, -2);
    default: throw std::out_of_range("w_squared: index must be 1..4");
  }
}

Expr zeta_quadratic_form(int n) {
  Expr q;
  for (int a = 1; a <= 4; ++a) q += w_squared(a) * zeta(a) * zeta(a);
  for (int k = 5; k <= 2 * n + 2; ++k) q += zeta(k) * zeta(k);
  return q;
}

SubstitutionRules xi_to_zeta_rules(int n) {
  SubstitutionRules r;
  r[VarId::xi(1)] = zeta(1);
  r[VarId::xi(2)] = zeta(2) * kSinPsi + zeta(3) * kCosPsi;
  r[VarId::xi(3)] = kSinEta * (zeta(3) * kSinPsi - zeta(2) * kCosPsi) + zeta(4) * kCosEta;
  r[VarId::xi(4)] = zeta(4);
  for (int k = 5; k <= 2 * n + 2; ++k) r[VarId::xi(k)] = zeta(k);
  return r;
}

SubstitutionRules zeta_to_xi_rules(int n) {
  SubstitutionRules r;
  const Expr cot = kCosEta * kCscEta;
  r[VarId::zeta(1)] = xi(1);
  r[VarId::zeta(2)] = xi(4) * cot * kCosPsi - xi(3) * kCscEta * kCosPsi + xi(2) * kSinPsi;
  r[VarId::zeta(3)] = -(xi(4) * cot * kSinPsi) + xi(3) * kCscEta * kSinPsi + xi(2) * kCosPsi;
  r[VarId::zeta(4)] = xi(4);
  for (int k = 5; k <= 2 * n + 2; ++k) r[VarId::zeta(k)] = xi(k);
  return r;
}

const MatrixExpr& ResolventSymbol::layer(int m) const {
  auto it = layers.find(m);
  if (it == layers.end()) throw std::out_of_range("ResolventSymbol: layer " + std::to_string(m) + " not computed");
  return it->second;
}

namespace {

std::uint64_t triple_hash(const SymbolTriple& p, int n) {
  std::uint64_t h = fnv1a("sdw-layer-v1 n=" + std::to_string(n));
  h = content_hash(p.p2, h);
  h = content_hash(p.p1, h);
  return content_hash(p.p0, h);
}

// Memoized mixed derivatives D^(a1,a2,a4) of a fixed family of matrices.
class DerivativeTable {
 public:
  DerivativeTable(std::array<Derivation, 3> ds, const QForm* q) : ds_(ds), q_(q) {}

  void set_base(int key, const MatrixExpr& m) { cache_[{key, 0, 0, 0}] = m; }

  const MatrixExpr& get(int key, int a1, int a2, int a4) {
    auto idx = std::make_tuple(key, a1, a2, a4);
    if (auto it = cache_.find(idx); it != cache_.end()) return it->second;
    MatrixExpr val;
    if (a1 > 0) {
      val = get(key, a1 - 1, a2, a4).derived(ds_[0], q_);
    } else if (a2 > 0) {
      val = get(key, a1, a2 - 1, a4).derived(ds_[1], q_);
    } else if (a4 > 0) {
      val = get(key, a1, a2, a4 - 1).derived(ds_[2], q_);
    } else {
      throw std::logic_error("DerivativeTable: missing base entry");
    }
    return cache_.emplace(idx, std::move(val)).first->second;
  }

 private:
  std::array<Derivation, 3> ds_;
  const QForm* q_;
  std::map<std::tuple<int, int, int, int>, MatrixExpr> cache_;
};

long factorial(int k) {
  long r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

ResolventSymbol resolvent(int n, const SymbolTriple& p, const ResolventOptions& opts) {
  if (n < kMinSupportedN || n > kMaxSupportedN)
    throw std::out_of_range("n out of supported range (" + std::to_string(kMinSupportedN) + ".." +
                            std::to_string(kMaxSupportedN) + ")");
  auto log = [&](const std::string& s) {
    if (opts.log) opts.log(s);
  };

  ResolventSymbol rs;
  rs.n = n;
  rs.q = QForm(xi_quadratic_form(p, n));

  std::optional<LayerCache> cache;
  if (opts.cache_dir) cache.emplace(*opts.cache_dir);

  std::uint64_t upstream = triple_hash(p, n);
  rs.layers[-2] = MatrixExpr::scalar(Expr::q_inverse(1));
  upstream = content_hash(rs.layers[-2], upstream);

  DerivativeTable dsigma({Derivation::xi(1), Derivation::xi(2), Derivation::xi(4)}, &rs.q);
  DerivativeTable dp({Derivation::t(), Derivation::eta(), Derivation::psi()}, nullptr);
  dsigma.set_base(-2, rs.layers[-2]);
  dp.set_base(0, p.p0);
  dp.set_base(1, p.p1);
  dp.set_base(2, p.p2);

  const C minus_i = -C::i();
  auto tuple_coeff = [&](const ResolventTuple& t) {
    C coeff(1);
    for (int r = 0; r < t.a1 + t.a2 + t.a4; ++r) coeff *= minus_i;
    coeff /= C(factorial(t.a1) * factorial(t.a2) * factorial(t.a4));
    return coeff;
  };
  const int last = -2 * n - 2;
  for (int m = -3; m >= last; --m) {
    const auto start = std::chrono::steady_clock::now();
    const bool trace_only = opts.trace_only_last && m == last;
    const char* stem = trace_only ? "trace" : "sigma";
    std::optional<MatrixExpr> layer;
    if (cache) {
      layer = cache->load(n, m, upstream, stem);
      if (layer) {
        rs.cached_layers.push_back(m);
        log("layer " + std::to_string(m) + ": loaded from " + cache->path_for(n, m, stem).string());
      }
    }
    if (!layer && trace_only) {
      // tr(A B) = sum_ij A_ij B_ji, accumulated term by term. Derivatives of
      // sigma_{m+1} are each used once here, so they are not memoized.
      TermAccumulator acc;
      for (const auto& t : resolvent_tuples(m)) {
        const MatrixExpr& dpk = dp.get(t.k, t.a1, t.a2, t.a4);
        if (dpk.is_zero()) continue;
        MatrixExpr fresh;
        const MatrixExpr* ds = nullptr;
        if (t.j == m + 1) {
          fresh = rs.layers.at(t.j);
          for (int r = 0; r < t.a1; ++r) fresh = fresh.derived(Derivation::xi(1), &rs.q);
          for (int r = 0; r < t.a2; ++r) fresh = fresh.derived(Derivation::xi(2), &rs.q);
          for (int r = 0; r < t.a4; ++r) fresh = fresh.derived(Derivation::xi(4), &rs.q);
          ds = &fresh;
        } else {
          ds = &dsigma.get(t.j, t.a1, t.a2, t.a4);
        }
        if (ds->is_zero()) continue;
        const C coeff = -tuple_coeff(t);
        for (int i = 0; i < MatrixExpr::kDim; ++i)
          for (int j = 0; j < MatrixExpr::kDim; ++j)
            for (const auto& term : (*ds)(i, j).terms()) acc.add_scaled(dpk(j, i), term.mono, term.coeff * coeff);
      }
      MatrixExpr holder;
      holder(0, 0) = acc.take().with_qpow_shift(1);
      layer = std::move(holder);
      if (cache) cache->store(n, m, upstream, *layer, stem);
    }
    if (!layer) {
      MatrixExpr sum;
      for (const auto& t : resolvent_tuples(m)) {
        const MatrixExpr& ds = dsigma.get(t.j, t.a1, t.a2, t.a4);
        if (ds.is_zero()) continue;
        const MatrixExpr& dpk = dp.get(t.k, t.a1, t.a2, t.a4);
        if (dpk.is_zero()) continue;
        sum += mat_mul(ds, dpk).scaled(tuple_coeff(t));
      }
      // sigma_m = -(sum) sigma_{-2}, and sigma_{-2} = Q^-1 I.
      layer = (-sum).with_qpow_shift(1);
      if (cache) cache->store(n, m, upstream, *layer, stem);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rs.layer_seconds[m] = secs;
    log("layer " + std::to_string(m) + (trace_only ? " (trace)" : "") + ": " + std::to_string(layer->term_count()) +
        " terms, " + std::to_string(secs) + " s");
    if (trace_only) {
      rs.last_trace = (*layer)(0, 0);
    } else {
      rs.layers[m] = std::move(*layer);
      dsigma.set_base(m, rs.layers[m]);
      upstream = content_hash(rs.layers[m], upstream);
    }
  }
  return rs;
}

std::size_t homogeneity_violations(const Expr& e, int m, VarKind kind) {
  std::size_t bad = 0;
  for (const auto& t : e.terms())
    if (t.mono.degree(kind) - 2 * t.mono.qpow() != m) ++bad;
  return bad;
}

std::size_t homogeneity_violations(const MatrixExpr& e, int m, VarKind kind) {
  std::size_t bad = 0;
  for (const auto& x : e.entries()) bad += homogeneity_violations(x, m, kind);
  return bad;
}

namespace {

void require_xi_free(const Expr& e) {
  if (contains_kind(e, VarKind::Xi)) throw std::logic_error("to_zeta: residual xi variable after substitution");
}

}  // namespace

ZetaSymbol to_zeta(const ResolventSymbol& rs) {
  ZetaSymbol z;
  z.n = rs.n;
  z.q = QForm(zeta_quadratic_form(rs.n));
  const auto rules = xi_to_zeta_rules(rs.n);
  // Checked move of the Q-context; the matrix entries then follow.
  (void)substitute(Expr(), rules, rs.q, z.q);
  if (rs.last_trace) throw std::out_of_range("to_zeta: only the trace of the last layer was formed");
  z.sigma = rs.layer(-2 * rs.n - 2).substituted(rules);
  for (const auto& e : z.sigma.entries()) require_xi_free(e);
  return z;
}

Density traced_density(const ResolventSymbol& rs) {
  Density d;
  d.n = rs.n;
  d.q = QForm(zeta_quadratic_form(rs.n));
  const Expr trace = rs.last_trace ? *rs.last_trace : mat_trace(rs.layer(-2 * rs.n - 2));
  d.expr = substitute(trace, xi_to_zeta_rules(rs.n), rs.q, d.q);
  require_xi_free(d.expr);
  return d;
}

}  // namespace sdw
