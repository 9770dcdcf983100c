#include "sdw/checks.hpp"

#include <chrono>
#include <sstream>

#include "sdw/finite_field.hpp"
#include "sdw/grothendieck.hpp"

namespace sdw {

namespace {

template <class Body>
CheckResult timed(std::string name, bool gating, Body body) {
  CheckResult r;
  r.name = std::move(name);
  r.gating = gating;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

CheckResult check_clifford() {
  return timed("Clifford relations", true, [](CheckResult& r) {
    std::ostringstream os;
    r.pass = true;
    for (const GammaRep* rep : {&default_gamma_rep(), &alternate_gamma_rep()}) {
      const auto bad = clifford_violations(*rep);
      os << rep->name << ": " << (bad.empty() ? "ok" : bad.front()) << "; ";
      r.pass = r.pass && bad.empty();
    }
    r.detail = os.str();
  });
}

CheckResult check_p2_identity() {
  return timed("p2 identity", true, [](CheckResult& r) {
    const SymbolTriple p = square_symbol(dirac_symbol());
    const Expr lhs = substitute(p.p2_scalar, xi_to_zeta_rules(1));
    Expr rhs;
    for (int a = 1; a <= 4; ++a) rhs += w_squared(a) * Expr::var(VarId::zeta(a), 2);
    r.pass = p.p2.is_scalar() && lhs == rhs;
    r.detail = r.pass ? "q1^2 = (sum W_a^2 zeta_a^2) I" : "mismatch";
  });
}

CheckResult check_resolvent(const ResolventSymbol& rs) {
  return timed("resolvent base and homogeneity", true, [&](CheckResult& r) {
    r.pass = rs.layer(-2) == MatrixExpr::scalar(Expr::q_inverse(1));
    std::ostringstream os;
    os << "sigma_-2 " << (r.pass ? "= Q^-1 I" : "wrong");
    for (const auto& [m, layer] : rs.layers) {
      const std::size_t bad = homogeneity_violations(layer, m, VarKind::Xi);
      os << "; m=" << m << ": " << bad << " off-degree terms";
      r.pass = r.pass && bad == 0;
    }
    if (rs.last_trace) {
      const int m = -2 * rs.n - 2;
      const std::size_t bad = homogeneity_violations(*rs.last_trace, m, VarKind::Xi);
      os << "; m=" << m << " (trace): " << bad << " off-degree terms";
      r.pass = r.pass && bad == 0;
    }
    r.detail = os.str();
  });
}

CheckResult check_parity(const Density& density) {
  return timed("trig parity", true, [&](CheckResult& r) {
    const Expr full = cycle_integral(density);
    const Expr filtered = cycle_integral(parity_filter(density));
    r.pass = full == filtered;
    r.detail = std::to_string(density.expr.size()) + " -> " + std::to_string(parity_filter(density).expr.size()) +
               " terms; cycle integrals " + (r.pass ? "equal" : "differ");
  });
}

CheckResult check_alpha(const SdwResult& res) {
  return timed("eta/psi independence and rationality", true, [&](CheckResult& r) {
    const bool trig_free = is_trig_free(res.alpha);
    const bool pi_free = !contains(res.alpha, VarId::pi());
    const bool real = is_real(res.alpha);
    r.pass = trig_free && pi_free && real && res.stats.even_u;
    std::ostringstream os;
    os << res.alpha.size() << " terms; trig-free " << trig_free << ", pi-free " << pi_free << ", real " << real
       << ", even u " << res.stats.even_u;
    r.detail = os.str();
  });
}

CheckResult check_s3_symmetry(const Expr& alpha) {
  return timed("S3 symmetry (reported)", false, [&](CheckResult& r) {
    const int perms[6][3] = {{1, 2, 3}, {2, 1, 3}, {1, 3, 2}, {3, 2, 1}, {2, 3, 1}, {3, 1, 2}};
    int symmetric = 0;
    for (const auto& p : perms) {
      SubstitutionRules rules;
      for (int i = 1; i <= 3; ++i) {
        rules[VarId::u(i)] = Expr::var(VarId::u(p[i - 1]));
        for (int j = 1; j <= kMaxOmegaOrder; ++j) rules[VarId::omega(i, j)] = Expr::var(VarId::omega(p[i - 1], j));
      }
      if (substitute(alpha, rules) == alpha) ++symmetric;
    }
    r.pass = symmetric == 6;
    r.detail = std::to_string(symmetric) + "/6 permutations leave alpha unchanged";
  });
}

CheckResult check_rep_independence(int n, const Expr& alpha) {
  return timed("gamma representation independence", true, [&](CheckResult& r) {
    PipelineOptions opts;
    opts.rep = &alternate_gamma_rep();
    const PipelineRun other = run_pipeline(n, opts);
    r.pass = other.result.alpha == alpha;
    r.detail = std::string(alternate_gamma_rep().name) + " representation gives " + (r.pass ? "the same" : "a different") +
               " alpha";
  });
}

CheckResult check_grothendieck() {
  return timed("Grothendieck identities", true, [](CheckResult& r) {
    const LPoly L = LPoly::L();
    bool ok = c2n_closed(1) == LPoly::L(4) - LPoly::L(3) - LPoly::L(2) + L;
    ok = ok && quadric_class(1) == LPoly::L(2) + LPoly(2) * L + LPoly(1);
    int first_bad = 0;
    for (int n = 1; n <= 64 && ok; ++n) {
      ok = c2n_rec(n) == c2n_closed(n) &&
           (L - LPoly(1)) * quadric_class(n) + LPoly(1) == LPoly::L(2 * n + 2) - c2n_closed(n);
      if (n <= 32) {
        const LPoly z = quadric_class(n);
        ok = ok && complement_c2(z, n) == complement_c2_closed(n) && complement_c2_h(z, n) == complement_c2_h_closed(n) &&
             complement_c2_h(z, n) + union_c2_h(z, n) == LPoly::L(2 * n + 4);
      }
      if (!ok) first_bad = n;
    }
    r.pass = ok;
    r.detail = ok ? "recursion n<=64, complements and closure n<=32, base values" :
                    "first failure at n=" + std::to_string(first_bad);
  });
}

CheckResult check_point_counts() {
  return timed("point counts", true, [](CheckResult& r) {
    std::ostringstream os;
    r.pass = true;
    std::vector<CountSpec> specs;
    for (std::uint32_t q : {5u, 13u})
      for (auto w : {std::array<std::int64_t, 4>{1, 1, 1, 1}, std::array<std::int64_t, 4>{1, 2, 1, 3}})
        specs.push_back({1, q, w, Locus::QuadricComplementAffine});
    specs.push_back({1, 5, {1, 2, 1, 3}, Locus::QuadricProjective});
    specs.push_back({1, 5, {1, 2, 1, 3}, Locus::Cone2Complement});
    specs.push_back({1, 5, {1, 2, 1, 3}, Locus::Cone2ComplementMinusHyperplanes});
    specs.push_back({2, 5, {1, 2, 1, 3}, Locus::QuadricComplementAffine});
    for (const auto& s : specs) {
      const std::uint64_t count = count_points(s);
      const mpz_class expected = expected_class(s).eval(s.q);
      const bool ok = mpz_class(std::to_string(count)) == expected;
      r.pass = r.pass && ok;
      os << locus_name(s.locus) << " n=" << s.n << " q=" << s.q << ": " << count << (ok ? " = " : " != ")
         << expected << "; ";
    }
    r.detail = os.str();
  });
}

CheckResult check_split_forms() {
  return timed("split quadratic form", true, [](CheckResult& r) {
    r.pass = split_form_check(5, {1, 1, 1, 1}) && split_form_check(13, {1, 2, 1, 3}) &&
             split_form_check(5, {1, 2, 1, 3}, 2) && split_form_check(13, {2, 3, 5, 7}, 2);
    r.detail = "q=5 and q=13, n=1 and n=2";
  });
}

CheckResult check_monte_carlo(const PipelineRun& run, long long samples, std::uint64_t seed) {
  return timed("Monte Carlo cross-check", true, [&](CheckResult& r) {
    const VerifyReport rep = verify(run, default_verification_assignment(), samples, seed);
    r.pass = rep.pass;
    std::ostringstream os;
    os << "exact " << rep.exact << ", sdw " << rep.sdw.mean << " +- " << rep.sdw.stderr_ << ", period "
       << rep.period.mean << " +- " << rep.period.stderr_ << ", singular max z " << rep.singular_max_z;
    r.detail = os.str();
  });
}

std::vector<CheckResult> run_selftest(int n, long long samples, std::uint64_t seed, const PipelineOptions& opts,
                                      const std::function<void(const CheckResult&)>& report) {
  std::vector<CheckResult> out;
  auto add = [&](CheckResult r) {
    if (report) report(r);
    out.push_back(std::move(r));
  };
  add(check_clifford());
  add(check_p2_identity());

  const SymbolTriple p = square_symbol(dirac_symbol());
  ResolventOptions ropts;
  ropts.cache_dir = opts.cache_dir;
  ropts.log = opts.log;
  ropts.trace_only_last = true;
  const ResolventSymbol rs = resolvent(n, p, ropts);
  add(check_resolvent(rs));

  PipelineRun run;
  run.n = n;
  run.density = traced_density(rs);
  add(check_parity(run.density));
  CheckResult alpha = timed("assemble alpha", true, [&](CheckResult& r) {
    run.result = assemble_alpha(run.density);
    r.pass = true;
    r.detail = std::to_string(run.result.alpha.size()) + " terms";
  });
  const bool have_alpha = alpha.pass;
  add(std::move(alpha));
  if (have_alpha) {
    add(check_alpha(run.result));
    add(check_s3_symmetry(run.result.alpha));
    add(check_rep_independence(n, run.result.alpha));
    add(check_monte_carlo(run, samples, seed));
  }
  add(check_grothendieck());
  add(check_point_counts());
  add(check_split_forms());
  return out;
}

}  // namespace sdw
