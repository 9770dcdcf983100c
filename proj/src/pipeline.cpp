#include "sdw/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "sdw/expr_json.hpp"
#include "sdw/render.hpp"

namespace sdw {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

PipelineRun run_pipeline(int n, const PipelineOptions& opts) {
  if (n < kMinSupportedN || n > kMaxSupportedN)
    throw std::out_of_range("n out of supported range (" + std::to_string(kMinSupportedN) + ".." +
                            std::to_string(kMaxSupportedN) + ")");
  auto log = [&](const std::string& s) {
    if (opts.log) opts.log(s);
  };
  std::map<std::string, double> seconds;

  auto start = Clock::now();
  const DiracSymbol q = dirac_symbol(opts.rep ? *opts.rep : default_gamma_rep());
  const SymbolTriple p = square_symbol(q);
  seconds["symbol"] = seconds_since(start);
  log("symbol of D^2: p1 " + std::to_string(p.p1.term_count()) + " terms, p0 " +
      std::to_string(p.p0.term_count()) + " terms");

  start = Clock::now();
  ResolventOptions ropts;
  ropts.cache_dir = opts.cache_dir;
  ropts.log = opts.log;
  ropts.trace_only_last = true;
  const ResolventSymbol rs = resolvent(n, p, ropts);
  seconds["resolvent"] = seconds_since(start);

  start = Clock::now();
  PipelineRun run;
  run.n = n;
  run.density = traced_density(rs);
  seconds["density"] = seconds_since(start);
  log("traced density: " + std::to_string(run.density.expr.size()) + " terms");

  start = Clock::now();
  run.result = assemble_alpha(run.density);
  seconds["residue"] = seconds_since(start);
  log("alpha_" + std::to_string(2 * n) + ": " + std::to_string(run.result.alpha.size()) + " terms");

  for (const auto& [m, layer] : rs.layers) run.result.stats.layer_terms[m] = layer.term_count();
  if (rs.last_trace) run.result.stats.layer_terms[-2 * n - 2] = rs.last_trace->size();
  for (const auto& [m, s] : rs.layer_seconds) seconds["layer " + std::to_string(m)] = s;
  run.result.stats.cached_layers = rs.cached_layers;
  run.result.stats.seconds = seconds;
  return run;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json singular_json = nlohmann::json::array();
  for (const auto& c : singular)
    singular_json.push_back({{"trig", {{"sin_eta", c.sin_eta}, {"cos_eta", c.cos_eta}, {"sin_psi", c.sin_psi},
                                       {"cos_psi", c.cos_psi}}},
                             {"integral", c.integral.to_json()}});
  return {{"n", n},
          {"exact", exact},
          {"mc_sdw", sdw.to_json()},
          {"mc_period", period.to_json()},
          {"z_sdw", z_sdw},
          {"z_period", z_period},
          {"z_mutual", z_mutual},
          {"tolerance_sigmas", kAgreementSigmas},
          {"singular_components", singular_json},
          {"singular_threshold", singular_threshold},
          {"singular_max_z", singular_max_z},
          {"result", pass ? "PASS" : "FAIL"},
          {"assignment", assignment.to_json()}};
}

VerifyReport verify(const PipelineRun& run, const Assignment& a, long long samples, std::uint64_t seed,
                    bool corrupt_alpha) {
  VerifyReport r;
  r.n = run.n;
  r.assignment = a;
  r.exact = eval(run.result.alpha, a);
  if (corrupt_alpha) r.exact += 1.0;
  r.sdw = mc_sdw(run.density, a, samples, seed);
  const DensitySplit split = split_singular(run.density);
  r.period = mc_period(emit_period_form(parity_filter(split.regular)), a, samples, seed + 1);
  r.singular = mc_singular(run.density, a, samples, seed + 2);
  r.singular_threshold = bonferroni_threshold(r.singular.size());
  auto z = [](double x, double y, double s) { return s > 0 ? std::abs(x - y) / s : (x == y ? 0.0 : INFINITY); };
  r.z_sdw = z(r.exact, r.sdw.mean, r.sdw.stderr_);
  r.z_period = z(r.exact, r.period.mean, r.period.stderr_);
  r.z_mutual = z(r.sdw.mean, r.period.mean, std::hypot(r.sdw.stderr_, r.period.stderr_));
  for (const auto& c : r.singular)
    r.singular_max_z = std::max(r.singular_max_z, z(c.integral.mean, 0.0, c.integral.stderr_));
  r.pass = r.z_sdw <= kAgreementSigmas && r.z_period <= kAgreementSigmas && r.singular_max_z <= r.singular_threshold;
  return r;
}

nlohmann::json to_json(const SdwResult& r) {
  nlohmann::json stats = {{"density_terms", r.stats.density_terms},
                          {"filtered_terms", r.stats.filtered_terms},
                          {"alpha_terms", r.stats.alpha_terms},
                          {"negative_sin_psi_terms", r.stats.negative_sin_psi_terms},
                          {"negative_sin_eta_terms", r.stats.negative_sin_eta_terms},
                          {"even_u", r.stats.even_u},
                          {"cached_layers", r.stats.cached_layers}};
  nlohmann::json layers = nlohmann::json::object();
  for (const auto& [m, c] : r.stats.layer_terms) layers[std::to_string(m)] = c;
  stats["layer_terms"] = layers;
  stats["seconds"] = r.stats.seconds;
  return {{"n", r.n}, {"alpha", to_json(r.alpha)}, {"human", render_human(r.alpha)}, {"stats", stats}};
}

nlohmann::json to_json(const PeriodForm& pf) {
  return {{"n", pf.n},
          {"numerator", to_json(pf.numerator)},
          {"numerator_human", render_human(pf.numerator)},
          {"denominator", {{"one_minus_mu2_sq", pf.c_pow}, {"one_minus_mu1_sq_minus_mu2_sq", pf.s_pow}}},
          {"q", to_json(pf.q.expr())},
          {"domain", pf.domain_description()}};
}

}  // namespace sdw
