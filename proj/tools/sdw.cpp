// Command-line front end: alpha, verify, period-form, classes, count, selftest.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdw/checks.hpp"
#include "sdw/finite_field.hpp"
#include "sdw/grothendieck.hpp"
#include "sdw/layer_cache.hpp"
#include "sdw/parallel.hpp"
#include "sdw/pipeline.hpp"
#include "sdw/render.hpp"

namespace {

using nlohmann::json;
using namespace sdw;

enum Exit { kOk = 0, kUsage = 1, kComputation = 2, kFail = 3 };

// Configuration errors detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string format = "human";
  std::optional<std::string> cache_dir;
  bool no_cache = false;
  unsigned threads = 0;
  bool verbose = false;

  int n = 1;
  std::optional<std::string> eval_pairs;
  std::optional<std::string> assign_file;
  long long samples = 1000000;
  std::uint64_t seed = 1;
  bool corrupt = false;
  std::string domain = "quarter-disk";
  int n_max = 3;
  std::uint32_t q = 5;
  std::string w = "1,1,1,1";
  std::string locus = "quadric-complement";
};

bool json_output(const Config& c) { return c.format == "json"; }

void require_supported_n(int n) {
  if (n < kMinSupportedN || n > kMaxSupportedN)
    throw UsageError("n out of supported range (" + std::to_string(kMinSupportedN) + ".." +
                     std::to_string(kMaxSupportedN) + ")");
}

PipelineOptions pipeline_options(const Config& c) {
  PipelineOptions o;
  if (!c.no_cache) o.cache_dir = resolve_cache_dir(c.cache_dir);
  if (c.verbose) o.log = [](const std::string& s) { std::cerr << s << "\n"; };
  return o;
}

std::optional<Assignment> read_assignment(const Config& c) {
  if (c.eval_pairs && c.assign_file) throw UsageError("--eval and --assign-file are mutually exclusive");
  try {
    if (c.eval_pairs) return Assignment::parse_pairs(*c.eval_pairs);
    if (c.assign_file) {
      std::ifstream in(*c.assign_file);
      if (!in) throw UsageError("cannot read assignment file " + *c.assign_file);
      return Assignment::from_json(json::parse(in));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const json::exception& e) {
    throw UsageError(std::string("assignment file: ") + e.what());
  }
  return std::nullopt;
}

std::string fmt(double x, int precision = 10) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

int cmd_alpha(const Config& c) {
  require_supported_n(c.n);
  const auto assignment = read_assignment(c);
  const PipelineRun run = run_pipeline(c.n, pipeline_options(c));
  const auto& r = run.result;
  std::optional<double> value;
  if (assignment) value = eval(r.alpha, *assignment);

  if (json_output(c)) {
    json out = {{"command", "alpha"}, {"result", to_json(r)}};
    if (value) {
      out["value"] = *value;
      out["assignment"] = assignment->to_json();
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << "alpha_" << 2 * c.n << " (" << r.alpha.size() << " terms):\n" << render_human(r.alpha) << "\n";
  if (value) std::cout << "value: " << fmt(*value, 12) << "\n";
  return kOk;
}

int cmd_verify(const Config& c) {
  require_supported_n(c.n);
  if (c.samples <= 0) throw UsageError("--samples must be positive");
  const Assignment a = read_assignment(c).value_or(default_verification_assignment());
  const PipelineRun run = run_pipeline(c.n, pipeline_options(c));
  const VerifyReport rep = verify(run, a, c.samples, c.seed, c.corrupt);

  if (json_output(c)) {
    std::cout << json{{"command", "verify"}, {"report", rep.to_json()}}.dump(2) << "\n";
  } else {
    std::cout << "n           " << c.n << "\n"
              << "exact       " << fmt(rep.exact) << "\n"
              << "mc_sdw      " << fmt(rep.sdw.mean) << " +- " << fmt(rep.sdw.stderr_, 4) << "  (z = "
              << fmt(rep.z_sdw, 3) << ")\n"
              << "mc_period   " << fmt(rep.period.mean) << " +- " << fmt(rep.period.stderr_, 4) << "  (z = "
              << fmt(rep.z_period, 3) << ")\n"
              << "singular    " << rep.singular.size() << " components, max z " << fmt(rep.singular_max_z, 3)
              << " (bound " << fmt(rep.singular_threshold, 3) << ")\n"
              << "N = " << c.samples << ", seed = " << c.seed << ", tolerance " << kAgreementSigmas << " sigma\n";
    if (rep.pass) {
      std::cout << "PASS\n";
    } else {
      std::cout << "FAIL: discrepancy exact - mc_sdw = " << fmt(rep.exact - rep.sdw.mean)
                << ", exact - mc_period = " << fmt(rep.exact - rep.period.mean) << "\n";
    }
  }
  return rep.pass ? kOk : kFail;
}

int cmd_period_form(const Config& c) {
  require_supported_n(c.n);
  PeriodDomain domain;
  if (c.domain == "quarter-disk") {
    domain = PeriodDomain::QuarterDisk;
  } else if (c.domain == "unit-square") {
    domain = PeriodDomain::UnitSquare;
  } else {
    throw UsageError("--domain must be quarter-disk or unit-square");
  }
  const PipelineRun run = run_pipeline(c.n, pipeline_options(c));
  PeriodForm pf = emit_period_form(parity_filter(run.density));
  pf.domain = domain;

  if (json_output(c)) {
    std::cout << json{{"command", "period-form"}, {"period_form", to_json(pf)}}.dump(2) << "\n";
    return kOk;
  }
  std::cout << "numerator (" << pf.numerator.size() << " terms):\n"
            << render_human(pf.numerator) << "\n"
            << "denominator: (1 - mu2^2)^" << pf.c_pow;
  if (pf.s_pow) std::cout << " (1 - mu1^2 - mu2^2)^" << pf.s_pow;
  std::cout << "\nQ = " << render_human(pf.q.expr()) << "\n"
            << "domain: " << pf.domain_description() << "\n";
  return kOk;
}

int cmd_classes(const Config& c) {
  if (c.n_max < 1) throw UsageError("--n-max must be >= 1");
  json rows = json::array();
  for (int n = 1; n <= c.n_max; ++n)
    for (const auto& row : class_table(n)) {
      const LFactorization f = factor_by_inspection(row.poly);
      if (json_output(c)) {
        json j = to_json(n, row);
        j["factored"] = f.to_string();
        rows.push_back(j);
      } else {
        std::cout << "n=" << n << "  " << std::left << std::setw(28) << row.name << row.poly.to_string() << "\n"
                  << std::string(33, ' ') << "= " << f.to_string() << "\n";
      }
    }
  if (json_output(c)) std::cout << json{{"command", "classes"}, {"rows", rows}}.dump(2) << "\n";
  return kOk;
}

std::array<std::int64_t, 4> parse_w(const std::string& text) {
  std::array<std::int64_t, 4> w{};
  std::stringstream ss(text);
  std::string item;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 4) throw UsageError("--w takes exactly four integers");
    try {
      std::size_t used = 0;
      w[k] = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--w: bad integer '" + item + "'");
    }
    ++k;
  }
  if (k != 4) throw UsageError("--w takes exactly four integers");
  return w;
}

int cmd_count(const Config& c) {
  CountSpec spec;
  spec.n = c.n;
  spec.q = c.q;
  spec.w = parse_w(c.w);
  std::uint64_t count = 0;
  try {
    spec.locus = parse_locus(c.locus);
    count = count_points(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("rejected: ") + e.what());
  } catch (const CountGuardError& e) {
    throw UsageError(std::string("rejected: ") + e.what());
  }
  const LPoly cls = expected_class(spec);
  const mpz_class expected = cls.eval(spec.q);
  const bool pass = mpz_class(std::to_string(count)) == expected;
  if (json_output(c)) {
    std::cout << json{{"command", "count"},
                      {"n", spec.n},
                      {"q", spec.q},
                      {"w", spec.w},
                      {"locus", locus_name(spec.locus)},
                      {"count", count},
                      {"class", cls.to_string()},
                      {"class_at_q", expected.get_str()},
                      {"result", pass ? "PASS" : "FAIL"}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << locus_name(spec.locus) << ", n=" << spec.n << ", q=" << spec.q << ": " << count << " vs. "
              << expected << " (" << cls.to_string() << " at L=" << spec.q << ") " << (pass ? "PASS" : "FAIL")
              << "\n";
  }
  return pass ? kOk : kFail;
}

int cmd_selftest(const Config& c) {
  require_supported_n(c.n);
  const bool as_json = json_output(c);
  auto report = [&](const CheckResult& r) {
    if (as_json) return;
    std::cout << (r.pass ? "PASS " : (r.gating ? "FAIL " : "NOTE ")) << std::left << std::setw(40) << r.name
              << fmt(r.seconds, 3) << " s  " << r.detail << std::endl;
  };
  const auto results = run_selftest(c.n, c.samples, c.seed, pipeline_options(c), report);
  int gating = 0, gating_pass = 0, reported = 0, reported_pass = 0;
  for (const auto& r : results) {
    (r.gating ? gating : reported) += 1;
    if (r.pass) (r.gating ? gating_pass : reported_pass) += 1;
  }
  if (as_json) {
    json checks = json::array();
    for (const auto& r : results)
      checks.push_back({{"name", r.name}, {"pass", r.pass}, {"gating", r.gating}, {"detail", r.detail},
                        {"seconds", r.seconds}});
    std::cout << json{{"command", "selftest"}, {"n", c.n}, {"checks", checks}}.dump(2) << "\n";
  } else {
    std::cout << "coverage: " << gating_pass << "/" << gating << " gating checks passed, " << reported_pass << "/"
              << reported << " reported checks hold\n";
  }
  return gating_pass == gating ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Seeley-DeWitt coefficients of the Bianchi IX Dirac operator, period forms and Grothendieck classes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--cache-dir", c.cache_dir, "Directory for cached resolvent layers");
  app.add_flag("--no-cache", c.no_cache, "Do not read or write cached layers");
  app.add_option("--threads", c.threads, "Worker cap (results do not depend on it)");
  app.add_flag("-v,--verbose", c.verbose, "Progress on stderr");

  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", c.n, "Order index n (alpha_2n)"); };
  auto add_assignment = [&](CLI::App* sub, const char* what) {
    sub->add_option("--eval,--assign", c.eval_pairs, what);
    sub->add_option("--assign-file", c.assign_file, "Assignment as a JSON object");
  };
  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--samples", c.samples, "Monte Carlo samples per estimate");
    sub->add_option("--seed", c.seed, "Master seed");
  };

  auto* alpha = app.add_subcommand("alpha", "Exact alpha_2n");
  add_n(alpha);
  add_assignment(alpha, "Evaluate at w1=..,w2=..,w3=..[,w1'=..,w2''=..,w3^(3)=..]");

  auto* verify_cmd = app.add_subcommand("verify", "Compare alpha_2n with both Monte Carlo integrals");
  add_n(verify_cmd);
  add_assignment(verify_cmd, "Assignment (default w=(1,2,3), w'=(1/2,-1,1), w''=(0,0,2))");
  add_mc(verify_cmd);
  verify_cmd->add_flag("--corrupt", c.corrupt, "Add 1 to the exact value (negative control)");

  auto* period = app.add_subcommand("period-form", "Integrand and domain of the period integral");
  add_n(period);
  period->add_option("--domain", c.domain, "quarter-disk or unit-square");

  auto* classes = app.add_subcommand("classes", "Grothendieck classes for n = 1..n-max");
  classes->add_option("--n-max", c.n_max, "Largest n");

  auto* count = app.add_subcommand("count", "Brute-force point count over F_q against the class at L = q");
  add_n(count);
  count->add_option("--q", c.q, "Prime q = 1 mod 4");
  count->add_option("--w", c.w, "W1,W2,W3,W4 residues");
  count->add_option("--locus", c.locus,
                    "quadric-complement(-affine), quadric-projective, cone2-complement, "
                    "cone2-complement-minus-hyperplanes");

  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  add_n(selftest);
  add_mc(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (c.threads > 0) set_thread_count(c.threads);
  try {
    if (*alpha) return cmd_alpha(c);
    if (*verify_cmd) return cmd_verify(c);
    if (*period) return cmd_period_form(c);
    if (*classes) return cmd_classes(c);
    if (*count) return cmd_count(c);
    if (*selftest) return cmd_selftest(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CacheError& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return kComputation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputation;
  }
  return kUsage;
}
