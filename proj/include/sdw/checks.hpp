#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sdw/pipeline.hpp"

namespace sdw {

/// Outcome of one invariant check. Non-gating checks are reported only.
struct CheckResult {
  std::string name;
  bool pass = false;
  bool gating = true;
  std::string detail;
  double seconds = 0;
};

CheckResult check_clifford();
/// q1^2 is scalar and its entry, after xi -> zeta, is sum_a W_a^2 zeta_a^2.
CheckResult check_p2_identity();
/// sigma_{-2} = Q^-1 I and every layer is homogeneous of its order.
CheckResult check_resolvent(const ResolventSymbol& rs);
/// The cycle integral does not see the odd trig terms.
CheckResult check_parity(const Density& density);
/// alpha is trig-free, pi-free, real and even in every u_i.
CheckResult check_alpha(const SdwResult& r);
/// alpha is invariant under simultaneous permutations of the three families.
CheckResult check_s3_symmetry(const Expr& alpha);
/// alpha from the alternate gamma representation equals alpha.
CheckResult check_rep_independence(int n, const Expr& alpha);
/// Recursion vs closed forms, complement formulas, base values, cone
/// consistency and inclusion-exclusion closure.
CheckResult check_grothendieck();
/// Brute-force counts against the classes at L = q.
CheckResult check_point_counts();
CheckResult check_split_forms();
/// Cross-oracle agreement of alpha with both Monte Carlo integrals.
CheckResult check_monte_carlo(const PipelineRun& run, long long samples, std::uint64_t seed);

/// Runs every check in order, calling `report` after each.
std::vector<CheckResult> run_selftest(int n, long long samples, std::uint64_t seed,
                                      const PipelineOptions& opts,
                                      const std::function<void(const CheckResult&)>& report = {});

}  // namespace sdw
