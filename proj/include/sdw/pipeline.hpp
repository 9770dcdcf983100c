#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "sdw/numeric.hpp"
#include "sdw/residue.hpp"
#include "sdw/symbol.hpp"

namespace sdw {

struct PipelineOptions {
  std::optional<std::filesystem::path> cache_dir;  // nullopt: no caching
  const GammaRep* rep = nullptr;                   // nullptr: default_gamma_rep()
  std::function<void(const std::string&)> log;
};

/// Everything produced on the way from the Dirac symbol to alpha_2n.
struct PipelineRun {
  int n = 1;
  Density density;  // traced, unfiltered, zeta-coordinates
  SdwResult result;
};

/// Dirac symbol -> D^2 symbol -> resolvent layers -> traced zeta density ->
/// alpha_2n. Throws std::out_of_range for unsupported n.
PipelineRun run_pipeline(int n, const PipelineOptions& opts = {});

/// alpha_2n, the two Monte Carlo estimates and the comparison.
struct VerifyReport {
  int n = 1;
  double exact = 0;
  McEstimate sdw;
  McEstimate period;
  double z_sdw = 0;     // |exact - sdw| / sdw.stderr
  double z_period = 0;  // |exact - period| / period.stderr
  double z_mutual = 0;  // |sdw - period| / combined stderr
  std::vector<SingularComponent> singular;
  double singular_threshold = 0;  // per-component z bound
  double singular_max_z = 0;
  bool pass = false;
  Assignment assignment;

  nlohmann::json to_json() const;
};

inline constexpr double kAgreementSigmas = 3.0;

/// PASS when both estimates lie within kAgreementSigmas of the exact value and
/// every singular component is compatible with zero.
/// `corrupt_alpha` adds 1 to the exact value before comparing (negative
/// control for the comparison itself).
VerifyReport verify(const PipelineRun& run, const Assignment& a, long long samples, std::uint64_t seed,
                    bool corrupt_alpha = false);

/// Serialized SdwResult: expression JSON plus metadata and a human rendering.
nlohmann::json to_json(const SdwResult& r);
nlohmann::json to_json(const PeriodForm& pf);

}  // namespace sdw
