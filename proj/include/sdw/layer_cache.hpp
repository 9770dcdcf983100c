#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sdw/matrix.hpp"

namespace sdw {

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One JSON file per (n, m) layer:
///   {"header":{"n":..,"m":..,"term_count":..,"upstream_hash":"<hex>"},
///    "layer":<matrix>}
/// written one term per line so that large layers can be streamed in and out.
/// `stem` distinguishes full layers ("sigma") from stored traces ("trace").
/// A file whose upstream hash differs from the expected one is stale and is
/// ignored; a file that cannot be parsed raises CacheError naming the path.
class LayerCache {
 public:
  explicit LayerCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(int n, int m, std::string_view stem = "sigma") const;
  std::optional<MatrixExpr> load(int n, int m, std::uint64_t upstream_hash, std::string_view stem = "sigma") const;
  void store(int n, int m, std::uint64_t upstream_hash, const MatrixExpr& layer,
             std::string_view stem = "sigma") const;

 private:
  std::filesystem::path dir_;
};

inline constexpr const char* kCacheEnvVar = "SDW_CACHE_DIR";

/// Flag, then $SDW_CACHE_DIR, then ./.sdw_cache.
std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag);

}  // namespace sdw
