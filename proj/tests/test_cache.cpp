#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include <unistd.h>

#include "sdw/expr_json.hpp"
#include "sdw/layer_cache.hpp"
#include "sdw/pipeline.hpp"
#include "test_util.hpp"

namespace sdw {
namespace {

namespace fs = std::filesystem;

class CacheDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sdw_test_cache_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

MatrixExpr sample_matrix() {
  std::mt19937_64 rng(81);
  MatrixExpr m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = testing::random_expr(rng, 4, true) * Expr::q_inverse(r);
  m(1, 2) = Expr();
  return m;
}

TEST_F(CacheDir, RoundTrip) {
  const LayerCache cache(dir_);
  const MatrixExpr m = sample_matrix();
  cache.store(1, -3, 42, m);
  EXPECT_TRUE(fs::exists(cache.path_for(1, -3)));
  EXPECT_EQ(cache.path_for(1, -3).filename(), "sigma_n1_m3.json");
  const auto back = cache.load(1, -3, 42);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, m);
  cache.store(1, -4, 7, m, "trace");
  EXPECT_EQ(cache.path_for(1, -4, "trace").filename(), "trace_n1_m4.json");
  EXPECT_EQ(*cache.load(1, -4, 7, "trace"), m);
  EXPECT_FALSE(cache.load(2, -3, 42).has_value());
}

TEST_F(CacheDir, StaleEntryIsIgnored) {
  const LayerCache cache(dir_);
  cache.store(1, -3, 42, sample_matrix());
  EXPECT_FALSE(cache.load(1, -3, 43).has_value());
}

TEST_F(CacheDir, CorruptEntryNamesPath) {
  const LayerCache cache(dir_);
  cache.store(1, -3, 42, sample_matrix());
  const fs::path p = cache.path_for(1, -3);
  {
    std::ofstream out(p, std::ios::trunc);
    out << "{\"header\":{\"n\":1,\"m\":-3,\"term_count\":5,\"upstream_hash\":\"2a\"},\n[garbage\n";
  }
  try {
    (void)cache.load(1, -3, 42);
    FAIL() << "expected CacheError";
  } catch (const CacheError& e) {
    EXPECT_NE(std::string(e.what()).find(p.string()), std::string::npos) << e.what();
  }
}

TEST_F(CacheDir, TruncatedEntryIsCorrupt) {
  const LayerCache cache(dir_);
  cache.store(1, -3, 42, sample_matrix());
  const fs::path p = cache.path_for(1, -3);
  fs::resize_file(p, fs::file_size(p) / 2);
  EXPECT_THROW((void)cache.load(1, -3, 42), CacheError);
}

TEST_F(CacheDir, ResolutionOrder) {
  const char* saved = std::getenv(kCacheEnvVar);
  const std::string saved_value = saved ? saved : "";
  ::setenv(kCacheEnvVar, dir_.c_str(), 1);
  EXPECT_EQ(resolve_cache_dir(std::string("/tmp/flag_dir")), fs::path("/tmp/flag_dir"));
  EXPECT_EQ(resolve_cache_dir(std::nullopt), dir_);
  ::unsetenv(kCacheEnvVar);
  EXPECT_EQ(resolve_cache_dir(std::nullopt), fs::current_path() / ".sdw_cache");
  if (saved) ::setenv(kCacheEnvVar, saved_value.c_str(), 1);
}

TEST_F(CacheDir, PipelineReusesCachedLayers) {
  PipelineOptions opts;
  opts.cache_dir = dir_;
  const PipelineRun first = run_pipeline(1, opts);
  EXPECT_TRUE(first.result.stats.cached_layers.empty());
  const PipelineRun second = run_pipeline(1, opts);
  EXPECT_FALSE(second.result.stats.cached_layers.empty());
  EXPECT_EQ(first.result.alpha, second.result.alpha);
  EXPECT_EQ(first.density.expr, second.density.expr);
}

}  // namespace
}  // namespace sdw
