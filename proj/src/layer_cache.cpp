#include "sdw/layer_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sdw/expr_json.hpp"

namespace sdw {

namespace {

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

std::filesystem::path LayerCache::path_for(int n, int m, std::string_view stem) const {
  return dir_ / (std::string(stem) + "_n" + std::to_string(n) + "_m" + std::to_string(-m) + ".json");
}

namespace {

constexpr std::string_view kLayerOpen = R"("layer":{"rows":4,"cols":4,"entries":[)";

std::string strip_comma(std::string line) {
  if (!line.empty() && line.back() == ',') line.pop_back();
  return line;
}

}  // namespace

std::optional<MatrixExpr> LayerCache::load(int n, int m, std::uint64_t upstream_hash, std::string_view stem) const {
  const auto path = path_for(n, m, stem);
  if (!std::filesystem::exists(path)) return std::nullopt;
  auto corrupt = [&](const std::string& why) { return CacheError("corrupt cache file " + path.string() + ": " + why); };
  std::ifstream in(path);
  std::string line;
  try {
    if (!std::getline(in, line)) throw corrupt("empty file");
    // First line: {"header":{...},
    const auto header = nlohmann::json::parse(strip_comma(line) + "}").at("header");
    if (header.at("n").get<int>() != n || header.at("m").get<int>() != m) return std::nullopt;
    if (header.at("upstream_hash").get<std::string>() != hex(upstream_hash)) return std::nullopt;
    const auto expected_terms = header.at("term_count").get<std::size_t>();

    if (!std::getline(in, line) || line != kLayerOpen) throw corrupt("unexpected layout");
    MatrixExpr layer;
    std::size_t count = 0;
    for (int k = 0; k < MatrixExpr::kDim * MatrixExpr::kDim; ++k) {
      if (!std::getline(in, line) || line != "[") throw corrupt("unexpected layout");
      std::vector<Term> terms;
      while (true) {
        if (!std::getline(in, line)) throw corrupt("truncated");
        if (line == "]" || line == "],") break;
        terms.push_back(term_from_json(nlohmann::json::parse(strip_comma(line))));
      }
      count += terms.size();
      layer(k / MatrixExpr::kDim, k % MatrixExpr::kDim) = Expr::from_terms(std::move(terms));
    }
    if (!std::getline(in, line) || line != "]}}") throw corrupt("truncated");
    if (count != expected_terms || layer.term_count() != expected_terms) throw corrupt("term count mismatch");
    return layer;
  } catch (const CacheError&) {
    throw;
  } catch (const std::exception& e) {
    throw corrupt(e.what());
  }
}

void LayerCache::store(int n, int m, std::uint64_t upstream_hash, const MatrixExpr& layer,
                       std::string_view stem) const {
  std::filesystem::create_directories(dir_);
  const auto path = path_for(n, m, stem);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    const nlohmann::json header{
        {"n", n}, {"m", m}, {"term_count", layer.term_count()}, {"upstream_hash", hex(upstream_hash)}};
    out << R"({"header":)" << header.dump() << ",\n" << kLayerOpen << "\n";
    const auto& entries = layer.entries();
    for (std::size_t k = 0; k < entries.size(); ++k) {
      out << "[\n";
      const auto& terms = entries[k].terms();
      for (std::size_t t = 0; t < terms.size(); ++t)
        out << to_json(terms[t]).dump() << (t + 1 < terms.size() ? ",\n" : "\n");
      out << (k + 1 < entries.size() ? "],\n" : "]\n");
    }
    out << "]}}\n";
    if (!out) throw CacheError("cannot write cache file " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv(kCacheEnvVar); env != nullptr && *env != '\0') return env;
  return std::filesystem::current_path() / ".sdw_cache";
}

}  // namespace sdw
