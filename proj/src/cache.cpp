#include "crescent/cache.hpp"

#include <cstdlib>

#include "crescent/errors.hpp"
#include "crescent/report.hpp"

namespace crescent {

ClassificationCache::ClassificationCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ClassificationCache::default_dir() {
  if (const char* env = std::getenv("CRESCENT_CACHE_DIR"); env && *env) return env;
  return ".crescent-cache";
}

std::filesystem::path ClassificationCache::file_for(int n) const {
  return dir_ / ("classify-" + std::string(CRESCENT_VERSION) + "-n" + std::to_string(n) + ".json");
}

std::optional<ClassificationReport> ClassificationCache::load(int n) const {
  const auto path = file_for(n);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  try {
    auto report = classification_from_json(json::parse(read_text_file(path.string())));
    if (report.n != n) return std::nullopt;
    return report;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ClassificationCache::store(const ClassificationReport& r) const {
  write_text_file(file_for(r.n).string(), dump(to_json(r)));
}

ClassificationReport classify_cached(int n, const PipelineOptions& options, const ClassificationCache& cache,
                                     bool* hit) {
  if (n > options.max_points && !options.allow_large) return classify_pipeline(n, options);
  if (auto cached = cache.load(n)) {
    if (hit) *hit = true;
    return std::move(*cached);
  }
  if (hit) *hit = false;
  auto report = classify_pipeline(n, options);
  cache.store(report);
  return report;
}

}  // namespace crescent
