#pragma once

#include <filesystem>
#include <optional>

#include "crescent/classify.hpp"

namespace crescent {

/// On-disk store of classification reports keyed by (tool version, n).
class ClassificationCache {
 public:
  explicit ClassificationCache(std::filesystem::path dir);

  /// $CRESCENT_CACHE_DIR, or ./.crescent-cache when unset.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(int n) const;

  /// Nothing on a miss or an unreadable entry.
  std::optional<ClassificationReport> load(int n) const;
  void store(const ClassificationReport& r) const;

 private:
  std::filesystem::path dir_;
};

/// Cached result when present, otherwise computes and stores it.
ClassificationReport classify_cached(int n, const PipelineOptions& options, const ClassificationCache& cache,
                                     bool* hit = nullptr);

}  // namespace crescent
