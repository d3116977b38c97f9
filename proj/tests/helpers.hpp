#pragma once

#include <array>
#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "scalelaw/experiment.hpp"
#include "scalelaw/law.hpp"

namespace testutil {

// (N, D, L) triples to a dataset with uniform arch/xi.
inline scalelaw::ExperimentDataset make_dataset(
    const std::vector<std::array<double, 3>>& rows,
    const std::string& arch = "test", double xi = 6.0) {
  scalelaw::ExperimentDataset ds;
  for (const auto& [n, d, l] : rows) {
    scalelaw::ExperimentRecord r;
    r.arch_id = arch;
    r.model_params = n;
    r.train_tokens = d;
    r.xi = xi;
    r.test_loss = l;
    ds.records.push_back(std::move(r));
  }
  ds.source_digest = scalelaw::fnv1a_hex(scalelaw::to_csv(ds));
  return ds;
}

// Central fit coefficients used as fixtures throughout the tests.
inline scalelaw::ScalingLaw baseline_law() {
  return {1.27, 0.202, 0.0, 0.909, 0.379};
}

inline scalelaw::ScalingLaw equivariant_law() {
  return {2.82e-4, 469.0, 0.0, 0.348, 0.734};
}

// Unique scratch directory under the build tree; removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("scalelaw_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil
