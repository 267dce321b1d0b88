#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zpf/report.hpp"

namespace zpf {

struct ClaimOptions {
  unsigned threads = 4;
  bool deterministic = false;
  std::uint64_t seed = 0;
  std::filesystem::path data_dir = ZPF_DATA_DIR;
  /// Extra Hadamard library for the conjecture probes; the bundled order-20
  /// fixture is used when absent.
  std::optional<std::filesystem::path> library;
};

struct ClaimInfo {
  int number;
  std::string id;
  std::string title;
  double limit_ms;  // wall-clock ceiling
};

const std::vector<ClaimInfo>& claims();

/// Runs one acceptance claim. The verdict is holds when every check of the
/// claim passed; the wall-clock ceiling is not part of the verdict.
VerdictReport run_claim(int number, const ClaimOptions& opts);

}  // namespace zpf
