#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bergman/config.hpp"
#include "bergman/csv.hpp"

namespace bergman {

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  int threads = 1;
  double tolerance_scale = 1.0;

  static AcceptanceOptions from_config(const ExperimentConfig& cfg);
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;
  double runtime_limit = 0.0;  // seconds, 0 when unbounded
  CsvTable table{{}};
};

constexpr int kCriterionCount = 12;

CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});

// Runs criteria 1..11 and writes criterion_NN.csv plus summary.csv into `dir`.
std::vector<CriterionResult> run_selftest(const std::filesystem::path& dir, const AcceptanceOptions& opts = {});

// Runs the selftest twice into sibling directories of `dir` and compares every file byte for byte.
CriterionResult determinism_check(const std::filesystem::path& dir, const AcceptanceOptions& opts = {});

}  // namespace bergman
