// Copyright 2026 The proctensor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Config-driven sampling campaigns with deterministic, worker-independent
// output.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "proctensor/haar.hpp"
#include "proctensor/measures.hpp"
#include "proctensor/process.hpp"

namespace proctensor::campaign {

inline constexpr int kSummarySchemaVersion = 1;

enum class Kind { kFig4, kPurityScan, kTail, kCoarseGrain, kWgVerify };
std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

struct ExperimentConfig {
  Kind campaign = Kind::kFig4;
  process::Mode mode = process::Mode::kRandom;
  std::vector<std::uint64_t> k_list{1, 2, 3};
  std::uint64_t d_s = 2;
  std::vector<std::uint64_t> d_e_list{2, 4, 8, 16, 32};
  std::optional<std::uint64_t> samples;  // nullopt: ⌊40/k⌋ (40 at k = 0)
  std::uint64_t master_seed = 20260101;
  measures::Estimator estimator = measures::Estimator::kMaxMixed;
  unsigned workers = 1;
  std::filesystem::path output_dir = "out";
  std::string prefix;  // file stem; defaults to the campaign name
  bool write_svg = true;
  bool log_x = true;
  bool wall_time_column = false;
  std::vector<double> eps{0.2, 0.315, 0.5};  // tail campaign
  std::vector<int> wg_n{1, 2, 3, 4, 5};      // wg-verify campaign
  std::size_t dim_cap = process::kDefaultDimCap;
  std::map<std::string, double> tolerances;  // e.g. "z_sigma" (default 3)

  /// Throws InvalidArgument for empty lists, workers = 0, bad dims.
  void validate() const;
  std::string stem() const { return prefix.empty() ? to_string(campaign) : prefix; }
  double tolerance(const std::string& key, double fallback) const;
};

/// JSON (de)serialization; unknown keys are rejected.
nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// ⌊40/k⌋, or 40 for k = 0.
std::uint64_t auto_samples(std::uint64_t k);

/// Seed of one sample: hash(master, campaign, k, d_E, index).
haar::SeedSpec sample_seed(std::uint64_t master, Kind campaign, std::uint64_t k,
                           std::uint64_t d_e, std::uint64_t index);

struct SampleRecord {
  Kind campaign = Kind::kFig4;
  process::Mode mode = process::Mode::kRandom;
  std::uint64_t k = 0, d_s = 2, d_e = 1, index = 0;
  haar::SeedSpec seed;
  double purity = 0.0;
  double nm_maxmixed = 0.0;
  double nm_marginal = 0.0;
  double nm_min = 0.0;
  double wall_ms = 0.0;
  // coarse-grain campaign only
  std::optional<std::uint64_t> retained_slot;
  double nm_fine = 0.0;
};

/// Builds the Choi state of one sample and fills its measures.
SampleRecord run_sample(Kind campaign, process::Mode mode, std::uint64_t k,
                        std::uint64_t d_s, std::uint64_t d_e, std::uint64_t index,
                        std::uint64_t master, std::size_t dim_cap = process::kDefaultDimCap);

/// Same-draw fine/coarse pairs for every single retained slot of one sample.
std::vector<SampleRecord> run_coarse_sample(process::Mode mode, std::uint64_t k,
                                            std::uint64_t d_s, std::uint64_t d_e,
                                            std::uint64_t index, std::uint64_t master,
                                            measures::Estimator estimator,
                                            std::size_t dim_cap = process::kDefaultDimCap);

struct CampaignResult {
  std::vector<SampleRecord> records;  // deterministic (k, d_E, index) order
  nlohmann::json summary;
  std::filesystem::path csv_path, summary_path, svg_path, manifest_path;
};

/// Computes every record (in parallel), then writes CSV, JSON summary,
/// optional SVG and a manifest. A manifest left in state "running" by an
/// interrupted run causes stale outputs to be discarded first.
CampaignResult run_campaign(const ExperimentConfig& config);

/// CSV text for records (header + one row per record).
std::string records_csv(const std::vector<SampleRecord>& records, bool wall_time_column);

}  // namespace proctensor::campaign
