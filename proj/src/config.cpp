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

#include <fstream>
#include <set>

#include "proctensor/campaign.hpp"
#include "proctensor/error.hpp"

namespace proctensor::campaign {

using nlohmann::json;

std::string to_string(Kind k) {
  switch (k) {
    case Kind::kFig4: return "fig4";
    case Kind::kPurityScan: return "purity-scan";
    case Kind::kTail: return "tail";
    case Kind::kCoarseGrain: return "coarse-grain";
    case Kind::kWgVerify: return "wg-verify";
  }
  return "fig4";
}

Kind kind_from_string(const std::string& s) {
  if (s == "fig4") return Kind::kFig4;
  if (s == "purity-scan" || s == "purity") return Kind::kPurityScan;
  if (s == "tail") return Kind::kTail;
  if (s == "coarse-grain" || s == "coarse") return Kind::kCoarseGrain;
  if (s == "wg-verify" || s == "wg") return Kind::kWgVerify;
  throw InvalidArgument("unknown campaign '" + s + "'");
}

void ExperimentConfig::validate() const {
  if (campaign != Kind::kWgVerify) {
    if (k_list.empty()) throw InvalidArgument("config: k list is empty");
    if (d_e_list.empty()) throw InvalidArgument("config: d_E list is empty");
    if (d_s < 2) throw InvalidArgument("config: d_S must be >= 2");
    for (auto d : d_e_list) {
      if (d < 1) throw InvalidArgument("config: d_E values must be >= 1");
    }
  } else {
    if (wg_n.empty()) throw InvalidArgument("config: wg n list is empty");
    if (d_e_list.empty()) throw InvalidArgument("config: d list is empty");
  }
  if (workers < 1) throw InvalidArgument("config: workers must be >= 1");
  if (samples && *samples < 1) throw InvalidArgument("config: samples must be >= 1");
  if (campaign == Kind::kTail) {
    if (eps.empty()) throw InvalidArgument("config: eps grid is empty");
    for (std::size_t i = 1; i < eps.size(); ++i) {
      if (!(eps[i] > eps[i - 1])) throw InvalidArgument("config: eps grid must be strictly increasing");
    }
  }
  if (campaign == Kind::kCoarseGrain) {
    for (auto k : k_list) {
      if (k < 2) throw InvalidArgument("config: coarse-grain campaign needs k >= 2");
    }
  }
}

double ExperimentConfig::tolerance(const std::string& key, double fallback) const {
  auto it = tolerances.find(key);
  return it == tolerances.end() ? fallback : it->second;
}

json to_json(const ExperimentConfig& c) {
  json j{{"campaign", to_string(c.campaign)},
         {"mode", process::to_string(c.mode)},
         {"k", c.k_list},
         {"d_s", c.d_s},
         {"d_e", c.d_e_list},
         {"master_seed", c.master_seed},
         {"estimator", measures::to_string(c.estimator)},
         {"workers", c.workers},
         {"output", {{"dir", c.output_dir.string()},
                     {"prefix", c.prefix},
                     {"svg", c.write_svg},
                     {"log_x", c.log_x},
                     {"wall_time_column", c.wall_time_column}}},
         {"eps", c.eps},
         {"wg_n", c.wg_n},
         {"dim_cap", c.dim_cap},
         {"tolerances", c.tolerances}};
  if (c.samples) {
    j["samples"] = *c.samples;
  } else {
    j["samples"] = "auto";
  }
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  static const std::set<std::string> kKeys{"campaign", "mode", "k", "d_s", "d_e", "samples",
                                           "master_seed", "estimator", "workers", "output",
                                           "eps", "wg_n", "dim_cap", "tolerances"};
  static const std::set<std::string> kOutKeys{"dir", "prefix", "svg", "log_x", "wall_time_column"};
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.count(key)) throw InvalidArgument("config: unknown key '" + key + "'");
  }
  ExperimentConfig c;
  try {
    if (j.contains("campaign")) c.campaign = kind_from_string(j["campaign"].get<std::string>());
    if (j.contains("mode")) c.mode = process::mode_from_string(j["mode"].get<std::string>());
    if (j.contains("k")) c.k_list = j["k"].get<std::vector<std::uint64_t>>();
    if (j.contains("d_s")) c.d_s = j["d_s"].get<std::uint64_t>();
    if (j.contains("d_e")) c.d_e_list = j["d_e"].get<std::vector<std::uint64_t>>();
    if (j.contains("samples")) {
      const auto& s = j["samples"];
      if (s.is_string()) {
        if (s.get<std::string>() != "auto") throw InvalidArgument("config: samples must be a number or \"auto\"");
        c.samples.reset();
      } else {
        c.samples = s.get<std::uint64_t>();
      }
    }
    if (j.contains("master_seed")) c.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("estimator")) c.estimator = measures::estimator_from_string(j["estimator"].get<std::string>());
    if (j.contains("workers")) c.workers = j["workers"].get<unsigned>();
    if (j.contains("output")) {
      const auto& o = j["output"];
      for (const auto& [key, _] : o.items()) {
        if (!kOutKeys.count(key)) throw InvalidArgument("config: unknown key 'output." + key + "'");
      }
      if (o.contains("dir")) c.output_dir = o["dir"].get<std::string>();
      if (o.contains("prefix")) c.prefix = o["prefix"].get<std::string>();
      if (o.contains("svg")) c.write_svg = o["svg"].get<bool>();
      if (o.contains("log_x")) c.log_x = o["log_x"].get<bool>();
      if (o.contains("wall_time_column")) c.wall_time_column = o["wall_time_column"].get<bool>();
    }
    if (j.contains("eps")) c.eps = j["eps"].get<std::vector<double>>();
    if (j.contains("wg_n")) c.wg_n = j["wg_n"].get<std::vector<int>>();
    if (j.contains("dim_cap")) c.dim_cap = j["dim_cap"].get<std::size_t>();
    if (j.contains("tolerances")) c.tolerances = j["tolerances"].get<std::map<std::string, double>>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw InvalidArgument("config '" + path.string() + "': " + e.what());
  }
  return config_from_json(j);
}

}  // namespace proctensor::campaign
