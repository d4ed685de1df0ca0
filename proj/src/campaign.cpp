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

#include "proctensor/campaign.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "proctensor/analytic.hpp"
#include "proctensor/concentration.hpp"
#include "proctensor/error.hpp"
#include "proctensor/parallel.hpp"
#include "proctensor/svg.hpp"
#include "proctensor/symgroup.hpp"

namespace proctensor::campaign {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Stats {
  double mean = 0.0, sd = 0.0, se = 0.0;
  std::size_t n = 0;
};

Stats stats_of(const std::vector<double>& v) {
  Stats s;
  s.n = v.size();
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    s.se = s.sd / std::sqrt(static_cast<double>(v.size()));
  }
  return s;
}

json stats_json(const Stats& s) { return {{"mean", s.mean}, {"sd", s.sd}, {"se", s.se}, {"n", s.n}}; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

// Mean purity used for B_k and for purity comparisons.
double analytic_purity(process::Mode mode, std::uint64_t d_e, std::uint64_t d_s,
                       std::uint64_t k, std::string* source) {
  process::ProcessSpec spec;
  spec.mode = mode;
  spec.d_e = d_e;
  spec.d_s = d_s;
  spec.k = k;
  return concentration::bound_purity(spec, source);
}

struct GridPoint {
  std::uint64_t k, d_e, samples;
  std::size_t first;  // offset into the flat task list
};

std::vector<GridPoint> make_grid(const ExperimentConfig& c) {
  std::vector<GridPoint> grid;
  std::size_t offset = 0;
  for (auto k : c.k_list) {
    for (auto d_e : c.d_e_list) {
      const auto n = c.samples ? *c.samples : auto_samples(k);
      grid.push_back({k, d_e, n, offset});
      offset += n;
    }
  }
  return grid;
}

std::vector<double> field(const std::vector<SampleRecord>& r, std::size_t from, std::size_t n,
                          double SampleRecord::*member) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = from; i < from + n; ++i) out.push_back(r[i].*member);
  return out;
}

double estimator_value(const SampleRecord& r, measures::Estimator e) {
  switch (e) {
    case measures::Estimator::kMaxMixed: return r.nm_maxmixed;
    case measures::Estimator::kMarginalProduct: return r.nm_marginal;
    case measures::Estimator::kMinOfBoth: return r.nm_min;
  }
  return r.nm_min;
}

// Non-increasing up to one inversion no larger than one standard error.
json monotone_check(const std::vector<double>& mean, const std::vector<double>& se) {
  int inversions = 0;
  bool within = true;
  for (std::size_t i = 1; i < mean.size(); ++i) {
    if (mean[i] > mean[i - 1]) {
      ++inversions;
      if (mean[i] - mean[i - 1] > std::max(se[i], se[i - 1])) within = false;
    }
  }
  return {{"inversions", inversions}, {"pass", inversions == 0 || (inversions == 1 && within)}};
}

}  // namespace

std::uint64_t auto_samples(std::uint64_t k) { return k == 0 ? 40 : 40 / k; }

haar::SeedSpec sample_seed(std::uint64_t master, Kind campaign, std::uint64_t k,
                           std::uint64_t d_e, std::uint64_t index) {
  std::uint64_t h = haar::mix64(fnv1a(to_string(campaign)));
  h = haar::mix64(h ^ k);
  h = haar::mix64(h ^ (d_e * 0x9e3779b97f4a7c15ull));
  h = haar::mix64(h ^ index);
  return {master, h};
}

SampleRecord run_sample(Kind campaign, process::Mode mode, std::uint64_t k, std::uint64_t d_s,
                        std::uint64_t d_e, std::uint64_t index, std::uint64_t master,
                        std::size_t dim_cap) {
  const auto t0 = std::chrono::steady_clock::now();
  SampleRecord r;
  r.campaign = campaign;
  r.mode = mode;
  r.k = k;
  r.d_s = d_s;
  r.d_e = d_e;
  r.index = index;
  r.seed = sample_seed(master, campaign, k, d_e, index);
  process::ProcessSpec spec{k, d_s, d_e, mode, process::InitialState::basis_zero(), r.seed, dim_cap};
  const auto choi = process::build_choi(spec);
  r.purity = linalg::purity(choi.matrix);
  const auto est = measures::nm_estimate(choi);
  r.nm_maxmixed = est.maxmixed;
  r.nm_marginal = est.marginal;
  r.nm_min = est.value;
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<SampleRecord> run_coarse_sample(process::Mode mode, std::uint64_t k, std::uint64_t d_s,
                                            std::uint64_t d_e, std::uint64_t index,
                                            std::uint64_t master, measures::Estimator estimator,
                                            std::size_t dim_cap) {
  if (k < 2) throw InvalidArgument("coarse-grain sample needs k >= 2");
  const auto t0 = std::chrono::steady_clock::now();
  const auto seed = sample_seed(master, Kind::kCoarseGrain, k, d_e, index);
  process::ProcessSpec spec{k, d_s, d_e, mode, process::InitialState::basis_zero(), seed, dim_cap};
  const auto draw = process::draw(spec);
  const auto fine = process::build_choi(spec, draw.unitaries);
  const double fine_value = measures::nm_value(fine, estimator);
  std::vector<SampleRecord> out;
  for (std::uint64_t slot = 1; slot <= k; ++slot) {
    const auto coarse = process::coarse_grain(spec, draw.unitaries, {slot});
    SampleRecord r;
    r.campaign = Kind::kCoarseGrain;
    r.mode = mode;
    r.k = k;
    r.d_s = d_s;
    r.d_e = d_e;
    r.index = index;
    r.seed = seed;
    r.purity = linalg::purity(coarse.matrix);
    const auto est = measures::nm_estimate(coarse);
    r.nm_maxmixed = est.maxmixed;
    r.nm_marginal = est.marginal;
    r.nm_min = est.value;
    r.retained_slot = slot;
    r.nm_fine = fine_value;
    out.push_back(r);
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  for (auto& r : out) r.wall_ms = ms / static_cast<double>(out.size());
  return out;
}

std::string records_csv(const std::vector<SampleRecord>& records, bool wall_time_column) {
  const bool coarse = !records.empty() && records.front().campaign == Kind::kCoarseGrain;
  std::ostringstream o;
  o << "campaign,mode,k,d_s,d_e,index,master_seed,stream_index,purity,nm_maxmixed,nm_marginal,nm_min";
  if (coarse) o << ",retained_slot,nm_fine";
  if (wall_time_column) o << ",wall_ms";
  o << '\n';
  for (const auto& r : records) {
    o << to_string(r.campaign) << ',' << process::to_string(r.mode) << ',' << r.k << ',' << r.d_s << ','
      << r.d_e << ',' << r.index << ',' << r.seed.master_seed << ',' << r.seed.stream_index << ','
      << fmt(r.purity) << ',' << fmt(r.nm_maxmixed) << ',' << fmt(r.nm_marginal) << ',' << fmt(r.nm_min);
    if (coarse) o << ',' << (r.retained_slot ? std::to_string(*r.retained_slot) : "") << ',' << fmt(r.nm_fine);
    if (wall_time_column) o << ',' << fmt(r.wall_ms);
    o << '\n';
  }
  return o.str();
}

namespace {

json summarize_sampling(const ExperimentConfig& c, const std::vector<GridPoint>& grid,
                        const std::vector<SampleRecord>& rec, std::vector<svg::Series>* plot) {
  json points = json::array();
  const double z = c.tolerance("z_sigma", 3.0);
  std::map<std::uint64_t, std::vector<std::size_t>> by_k;
  for (std::size_t g = 0; g < grid.size(); ++g) by_k[grid[g].k].push_back(g);
  std::vector<json> per_point(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto& gp = grid[g];
    const auto pur = stats_of(field(rec, gp.first, gp.samples, &SampleRecord::purity));
    const auto mm = stats_of(field(rec, gp.first, gp.samples, &SampleRecord::nm_maxmixed));
    const auto mg = stats_of(field(rec, gp.first, gp.samples, &SampleRecord::nm_marginal));
    const auto mn = stats_of(field(rec, gp.first, gp.samples, &SampleRecord::nm_min));
    const auto wall = stats_of(field(rec, gp.first, gp.samples, &SampleRecord::wall_ms));
    std::string source;
    const double p = analytic_purity(c.mode, gp.d_e, c.d_s, gp.k, &source);
    const double bk = analytic::bk_bound({gp.d_e, c.d_s, gp.k, p});
    const double zscore = pur.se > 0 ? (pur.mean - p) / pur.se : 0.0;
    per_point[g] = {{"k", gp.k},
                    {"d_e", gp.d_e},
                    {"samples", gp.samples},
                    {"purity", stats_json(pur)},
                    {"nm_maxmixed", stats_json(mm)},
                    {"nm_marginal", stats_json(mg)},
                    {"nm_min", stats_json(mn)},
                    {"analytic_purity", p},
                    {"analytic_purity_source", source},
                    {"purity_z", zscore},
                    {"purity_within_tolerance", std::abs(zscore) <= z},
                    {"bound_bk", bk},
                    {"mean_nm_maxmixed_le_bound", mm.mean <= bk},
                    {"mean_nm_min_le_bound", mn.mean <= bk},
                    {"wall_ms_mean", wall.mean}};
  }
  json series = json::array();
  bool all_bound = true, all_monotone = true;
  for (const auto& [k, idx] : by_k) {
    std::vector<double> xs, mean, se, bks, pm, pse, pa;
    for (auto g : idx) {
      xs.push_back(static_cast<double>(grid[g].d_e));
      mean.push_back(per_point[g]["nm_maxmixed"]["mean"].get<double>());
      se.push_back(per_point[g]["nm_maxmixed"]["se"].get<double>());
      bks.push_back(per_point[g]["bound_bk"].get<double>());
      pm.push_back(per_point[g]["purity"]["mean"].get<double>());
      pse.push_back(per_point[g]["purity"]["se"].get<double>());
      pa.push_back(per_point[g]["analytic_purity"].get<double>());
      all_bound = all_bound && per_point[g]["mean_nm_maxmixed_le_bound"].get<bool>();
    }
    const auto mono = monotone_check(mean, se);
    all_monotone = all_monotone && mono["pass"].get<bool>();
    series.push_back({{"k", k}, {"d_e", xs}, {"mean_nm_maxmixed", mean}, {"se", se}, {"bound_bk", bks},
                      {"monotone", mono}});
    if (plot) {
      if (c.campaign == Kind::kPurityScan) {
        plot->push_back({"k=" + std::to_string(k) + " sampled", xs, pm, pse, false, true});
        plot->push_back({"k=" + std::to_string(k) + " analytic", xs, pa, {}, true, false});
      } else {
        plot->push_back({"k=" + std::to_string(k) + " E[N]", xs, mean, se, false, true});
        plot->push_back({"k=" + std::to_string(k) + " B_k", xs, bks, {}, true, false});
      }
    }
  }
  for (auto& p : per_point) points.push_back(std::move(p));
  return {{"points", points}, {"series", series}, {"all_means_within_bound", all_bound},
          {"all_series_monotone", all_monotone}};
}

json summarize_tail(const ExperimentConfig& c, const std::vector<GridPoint>& grid,
                    const std::vector<SampleRecord>& rec, std::vector<svg::Series>* plot) {
  json reports = json::array();
  bool all = true;
  for (const auto& gp : grid) {
    std::vector<double> est;
    for (std::size_t i = gp.first; i < gp.first + gp.samples; ++i) est.push_back(estimator_value(rec[i], c.estimator));
    process::ProcessSpec spec;
    spec.k = gp.k;
    spec.d_s = c.d_s;
    spec.d_e = gp.d_e;
    spec.mode = c.mode;
    const auto r = concentration::tail_report_from_estimates(spec, est, c.eps, c.estimator);
    json w = json::array();
    for (const auto& wi : r.wilson) w.push_back({{"lower", wi.lower}, {"upper", wi.upper}, {"radius", wi.radius}});
    reports.push_back({{"k", gp.k}, {"d_e", gp.d_e}, {"samples", r.samples}, {"estimator", measures::to_string(r.estimator)},
                       {"avg_purity", r.avg_purity}, {"purity_source", r.purity_source}, {"bound_bk", r.bk},
                       {"concentration_C", r.concentration_c}, {"eps", r.eps}, {"exceed_counts", r.exceed_counts},
                       {"fractions", r.fractions}, {"analytic_tail", r.analytic}, {"wilson99", w},
                       {"pass", r.pass}, {"all_pass", r.all_pass()}});
    all = all && r.all_pass();
    if (plot) {
      const std::string tag = "k=" + std::to_string(gp.k) + ",dE=" + std::to_string(gp.d_e);
      std::vector<double> radius;
      for (const auto& wi : r.wilson) radius.push_back(wi.radius);
      plot->push_back({tag + " empirical", r.eps, r.fractions, radius, false, true});
      plot->push_back({tag + " exp(-C eps^2)", r.eps, r.analytic, {}, true, false});
    }
  }
  return {{"reports", reports}, {"all_pass", all}};
}

json summarize_coarse(const ExperimentConfig& c, const std::vector<GridPoint>& grid,
                      const std::vector<std::vector<SampleRecord>>& per_sample) {
  json points = json::array();
  std::size_t total = 0, le = 0;
  for (const auto& gp : grid) {
    std::size_t n = 0, ok = 0;
    for (std::size_t i = gp.first; i < gp.first + gp.samples; ++i) {
      for (const auto& r : per_sample[i]) {
        ++n;
        ok += estimator_value(r, c.estimator) <= r.nm_fine ? 1 : 0;
      }
    }
    total += n;
    le += ok;
    points.push_back({{"k", gp.k}, {"d_e", gp.d_e}, {"samples", gp.samples}, {"pairs", n},
                      {"fraction_coarse_le_fine", n ? static_cast<double>(ok) / static_cast<double>(n) : 1.0}});
  }
  return {{"points", points},
          {"pairs", total},
          {"fraction_coarse_le_fine", total ? static_cast<double>(le) / static_cast<double>(total) : 1.0},
          {"note", "diagnostic only: estimators are upper bounds, monotonicity is proved for the exact measure"}};
}

json run_wg_verify(const ExperimentConfig& c, std::string* csv) {
  std::ostringstream o;
  o << "n,d,cycle_type,wg_exact,wg_double,gram_oracle_equal\n";
  json rows = json::array();
  bool all = true;
  for (int n : c.wg_n) {
    for (auto d : c.d_e_list) {
      const symgroup::WeingartenTable table(n, d);
      std::map<std::size_t, bool> equal;
      const bool oracle = d >= static_cast<std::uint64_t>(n) && n <= 6;
      if (oracle) {
        const auto row = symgroup::gram_inverse_identity_row(n, d);
        const auto perms = symgroup::all_permutations(n);
        for (std::size_t p = 0; p < perms.size(); ++p) {
          const auto idx = table.class_index(symgroup::cycle_type(perms[p]));
          const bool eq = row[p] == table.by_class(idx);
          auto [it, fresh] = equal.emplace(idx, eq);
          if (!fresh) it->second = it->second && eq;
        }
      }
      for (std::size_t i = 0; i < table.classes().size(); ++i) {
        const auto& cls = table.classes()[i];
        const std::string eq = oracle ? (equal[i] ? "true" : "false") : "n/a";
        if (oracle && !equal[i]) all = false;
        o << n << ',' << d << ",\"" << cls.to_string() << "\"," << symgroup::to_string(table.by_class(i)) << ','
          << fmt(table.by_class_double(i)) << ',' << eq << '\n';
        rows.push_back({{"n", n}, {"d", d}, {"cycle_type", cls.to_string()},
                        {"wg", symgroup::to_string(table.by_class(i))}, {"wg_double", table.by_class_double(i)},
                        {"gram_oracle_equal", eq}});
      }
    }
  }
  *csv = o.str();
  return {{"rows", rows}, {"all_equal", all}};
}

}  // namespace

CampaignResult run_campaign(const ExperimentConfig& config) {
  config.validate();
  const auto dir = config.output_dir;
  std::filesystem::create_directories(dir);
  const auto stem = config.stem();
  CampaignResult res;
  res.csv_path = dir / (stem + ".csv");
  res.summary_path = dir / (stem + "_summary.json");
  res.svg_path = dir / (stem + ".svg");
  res.manifest_path = dir / (stem + ".manifest.json");
  const std::vector<std::filesystem::path> outputs{res.csv_path, res.summary_path, res.svg_path};

  // Resume safety: an interrupted run leaves status "running"; discard its
  // outputs instead of mixing them with this run.
  if (std::filesystem::exists(res.manifest_path)) {
    json old;
    try {
      std::ifstream in(res.manifest_path);
      old = json::parse(in);
    } catch (const std::exception&) {
      old = json{{"status", "corrupt"}};
    }
    if (old.value("status", "") != "complete") {
      std::cerr << "proctensor: discarding outputs of an incomplete run in " << dir.string() << '\n';
      for (const auto& p : outputs) std::filesystem::remove(p);
    }
  }
  json manifest{{"status", "running"}, {"config", to_json(config)}, {"prng", std::string(haar::kPrngAlgorithm)}};
  write_text(res.manifest_path, manifest.dump(2) + "\n");

  const auto t0 = std::chrono::steady_clock::now();
  json body;
  std::string csv;
  std::vector<svg::Series> plot;
  svg::PlotSpec ps;
  ps.log_x = config.log_x;

  if (config.campaign == Kind::kWgVerify) {
    body = run_wg_verify(config, &csv);
  } else {
    const auto grid = make_grid(config);
    const std::size_t total = grid.empty() ? 0 : grid.back().first + grid.back().samples;
    // Task t maps to (grid point, sample index) by offset.
    std::vector<std::size_t> owner(total);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      for (std::size_t i = 0; i < grid[g].samples; ++i) owner[grid[g].first + i] = g;
    }
    for (const auto& gp : grid) {
      process::ProcessSpec probe{gp.k, config.d_s, gp.d_e, config.mode, {}, {}, config.dim_cap};
      probe.validate();
    }
    if (config.campaign == Kind::kCoarseGrain) {
      std::vector<std::vector<SampleRecord>> per(total);
      parallel_for(total, config.workers, [&](std::size_t t) {
        const auto& gp = grid[owner[t]];
        per[t] = run_coarse_sample(config.mode, gp.k, config.d_s, gp.d_e, t - gp.first, config.master_seed,
                                   config.estimator, config.dim_cap);
      });
      for (auto& v : per) res.records.insert(res.records.end(), v.begin(), v.end());
      body = summarize_coarse(config, grid, per);
    } else {
      res.records.resize(total);
      parallel_for(total, config.workers, [&](std::size_t t) {
        const auto& gp = grid[owner[t]];
        res.records[t] = run_sample(config.campaign, config.mode, gp.k, config.d_s, gp.d_e, t - gp.first,
                                    config.master_seed, config.dim_cap);
      });
      if (config.campaign == Kind::kTail) {
        body = summarize_tail(config, grid, res.records, &plot);
        ps.title = "Tail of the non-Markovianity estimate";
        ps.x_label = "epsilon";
        ps.y_label = "P[N >= B_k + epsilon]";
        ps.log_x = false;
      } else {
        body = summarize_sampling(config, grid, res.records, &plot);
        ps.x_label = "d_E";
        if (config.campaign == Kind::kPurityScan) {
          ps.title = "Mean Choi-state purity";
          ps.y_label = "E[tr Y^2]";
        } else {
          ps.title = "Mean non-Markovianity, d_S=" + std::to_string(config.d_s);
          ps.y_label = "E[N]";
        }
      }
    }
    csv = records_csv(res.records, config.wall_time_column);
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  res.summary = {{"schema_version", kSummarySchemaVersion},
                 {"campaign", to_string(config.campaign)},
                 {"config", to_json(config)},
                 {"prng", std::string(haar::kPrngAlgorithm)},
                 {"d_e_grid_note", "default d_E grid is powers of two 2..32"},
                 {"initial_state", "|0>_E|0>_S"},
                 {"constant_mode_shares_initial_unitary", true},
                 {"wall_seconds", elapsed},
                 {"results", body}};
  write_text(res.csv_path, csv);
  write_text(res.summary_path, res.summary.dump(2) + "\n");
  if (config.write_svg && !plot.empty()) {
    write_text(res.svg_path, svg::render(ps, plot));
  } else {
    res.svg_path.clear();
  }
  manifest["status"] = "complete";
  json outs = json::array();
  for (const auto& p : {res.csv_path, res.summary_path, res.svg_path}) {
    if (!p.empty()) outs.push_back(p.filename().string());
  }
  manifest["outputs"] = outs;
  manifest["records"] = res.records.size();
  write_text(res.manifest_path, manifest.dump(2) + "\n");
  return res;
}

}  // namespace proctensor::campaign
