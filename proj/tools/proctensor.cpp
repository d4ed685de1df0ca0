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

// proctensor: command-line front end for campaigns and closed forms.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "proctensor/analytic.hpp"
#include "proctensor/campaign.hpp"
#include "proctensor/concentration.hpp"
#include "proctensor/error.hpp"
#include "proctensor/parallel.hpp"
#include "proctensor/symgroup.hpp"

using nlohmann::json;
using namespace proctensor;

namespace {

struct CampaignFlags {
  std::string config;
  std::string mode;
  std::vector<std::uint64_t> k;
  std::uint64_t d_s = 0;
  std::vector<std::uint64_t> d_e;
  std::string samples;
  std::uint64_t seed = 0;
  std::string estimator;
  unsigned workers = 0;
  std::string out;
  std::string prefix;
  bool no_svg = false;
  bool linear_x = false;
  bool wall_time = false;
  std::vector<double> eps;
  std::vector<int> wg_n;
  std::size_t dim_cap = 0;
  std::vector<CLI::Option*> opts;
};

void add_campaign_flags(CLI::App* app, CampaignFlags& f, campaign::Kind kind) {
  auto& o = f.opts;
  o.push_back(app->add_option("--config", f.config, "JSON config file; flags override its keys"));
  o.push_back(app->add_option("--mode", f.mode, "constant | random"));
  o.push_back(app->add_option("--k", f.k, "step counts")->delimiter(','));
  o.push_back(app->add_option("--d-s", f.d_s, "system dimension"));
  o.push_back(app->add_option("--d-e", f.d_e, kind == campaign::Kind::kWgVerify ? "dimensions d" : "environment dimensions")
                  ->delimiter(','));
  o.push_back(app->add_option("--samples", f.samples, "samples per grid point, or 'auto' (floor(40/k))"));
  o.push_back(app->add_option("--seed", f.seed, "master seed"));
  o.push_back(app->add_option("--estimator", f.estimator, "maxmixed | marginal | min"));
  o.push_back(app->add_option("--workers", f.workers, std::string("worker threads (default: $") + kWorkersEnv + " or 1)"));
  o.push_back(app->add_option("--out", f.out, "output directory"));
  o.push_back(app->add_option("--prefix", f.prefix, "output file stem"));
  o.push_back(app->add_flag("--no-svg", f.no_svg, "skip the SVG figure"));
  o.push_back(app->add_flag("--linear-x", f.linear_x, "linear d_E axis"));
  o.push_back(app->add_flag("--wall-time", f.wall_time, "add a wall_ms column to the CSV"));
  o.push_back(app->add_option("--dim-cap", f.dim_cap, "maximum global vector dimension"));
  if (kind == campaign::Kind::kTail) o.push_back(app->add_option("--eps", f.eps, "epsilon grid")->delimiter(','));
  if (kind == campaign::Kind::kWgVerify) o.push_back(app->add_option("--n", f.wg_n, "symmetric group sizes")->delimiter(','));
}

bool given(const CampaignFlags& f, const std::string& name) {
  for (auto* o : f.opts) {
    if (o->check_lname(name.substr(2)) && o->count() > 0) return true;
  }
  return false;
}

campaign::ExperimentConfig build_config(const CampaignFlags& f, campaign::Kind kind) {
  campaign::ExperimentConfig c;
  if (!f.config.empty()) c = campaign::load_config(f.config);
  c.campaign = kind;
  if (kind == campaign::Kind::kPurityScan && f.config.empty()) {
    c.k_list = {0};
    c.d_e_list = {8};
    c.samples = 2000;
  }
  if (kind == campaign::Kind::kTail && f.config.empty()) {
    c.k_list = {1};
    c.d_e_list = {32};
    c.samples = 400;
  }
  if (kind == campaign::Kind::kCoarseGrain && f.config.empty()) {
    c.k_list = {2};
    c.d_e_list = {8};
    c.samples = 200;
  }
  if (kind == campaign::Kind::kWgVerify && f.config.empty()) c.d_e_list = {5, 6, 8};
  if (const unsigned env = workers_from_env(0); env > 0) c.workers = env;
  if (given(f, "--mode")) c.mode = process::mode_from_string(f.mode);
  if (given(f, "--k")) c.k_list = f.k;
  if (given(f, "--d-s")) c.d_s = f.d_s;
  if (given(f, "--d-e")) c.d_e_list = f.d_e;
  if (given(f, "--samples")) {
    if (f.samples == "auto") {
      c.samples.reset();
    } else {
      try {
        c.samples = std::stoull(f.samples);
      } catch (const std::exception&) {
        throw InvalidArgument("--samples must be a positive integer or 'auto'");
      }
    }
  }
  if (given(f, "--seed")) c.master_seed = f.seed;
  if (given(f, "--estimator")) c.estimator = measures::estimator_from_string(f.estimator);
  if (given(f, "--workers")) c.workers = f.workers;
  if (given(f, "--out")) c.output_dir = f.out;
  if (given(f, "--prefix")) c.prefix = f.prefix;
  if (f.no_svg) c.write_svg = false;
  if (f.linear_x) c.log_x = false;
  if (f.wall_time) c.wall_time_column = true;
  if (given(f, "--dim-cap")) c.dim_cap = f.dim_cap;
  if (given(f, "--eps")) c.eps = f.eps;
  if (given(f, "--n")) c.wg_n = f.wg_n;
  c.validate();
  return c;
}

int run_campaign_cmd(const CampaignFlags& f, campaign::Kind kind) {
  const auto cfg = build_config(f, kind);
  const auto res = campaign::run_campaign(cfg);
  json out{{"csv", res.csv_path.string()},
           {"summary", res.summary_path.string()},
           {"manifest", res.manifest_path.string()},
           {"records", res.records.size()},
           {"results", res.summary["results"]}};
  if (!res.svg_path.empty()) out["svg"] = res.svg_path.string();
  std::cout << out.dump(2) << '\n';
  return 0;
}

json matrix_json(const linalg::ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ri = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proctensor: Haar-random process tensors, non-Markovianity and exact averages"};
  app.require_subcommand(1);

  CampaignFlags fig4_f, tail_f, coarse_f, scan_f, wgv_f;
  auto* fig4 = app.add_subcommand("fig4", "mean non-Markovianity vs d_E against the bound B_k");
  add_campaign_flags(fig4, fig4_f, campaign::Kind::kFig4);
  auto* tail = app.add_subcommand("tail", "empirical tail probabilities against exp(-C eps^2)");
  add_campaign_flags(tail, tail_f, campaign::Kind::kTail);
  auto* coarse = app.add_subcommand("coarse", "paired fine/coarse-grained estimates");
  add_campaign_flags(coarse, coarse_f, campaign::Kind::kCoarseGrain);

  auto* purity = app.add_subcommand("purity", "average Choi-state purities");
  purity->require_subcommand(1);
  std::uint64_t p_de = 8, p_ds = 2, p_k = 1;
  bool allow_k3 = false;
  auto* p_erg = purity->add_subcommand("ergodic", "independent unitaries, closed form");
  auto* p_ti = purity->add_subcommand("ti", "one shared unitary, exact Weingarten sum");
  for (auto* s : {p_erg, p_ti}) {
    s->add_option("--d-e", p_de, "environment dimension")->required();
    s->add_option("--d-s", p_ds, "system dimension")->required();
    s->add_option("--k", p_k, "steps")->required();
  }
  p_ti->add_flag("--allow-k3", allow_k3, "run the |S8|^2 enumeration for k = 3");
  auto* p_scan = purity->add_subcommand("scan", "Monte-Carlo purity campaign");
  add_campaign_flags(p_scan, scan_f, campaign::Kind::kPurityScan);

  auto* wg = app.add_subcommand("wg", "Weingarten function");
  wg->require_subcommand(1);
  int wg_n = 2;
  std::uint64_t wg_d = 2;
  std::string wg_type;
  auto* wg_eval = wg->add_subcommand("eval", "exact Wg(cycle type, d)");
  wg_eval->add_option("--n", wg_n, "symmetric group size")->required();
  wg_eval->add_option("--d", wg_d, "unitary dimension")->required();
  wg_eval->add_option("--cycle-type", wg_type, "e.g. 2,1")->required();
  auto* wg_verify = wg->add_subcommand("verify", "character formula against the Gram-matrix inverse");
  add_campaign_flags(wg_verify, wgv_f, campaign::Kind::kWgVerify);

  auto* bound = app.add_subcommand("bound", "bound B_k and concentration constants");
  bound->require_subcommand(1);
  std::uint64_t b_de = 8, b_ds = 2, b_k = 1;
  std::optional<double> b_p;
  std::string b_mode = "random";
  auto* b_eval = bound->add_subcommand("eval", "evaluate B_k");
  b_eval->add_option("--d-e", b_de, "environment dimension")->required();
  b_eval->add_option("--d-s", b_ds, "system dimension")->required();
  b_eval->add_option("--k", b_k, "steps")->required();
  b_eval->add_option("--purity", b_p, "average purity (default: analytic value for --mode)");
  b_eval->add_option("--mode", b_mode, "constant | random");

  auto* state = app.add_subcommand("state", "average Choi states");
  state->require_subcommand(1);
  std::uint64_t s_de = 3, s_ds = 2;
  std::vector<double> s_rho;
  auto* s_ti = state->add_subcommand("avg-ti-k1", "constant-interaction mean Choi state at k = 1");
  s_ti->add_option("--d-e", s_de, "environment dimension")->required();
  s_ti->add_option("--d-s", s_ds, "system dimension")->required();
  s_ti->add_option("--rho", s_rho, "real row-major rho_S entries (default |0><0|)")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fig4) return run_campaign_cmd(fig4_f, campaign::Kind::kFig4);
    if (*tail) return run_campaign_cmd(tail_f, campaign::Kind::kTail);
    if (*coarse) return run_campaign_cmd(coarse_f, campaign::Kind::kCoarseGrain);
    if (*p_scan) return run_campaign_cmd(scan_f, campaign::Kind::kPurityScan);
    if (*wg_verify) return run_campaign_cmd(wgv_f, campaign::Kind::kWgVerify);
    if (*p_erg) {
      const auto v = analytic::ergodic_avg_purity_exact(p_de, p_ds, p_k);
      std::cout << json{{"d_e", p_de}, {"d_s", p_ds}, {"k", p_k}, {"picture", "ergodic"},
                        {"exact", symgroup::to_string(v)}, {"value", symgroup::to_double(v)}}
                       .dump(2)
                << '\n';
      return 0;
    }
    if (*p_ti) {
      analytic::TiOptions opt;
      opt.workers = workers_from_env(1);
      opt.allow_k3 = allow_k3;
      const auto v = analytic::ti_avg_purity(p_de, p_ds, p_k, opt);
      std::cout << json{{"d_e", p_de}, {"d_s", p_ds}, {"k", p_k}, {"picture", "time-independent"},
                        {"initial_state", "|0>_E|0>_S"}, {"exact", symgroup::to_string(v)},
                        {"value", symgroup::to_double(v)},
                        {"ergodic_value", analytic::ergodic_avg_purity(p_de, p_ds, p_k)}}
                       .dump(2)
                << '\n';
      return 0;
    }
    if (*wg_eval) {
      const auto t = symgroup::CycleType::parse(wg_type);
      const auto v = symgroup::weingarten(t, wg_n, wg_d);
      std::cout << json{{"n", wg_n}, {"d", wg_d}, {"cycle_type", t.to_string()},
                        {"exact", symgroup::to_string(v)}, {"value", symgroup::to_double(v)}}
                       .dump(2)
                << '\n';
      return 0;
    }
    if (*b_eval) {
      const auto mode = process::mode_from_string(b_mode);
      std::string source = "given";
      double p = 0.0;
      if (b_p) {
        p = *b_p;
      } else {
        process::ProcessSpec spec;
        spec.d_e = b_de;
        spec.d_s = b_ds;
        spec.k = b_k;
        spec.mode = mode;
        p = concentration::bound_purity(spec, &source);
      }
      const analytic::BoundInputs in{b_de, b_ds, b_k, p};
      json out{{"d_e", b_de}, {"d_s", b_ds}, {"k", b_k}, {"mode", process::to_string(mode)},
               {"avg_purity", p}, {"purity_source", source}, {"bk", analytic::bk_bound(in)},
               {"branch", static_cast<double>(b_de) < std::pow(static_cast<double>(b_ds), 2.0 * b_k + 1) ? "rank-limited" : "small-system"},
               {"lipschitz_eta", analytic::lipschitz_eta(b_ds, b_k)},
               {"concentration_C", analytic::concentration_C(b_de, b_ds, b_k, mode)},
               {"epsilon_scale", analytic::epsilon_scale(b_de)}};
      out["tail_bound_at_epsilon_scale"] =
          analytic::tail_bound(out["epsilon_scale"].get<double>(), out["concentration_C"].get<double>());
      std::cout << out.dump(2) << '\n';
      return 0;
    }
    if (*s_ti) {
      const auto d = static_cast<Eigen::Index>(s_ds);
      linalg::ComplexMatrix rho = linalg::ComplexMatrix::Zero(d, d);
      if (s_rho.empty()) {
        rho(0, 0) = 1.0;
      } else {
        if (s_rho.size() != s_ds * s_ds) throw InvalidArgument("--rho needs d_S*d_S entries");
        for (Eigen::Index i = 0; i < d * d; ++i) rho(i / d, i % d) = s_rho[static_cast<std::size_t>(i)];
      }
      const auto st = analytic::avg_state_ti_k1(s_de, s_ds, rho);
      const double ps = linalg::purity(rho);
      std::cout << json{{"d_e", s_de}, {"d_s", s_ds}, {"layout", st.layout.labels()},
                        {"trace", st.matrix.trace().real()}, {"purity", linalg::purity(st.matrix)},
                        {"purity_closed_form", analytic::purity_of_avg_state_ti_k1(s_de, s_ds, ps)},
                        {"matrix", matrix_json(st.matrix)}}
                       .dump(2)
                << '\n';
      return 0;
    }
  } catch (const CapExceeded& e) {
    std::cerr << "proctensor: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "proctensor: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
