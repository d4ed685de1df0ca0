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

#include "proctensor/concentration.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "proctensor/analytic.hpp"
#include "proctensor/error.hpp"
#include "proctensor/parallel.hpp"

namespace proctensor {

unsigned workers_from_env(unsigned fallback) {
  const char* v = std::getenv(kWorkersEnv);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) return fallback;
  return static_cast<unsigned>(n);
}

namespace concentration {

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw InvalidArgument("wilson_interval: zero trials");
  if (successes > trials) throw InvalidArgument("wilson_interval: successes > trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double radius = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - radius), std::min(1.0, center + radius), radius};
}

bool TailReport::all_pass() const {
  for (bool p : pass) {
    if (!p) return false;
  }
  return true;
}

double bound_purity(const process::ProcessSpec& spec, std::string* source) {
  if (spec.mode == process::Mode::kConstant && spec.k <= 2) {
    if (source) *source = "time-independent";
    return symgroup::to_double(analytic::ti_avg_purity(spec.d_e, spec.d_s, spec.k));
  }
  if (source) *source = "ergodic";
  return analytic::ergodic_avg_purity(spec.d_e, spec.d_s, spec.k);
}

TailReport tail_report_from_estimates(const process::ProcessSpec& spec,
                                      std::vector<double> estimates,
                                      const std::vector<double>& eps,
                                      measures::Estimator estimator) {
  if (eps.empty()) throw InvalidArgument("tail_experiment: empty epsilon grid");
  for (std::size_t i = 1; i < eps.size(); ++i) {
    if (!(eps[i] > eps[i - 1])) throw InvalidArgument("tail_experiment: epsilon grid must be strictly increasing");
  }
  if (estimates.empty()) throw InvalidArgument("tail_experiment: no samples");
  TailReport r;
  r.mode = spec.mode;
  r.d_e = spec.d_e;
  r.d_s = spec.d_s;
  r.k = spec.k;
  r.estimator = estimator;
  r.samples = estimates.size();
  r.avg_purity = bound_purity(spec, &r.purity_source);
  r.bk = analytic::bk_bound({spec.d_e, spec.d_s, spec.k, r.avg_purity});
  r.concentration_c = analytic::concentration_C(spec.d_e, spec.d_s, spec.k, spec.mode);
  r.eps = eps;
  for (double e : eps) {
    std::size_t count = 0;
    for (double v : estimates) count += (v >= r.bk + e) ? 1 : 0;
    const auto w = wilson_interval(count, estimates.size());
    const double a = analytic::tail_bound(e, r.concentration_c);
    r.exceed_counts.push_back(count);
    r.fractions.push_back(static_cast<double>(count) / static_cast<double>(estimates.size()));
    r.analytic.push_back(a);
    r.wilson.push_back(w);
    r.pass.push_back(w.lower <= a);
  }
  r.estimates = std::move(estimates);
  return r;
}

TailReport tail_experiment(const process::ProcessSpec& spec, std::size_t samples,
                           const std::vector<double>& eps, measures::Estimator estimator,
                           unsigned workers, bool allow_small) {
  if (eps.empty()) throw InvalidArgument("tail_experiment: empty epsilon grid");
  if (samples < 100 && !allow_small) throw InvalidArgument("tail_experiment: samples must be >= 100");
  if (samples == 0) throw InvalidArgument("tail_experiment: samples must be positive");
  spec.validate();
  std::vector<double> est(samples);
  parallel_for(samples, workers, [&](std::size_t i) {
    auto s = spec;
    s.seed = haar::derive(spec.seed, i);
    est[i] = measures::nm_value(process::build_choi(s), estimator);
  });
  return tail_report_from_estimates(spec, std::move(est), eps, estimator);
}

}  // namespace concentration
}  // namespace proctensor
