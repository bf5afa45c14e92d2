// Copyright 2026 The cpe Authors
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

#include "cpe/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cpe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAllocationFloor = 1e-12;

bool Differs(double a, double b) {
  return std::abs(a - b) > kCoordinateTolerance;
}

void CheckInputs(const ActionSet& actions, std::span<const double> mu) {
  Require(!actions.empty(), "action set is empty");
  Require(actions.dim() == mu.size(),
          "mean vector length does not match action dimension");
  for (double m : mu) Require(std::isfinite(m), "means must be finite");
}

std::size_t BestIndex(const ActionSet& actions, std::span<const double> mu) {
  CheckInputs(actions, mu);
  std::size_t best = 0;
  double best_value = actions[0].Dot(mu);
  for (std::size_t i = 1; i < actions.size(); ++i) {
    const double v = actions[i].Dot(mu);
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  const double tie_tol = 1e-9 * std::max(1.0, std::abs(best_value));
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i != best && best_value - actions[i].Dot(mu) <= tie_tol) {
      Fail(ErrorKind::kNonUniqueOptimum,
           "best action is not unique: " + actions[best].ToString() + " and " +
               actions[i].ToString() + " tie");
    }
  }
  return best;
}

// Constraint coefficients a[pi][s] = |pi*_s - pi_s|^2 / gap(pi)^2 for every
// pi != pi*.
std::vector<Vector> ConstraintCoefficients(const ActionSet& actions,
                                           std::span<const double> mu,
                                           std::size_t best) {
  const Action& star = actions[best];
  const double star_value = star.Dot(mu);
  std::vector<Vector> a;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i == best) continue;
    const double gap = star_value - actions[i].Dot(mu);
    Vector row(actions.dim(), 0.0);
    for (std::size_t s = 0; s < actions.dim(); ++s) {
      if (!Differs(star[s], actions[i][s])) continue;
      const double diff = star[s] - actions[i][s];
      row[s] = diff * diff / (gap * gap);
    }
    a.push_back(std::move(row));
  }
  return a;
}

}  // namespace

Action BestAction(const ActionSet& actions, std::span<const double> mu) {
  return actions[BestIndex(actions, mu)];
}

GGap ComputeGGap(const ActionSet& actions, std::span<const double> mu,
                 std::size_t s) {
  const std::size_t best = BestIndex(actions, mu);
  if (s >= actions.dim()) {
    Fail(ErrorKind::kIndex, "arm index " + std::to_string(s) + " out of range");
  }
  const Action& star = actions[best];
  const double star_value = star.Dot(mu);
  std::optional<GGap> out;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i == best || !Differs(star[s], actions[i][s])) continue;
    const double ratio =
        (star_value - actions[i].Dot(mu)) / std::abs(star[s] - actions[i][s]);
    if (!out || ratio < out->gap) out = GGap{ratio, actions[i]};
  }
  if (!out) {
    Fail(ErrorKind::kUndefinedGap, "no action differs from the best action at arm " +
                                       std::to_string(s));
  }
  return *out;
}

HardnessReport ComputeHardnessMeasures(const ActionSet& actions,
                                       std::span<const double> mu) {
  const std::size_t best = BestIndex(actions, mu);
  Require(actions.size() >= 2, "hardness needs at least two actions");
  const std::size_t d = actions.dim();
  const std::size_t n = actions.size();
  const Action& star = actions[best];
  const double star_value = star.Dot(mu);

  HardnessReport r;
  r.best_action = star;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != best) {
      r.pairwise_gaps.emplace_back(actions[i], star_value - actions[i].Dot(mu));
    }
  }

  for (std::size_t s = 0; s < d; ++s) {
    GGap g = ComputeGGap(actions, mu, s);
    r.H += 1.0 / (g.gap * g.gap);
    r.g_gaps.push_back(g.gap);
    r.gap_actions.push_back(std::move(g.action));

    double cpe_gap = kInf;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != best && Differs(star[s], actions[i][s])) {
        cpe_gap = std::min(cpe_gap, star_value - actions[i].Dot(mu));
      }
    }
    r.cpe_gaps.push_back(cpe_gap);
    if (std::isfinite(cpe_gap)) r.H_prime += 1.0 / (cpe_gap * cpe_gap);
  }

  // Squared and plain L1 distances between every pair of actions.
  std::vector<Vector> sq(n, Vector(n, 0.0)), l1(n, Vector(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t e = 0; e < d; ++e) {
        const double diff = std::abs(actions[i][e] - actions[j][e]);
        sq[i][j] += diff * diff;
        l1[i][j] += diff;
      }
      r.width = std::max(r.width, l1[i][j]);
    }
  }

  r.U.assign(d, 0.0);
  r.V.assign(d, 0.0);
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!Differs(star[s], actions[i][s])) continue;
      const double denom = (star[s] - actions[i][s]) * (star[s] - actions[i][s]);
      for (std::size_t j = 0; j < n; ++j) {
        r.U[s] = std::max(r.U[s], sq[i][j] / denom);
        r.V[s] = std::max(
            r.V[s], std::abs(actions[i][s] - actions[j][s]) * l1[i][j] / denom);
      }
    }
    const double g2 = r.g_gaps[s] * r.g_gaps[s];
    r.H_N += r.U[s] / g2;
    r.H_R += r.V[s] / g2;
  }
  return r;
}

LowerBound ComputeLowerBound(const ActionSet& actions,
                             std::span<const double> mu,
                             const LowerBoundOptions& options) {
  const std::size_t best = BestIndex(actions, mu);
  Require(actions.size() >= 2, "lower bound needs at least two actions");
  Require(options.tol > 0.0, "lower bound tolerance must be positive");
  const std::size_t d = actions.dim();
  const std::vector<Vector> a = ConstraintCoefficients(actions, mu, best);
  const std::size_t k = a.size();

  // Max player: weights w over constraints. Min player best-responds with
  // lambda_s proportional to sqrt(b_s), b = sum_pi w_pi a_pi, which gives the
  // dual value (sum_s sqrt(b_s))^2. Constraints are reweighted by their
  // violation ratio f_pi(lambda) / dual.
  Vector w(k, 1.0 / static_cast<double>(k));
  Vector b(d), lambda(d), f(k);
  LowerBound out;
  out.low_a = kInf;
  for (int it = 1; it <= options.max_iterations; ++it) {
    std::fill(b.begin(), b.end(), 0.0);
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t s = 0; s < d; ++s) b[s] += w[p] * a[p][s];
    }
    double root_sum = 0.0;
    for (std::size_t s = 0; s < d; ++s) root_sum += std::sqrt(b[s]);
    const double dual = root_sum * root_sum;
    double total = 0.0;
    for (std::size_t s = 0; s < d; ++s) {
      lambda[s] = std::max(std::sqrt(b[s]) / root_sum, kAllocationFloor);
      total += lambda[s];
    }
    for (double& l : lambda) l /= total;

    double primal = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      f[p] = 0.0;
      for (std::size_t s = 0; s < d; ++s) {
        if (a[p][s] > 0.0) f[p] += a[p][s] / lambda[s];
      }
      primal = std::max(primal, f[p]);
    }

    out.iterations = it;
    if (dual > out.rho_star) {
      out.rho_star = dual;
      out.constraint_weights = w;
    }
    if (primal < out.low_a) {
      out.low_a = primal;
      out.allocation = lambda;
    }
    if (out.low_a - out.rho_star <= options.tol * out.rho_star) {
      out.converged = true;
      break;
    }

    double norm = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      w[p] *= f[p] / dual;
      norm += w[p];
    }
    for (double& x : w) x /= norm;
  }

  out.tau.resize(d);
  for (std::size_t s = 0; s < d; ++s) out.tau[s] = out.low_a * out.allocation[s];
  if (!out.converged) {
    throw ConvergenceError(
        "allocation lower bound did not reach relative gap " +
            std::to_string(options.tol) + " in " +
            std::to_string(options.max_iterations) + " iterations",
        out);
  }
  return out;
}

double RelaxedLowerBound(const ActionSet& actions, std::span<const double> mu) {
  // Each constraint max_s |pi*_s - pi_s|^2 / tau_s <= gap^2 splits into one
  // bound per arm, tau_s >= max_pi |pi*_s - pi_s|^2 / gap^2 = D(s)^-2.
  double total = 0.0;
  for (std::size_t s = 0; s < actions.dim(); ++s) {
    const double g = ComputeGGap(actions, mu, s).gap;
    total += 1.0 / (g * g);
  }
  return total;
}

double ExplicitSampleComplexityBound(double hardness, double delta) {
  Require(delta > 0.0 && delta < 0.25, "delta must lie in (0, 1/4)");
  return hardness * std::log(1.0 / (4.0 * delta)) / 16.0;
}

HardnessReport AnalyzeHardness(const ActionSet& actions,
                               std::span<const double> mu,
                               const LowerBoundOptions& options) {
  HardnessReport r = ComputeHardnessMeasures(actions, mu);
  r.lower_bound = ComputeLowerBound(actions, mu, options);
  return r;
}

nlohmann::json ToJson(const HardnessReport& r) {
  using nlohmann::json;
  json doc;
  doc["best_action"] = r.best_action.coords();
  json gap_actions = json::array();
  for (const auto& a : r.gap_actions) gap_actions.push_back(a.coords());
  doc["gap_actions"] = gap_actions;
  doc["g_gaps"] = r.g_gaps;
  doc["H"] = r.H;
  json cpe = json::array();
  for (double g : r.cpe_gaps) {
    cpe.push_back(std::isfinite(g) ? json(g) : json(nullptr));
  }
  doc["cpe_gaps"] = cpe;
  doc["H_prime"] = r.H_prime;
  doc["U"] = r.U;
  doc["V"] = r.V;
  doc["H_N"] = r.H_N;
  doc["H_R"] = r.H_R;
  doc["width"] = r.width;
  if (r.lower_bound) {
    doc["low_A"] = r.lower_bound->low_a;
    doc["rho_star"] = r.lower_bound->rho_star;
    doc["allocation"] = r.lower_bound->allocation;
    doc["tau"] = r.lower_bound->tau;
  }
  json pairs = json::array();
  for (const auto& [a, g] : r.pairwise_gaps) {
    pairs.push_back({{"action", a.coords()}, {"gap", g}});
  }
  doc["pairwise_gaps"] = pairs;
  return doc;
}

}  // namespace cpe
