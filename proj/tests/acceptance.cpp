//------------------------------------------------------------------------------
//
//   Copyright 2026 The fdyn Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits with
// status 1 if any criterion fails.

#include "fdyn/dynamics.hpp"
#include "fdyn/fpca.hpp"
#include "fdyn/io.hpp"
#include "fdyn/pipeline.hpp"
#include "fdyn/simulation.hpp"
#include "fdyn/trajectory.hpp"

#include "test_support.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

using namespace fdyn;
using namespace fdyn::testing;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome
{
  bool        pass;
  std::string detail;
};

std::string fmt(char const *format, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

// --- 1 -----------------------------------------------------------------------

Outcome network_mean_oracle()
{
  Rng    rng(101);
  double worst_avg = 0.0, worst_slack = 1e300;
  for (int rep = 0; rep < 20; ++rep)
  {
    std::size_t const              n = 30, r = 10, m = 21;
    auto const                     grid = TimeGrid::uniform(m);
    std::vector<SubjectTrajectory> subjects(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      subjects[i].id = "s" + std::to_string(i);
      for (std::size_t k = 0; k < m; ++k)
      {
        subjects[i].objects.emplace_back(random_laplacian(rng, r));
      }
    }
    ObjectTrajectorySample const sample({SpaceKind::network}, grid, subjects);
    auto const                   mean = frechet_mean_trajectory(sample);
    for (std::size_t k = 0; k < m; ++k)
    {
      std::vector<double> avg(r * r, 0.0);
      for (std::size_t i = 0; i < n; ++i)
      {
        auto const &e = std::get<GraphLaplacian>(sample.at(i, k)).entries();
        for (std::size_t c = 0; c < r * r; ++c)
        {
          avg[c] += e[c] / static_cast<double>(n);
        }
      }
      auto const &mk = std::get<GraphLaplacian>(mean.objects[k]);
      worst_avg      = std::max(worst_avg, max_abs_diff(mk.entries(), avg));

      auto const   slice = sample.slice(k);
      double const best  = frechet_functional(slice, mean.objects[k]);
      for (int c = 0; c < 100; ++c)
      {
        double const        scale = std::pow(10.0, uniform(rng, -4.0, -1.0));
        std::vector<double> adj(r * r, 0.0);
        for (std::size_t a = 0; a < r; ++a)
        {
          for (std::size_t b = a + 1; b < r; ++b)
          {
            adj[a * r + b] = adj[b * r + a] = std::max(0.0, -mk(a, b) + gaussian(rng, 0.0, scale));
          }
        }
        double const cand = frechet_functional(slice, GraphLaplacian::from_adjacency(r, adj));
        worst_slack       = std::min(worst_slack, cand - best);
      }
    }
  }
  return {worst_avg <= 1e-10 && worst_slack >= -1e-10,
          fmt("max |mean - average| = %.2e, min candidate margin = %.2e", worst_avg, worst_slack)};
}

// --- 2 -----------------------------------------------------------------------

Outcome gaussian_wasserstein()
{
  GaussianTrajConfig config;
  config.n         = 60;
  config.grid      = TimeGrid::uniform(51);
  config.prob_grid = ProbabilityGrid::midpoints(1000);
  config.seed      = 202;
  auto const sim   = generate_gaussian_distribution_sample(config);
  Rng        rng(202);
  double     worst = 0.0;
  for (int p = 0; p < 1000; ++p)
  {
    std::size_t const i = rng() % config.n;
    std::size_t       j = rng() % (config.n - 1);
    j += j >= i ? 1 : 0;
    std::size_t const k  = rng() % config.grid.size();
    double const      t  = config.grid.points()[k];
    auto const       &pi = sim.parameters[i];
    auto const       &pj = sim.parameters[j];
    double const      dm = pi.mean(t) - pj.mean(t);
    double const      ds = pi.sd(t) - pj.sd(t);
    double const      d  = std::sqrt(dm * dm + ds * ds);
    worst = std::max(worst, std::abs(distance(sim.sample.at(i, k), sim.sample.at(j, k)) - d) / d);
  }
  return {worst <= 1e-3, fmt("max relative error = %.2e over 1000 pairs, M = 1000", worst)};
}

// --- 3 -----------------------------------------------------------------------

Outcome fpca_analytic()
{
  std::size_t const n = 500, m = 201;
  auto const        grid = TimeGrid::uniform(m);
  Rng               rng(303);
  std::vector<double> a(n), b(n);
  Matrix              values(n, m);
  for (std::size_t i = 0; i < n; ++i)
  {
    a[i] = gaussian(rng, 0.0, 2.0);
    b[i] = gaussian(rng, 0.0, 1.0);
    for (std::size_t k = 0; k < m; ++k)
    {
      double const t = grid.points()[k];
      values(i, k)   = 1.0 + a[i] * std::numbers::sqrt2 * std::sin(2.0 * kPi * t) +
                     b[i] * std::numbers::sqrt2 * std::cos(2.0 * kPi * t);
    }
  }
  auto sample_var = [&](std::vector<double> const &x) {
    double mu = 0.0, s = 0.0;
    for (double v : x)
    {
      mu += v / static_cast<double>(n);
    }
    for (double v : x)
    {
      s += (v - mu) * (v - mu) / static_cast<double>(n);
    }
    return s;
  };
  double const va = sample_var(a), vb = sample_var(b);

  auto const fpca = run_fpca(grid, values, ComponentSelection{m, 0.95});
  if (fpca.eigenvalues.size() < 2)
  {
    return {false, "fewer than two components retained"};
  }
  double const rel1 = std::abs(fpca.eigenvalues[0] / va - 1.0);
  double const rel2 = std::abs(fpca.eigenvalues[1] / vb - 1.0);

  double phi_err = 0.0;
  for (std::size_t j = 0; j < 2; ++j)
  {
    double e_pos = 0.0, e_neg = 0.0;
    for (std::size_t k = 0; k < m; ++k)
    {
      double const t     = grid.points()[k];
      double const truth = std::numbers::sqrt2 * (j == 0 ? std::sin(2.0 * kPi * t) : std::cos(2.0 * kPi * t));
      e_pos              = std::max(e_pos, std::abs(fpca.eigenfunctions(j, k) - truth));
      e_neg              = std::max(e_neg, std::abs(fpca.eigenfunctions(j, k) + truth));
    }
    phi_err = std::max(phi_err, std::min(e_pos, e_neg));
  }

  double score_err = 0.0;
  for (std::size_t j = 0; j < fpca.scores.cols(); ++j)
  {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      col[i] = fpca.scores(i, j);
    }
    score_err = std::max(score_err, std::abs(sample_var(col) - fpca.eigenvalues[j]));
  }

  double recon = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t k = 0; k < m; ++k)
    {
      double x = fpca.nu_hat[k];
      for (std::size_t j = 0; j < fpca.scores.cols(); ++j)
      {
        x += fpca.scores(i, j) * fpca.eigenfunctions(j, k);
      }
      recon = std::max(recon, std::abs(x - values(i, k)));
    }
  }
  bool const pass = rel1 <= 0.10 && rel2 <= 0.10 && phi_err <= 0.05 && score_err <= 1e-8 && recon <= 1e-6;
  return {pass, fmt("lambda rel err %.3f/%.3f, sup phi err %.4f, score var err %.1e, recon err %.1e (J=%zu)",
                    rel1, rel2, phi_err, score_err, recon, fpca.eigenvalues.size())};
}

// --- 4 -----------------------------------------------------------------------

Outcome eigen_invariants()
{
  Rng    rng(404);
  double ortho = 0.0, trace = 0.0, raw_min = 0.0;
  int    numerical_errors = 0;
  for (int rep = 0; rep < 50; ++rep)
  {
    std::size_t const   n = 5 + rng() % 56;
    std::size_t const   m = 5 + rng() % 56;
    std::vector<double> t(m);
    double              s = 0.0;
    for (auto &x : t)
    {
      x = s;
      s += uniform(rng, 0.2, 1.0) / static_cast<double>(m);
    }
    TimeGrid const grid(t);
    Matrix         values(n, m);
    for (std::size_t i = 0; i < n; ++i)
    {
      double const amp = uniform(rng, 0.0, 1.0), phase = uniform(rng, 0.0, 6.0);
      for (std::size_t k = 0; k < m; ++k)
      {
        values(i, k) = amp * (1.0 + std::sin(5.0 * t[k] + phase)) + uniform(rng, 0.0, 0.1);
      }
    }
    VarianceMatrix const v(grid, values);
    auto const           surface = covariance_surface(v);
    EigenDecomposition   eig;
    try
    {
      eig = eigen_decompose(surface);
    }
    catch (NumericalError const &)
    {
      ++numerical_errors;
      continue;
    }
    auto const &w = grid.weights();
    for (std::size_t a = 0; a < m; ++a)
    {
      for (std::size_t b = a; b < m; ++b)
      {
        double ip = 0.0;
        for (std::size_t k = 0; k < m; ++k)
        {
          ip += w[k] * eig.eigenfunctions(a, k) * eig.eigenfunctions(b, k);
        }
        ortho = std::max(ortho, std::abs(ip - (a == b ? 1.0 : 0.0)));
      }
    }
    double sum_lambda = 0.0, quad = 0.0;
    for (double l : eig.eigenvalues)
    {
      sum_lambda += l;
    }
    for (std::size_t k = 0; k < m; ++k)
    {
      quad += w[k] * surface.values(k, k);
    }
    trace = std::max(trace, std::abs(sum_lambda - quad));

    // Independent raw spectrum of the symmetrized operator.
    Eigen::MatrixXd sym(m, m);
    for (std::size_t a = 0; a < m; ++a)
    {
      for (std::size_t b = 0; b < m; ++b)
      {
        sym(a, b) = std::sqrt(w[a] * w[b]) * surface.values(a, b);
      }
    }
    raw_min = std::min(raw_min, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym).eigenvalues().minCoeff());
  }
  bool const pass = ortho <= 1e-8 && trace <= 1e-8 && numerical_errors == 0 && raw_min >= -kEigenvalueClampWindow;
  return {pass, fmt("orthonormality dev %.1e, trace dev %.1e, min raw eigenvalue %.1e, clamp errors %d", ortho,
                    trace, raw_min, numerical_errors)};
}

// --- 5 -----------------------------------------------------------------------

Outcome dynamics_exact()
{
  std::size_t const   m = 1001;
  auto const          grid = TimeGrid::uniform(m);
  Rng                 rng(505);
  auto                nu = [](double t) { return 5.0 + std::sin(t); };
  double              beta_err = 0.0, r2_err = 0.0;
  bool                labels_ok = true;
  for (double rate : {1.0, -1.0})
  {
    std::size_t const n = 200;
    Matrix            v(n, m);
    for (std::size_t i = 0; i < n; ++i)
    {
      double const xi = uniform(rng, -1.0, 1.0);
      for (std::size_t k = 0; k < m; ++k)
      {
        v(i, k) = nu(grid.points()[k]) + xi * std::exp(rate * grid.points()[k]);
      }
    }
    auto const fit = empirical_dynamics(VarianceMatrix(grid, v), 0.0);
    for (std::size_t k = 0; k < m; ++k)
    {
      beta_err = std::max(beta_err, std::abs(fit.beta[k] - rate));
      r2_err   = std::max(r2_err, std::abs(fit.r_squared[k] - 1.0));
      labels_ok &= fit.regime[k] == (rate > 0 ? Regime::centrifugal : Regime::centripetal);
    }
  }

  // W'(t) = xi e^t observed with independent noise of variance 0.25 var(W'(t)).
  std::size_t const n = 2000;
  Matrix            v(n, m), dv(n, m);
  for (std::size_t i = 0; i < n; ++i)
  {
    double const xi = uniform(rng, -1.0, 1.0);
    for (std::size_t k = 0; k < m; ++k)
    {
      double const t   = grid.points()[k];
      double const sd  = std::sqrt(0.25 * std::exp(2.0 * t) / 3.0);
      v(i, k)          = nu(t) + xi * std::exp(t);
      dv(i, k)         = std::cos(t) + xi * std::exp(t) + gaussian(rng, 0.0, sd);
    }
  }
  std::vector<double> mv(m, 0.0), mdv(m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t k = 0; k < m; ++k)
    {
      mv[k] += v(i, k) / static_cast<double>(n);
      mdv[k] += dv(i, k) / static_cast<double>(n);
    }
  }
  auto const noisy  = dynamics_fit(grid, v, dv, mv, mdv);
  double     r2_max = 0.0;
  for (std::size_t k = 1; k + 1 < m; ++k)
  {
    r2_max = std::max(r2_max, noisy.r_squared[k]);
  }
  bool const pass = beta_err <= 1e-6 && r2_err <= 1e-6 && labels_ok && r2_max < 0.9;
  return {pass, fmt("max |beta - (+-1)| %.1e, max |R2 - 1| %.1e, labels %s, noisy max interior R2 %.3f", beta_err,
                    r2_err, labels_ok ? "ok" : "wrong", r2_max)};
}

// --- 6 -----------------------------------------------------------------------

Outcome cluster_recovery()
{
  auto const dir        = scratch_dir("acceptance_cluster");
  int        agree_ok   = 0;
  int        closer_ok  = 0;
  double     worst_rate = 1.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
  {
    SimulateConfig sim;
    sim.kind        = SimulationKind::networks;
    sim.n           = 50;
    sim.grid_points = 51;
    sim.seed        = seed;
    auto const in   = dir / ("in" + std::to_string(seed));
    simulate_to_directory(sim, in);

    PipelineConfig config;
    config.input                = in / "sample.json";
    config.output_dir           = dir / ("out" + std::to_string(seed));
    config.selection.components = 2;
    config.auto_bandwidth       = true;
    run_pipeline(config);

    auto const                    scores = parse_csv(read_file(config.output_dir / "scores.csv"));
    auto const                    labels = parse_csv(read_file(in / "labels.csv"));
    std::map<std::string, std::string> truth;
    for (auto const &row : labels.rows)
    {
      truth[row[0]] = row[1];
    }
    std::size_t const b1 = scores.header.size() - 2;
    std::map<std::string, std::array<double, 3>> acc;  // sum x, sum y, count
    std::vector<std::pair<std::string, std::array<double, 2>>> points;
    for (auto const &row : scores.rows)
    {
      std::array<double, 2> const p{parse_double(row[b1], "B_1"), parse_double(row[b1 + 1], "B_2")};
      auto const                 &g = truth.at(row[0]);
      acc[g][0] += p[0];
      acc[g][1] += p[1];
      acc[g][2] += 1.0;
      points.emplace_back(g, p);
    }
    std::map<std::string, std::array<double, 2>> centroid;
    for (auto const &[g, s] : acc)
    {
      centroid[g] = {s[0] / s[2], s[1] / s[2]};
    }
    std::size_t correct = 0;
    for (auto const &[g, p] : points)
    {
      std::string best;
      double      best_d = 1e300;
      for (auto const &[h, c] : centroid)
      {
        double const d = std::hypot(p[0] - c[0], p[1] - c[1]);
        if (d < best_d)
        {
          best_d = d;
          best   = h;
        }
      }
      correct += best == g ? 1 : 0;
    }
    double const rate = static_cast<double>(correct) / static_cast<double>(points.size());
    worst_rate        = std::min(worst_rate, rate);
    agree_ok += rate >= 0.90 ? 1 : 0;
    auto dist = [&](char const *x, char const *y) {
      return std::hypot(centroid.at(x)[0] - centroid.at(y)[0], centroid.at(x)[1] - centroid.at(y)[1]);
    };
    closer_ok += dist("1", "2") < dist("1", "3") ? 1 : 0;
    fs::remove_all(in);
    fs::remove_all(config.output_dir);
  }
  return {agree_ok >= 9 && closer_ok >= 8,
          fmt("agreement >= 0.90 in %d/10 seeds (worst %.3f), d(G1,G2) < d(G1,G3) in %d/10", agree_ok, worst_rate,
              closer_ok)};
}

// --- 7 -----------------------------------------------------------------------

Outcome convergence_rates()
{
  NetworkGenConfig config;
  config.groups          = {standard_community_groups().front()};
  config.grid            = TimeGrid::uniform(21);
  config.population_mean = PopulationMeanMethod::exact;
  int const reps         = 10;

  std::vector<double> ns_a{25, 50, 100, 200, 400}, err_a;
  for (double n : ns_a)
  {
    double total = 0.0;
    for (int rep = 0; rep < reps; ++rep)
    {
      config.subjects_per_group = static_cast<std::size_t>(n);
      config.seed               = 7000 + static_cast<std::uint64_t>(rep);
      auto const sim            = generate_network_sample(config);
      auto const mean           = frechet_mean_trajectory(sim.sample);
      double     sup            = 0.0;
      for (std::size_t k = 0; k < config.grid.size(); ++k)
      {
        sup = std::max(sup, distance(mean.objects[k], sim.population_mean->objects[k]));
      }
      total += sup / reps;
    }
    err_a.push_back(total);
  }

  std::vector<double> ns_b{50, 200, 800}, err_b;
  for (double n : ns_b)
  {
    double total = 0.0;
    for (int rep = 0; rep < reps; ++rep)
    {
      config.subjects_per_group = static_cast<std::size_t>(n);
      config.seed               = 8000 + static_cast<std::uint64_t>(rep);
      auto const sim            = generate_network_sample(config);
      auto const plug   = covariance_surface(variance_trajectories(sim.sample, frechet_mean_trajectory(sim.sample)));
      auto const oracle = covariance_surface(variance_trajectories(sim.sample, *sim.population_mean));
      total += max_abs_diff(plug.values.data(), oracle.values.data()) / reps;
    }
    err_b.push_back(total);
  }
  double const slope_a = log_log_slope(ns_a, err_a);
  double const slope_b = log_log_slope(ns_b, err_b);
  bool const   pass    = slope_a >= -0.65 && slope_a <= -0.35 && slope_b >= -0.75 && slope_b <= -0.25;
  return {pass, fmt("mean slope %.3f, covariance slope %.3f (means over %d replicates)", slope_a, slope_b, reps)};
}

// --- 8 -----------------------------------------------------------------------

Outcome determinism_round_trip()
{
  auto const dir = scratch_dir("acceptance_determinism");
  bool       ok  = true;
  std::string failed;

  SimulateConfig sim;
  sim.kind        = SimulationKind::networks;
  sim.n           = 10;
  sim.grid_points = 21;
  sim.seed        = 88;
  simulate_to_directory(sim, dir / "in");
  PipelineConfig config;
  config.input          = dir / "in" / "sample.json";
  config.auto_bandwidth = true;
  config.output_dir     = dir / "a";
  auto const report     = run_pipeline(config);
  config.output_dir     = dir / "b";
  run_pipeline(config);
  for (auto const &f : report.files)
  {
    if (read_file(f) != read_file(dir / "b" / f.filename()))
    {
      ok = false;
      failed += " " + f.filename().string();
    }
  }

  // Every manifest kind and tabular format round-trips.
  for (auto kind : {SimulationKind::networks, SimulationKind::networks_supplement, SimulationKind::gaussians})
  {
    sim.kind             = kind;
    sim.n                = 5;
    sim.prob_grid_points = 100;
    auto const out       = simulate(sim);
    auto const text      = sample_to_json(out.sample);
    auto const back      = sample_from_json(text);
    for (std::size_t i = 0; i < back.size(); ++i)
    {
      for (std::size_t k = 0; k < back.grid().size(); ++k)
      {
        ok &= back.at(i, k) == out.sample.at(i, k);
      }
    }
    ok &= sample_to_json(back) == text;
    auto const mean  = frechet_mean_trajectory(out.sample);
    auto const mback = mean_from_json(mean_to_json(mean));
    for (std::size_t k = 0; k < mean.objects.size(); ++k)
    {
      ok &= mback.objects[k] == mean.objects[k];
    }
    auto const v = variance_trajectories(out.sample, mean);
    ok &= variance_from_csv(variance_to_csv(v)).values == v.values;
    auto const d  = empirical_dynamics(v, 0.1);
    auto const dt = dynamics_to_csv(d);
    ok &= dynamics_to_csv(dynamics_from_csv(dt)) == dt;
  }
  fs::remove_all(dir);
  return {ok, ok ? fmt("%zu artifacts identical across runs, all manifests round-trip", report.files.size())
                 : "mismatch:" + failed};
}

}  // namespace

int main()
{
  struct Criterion
  {
    char const              *name;
    double                   budget_seconds;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> const criteria{
      {"network Frechet mean equals the entrywise average", 5.0, network_mean_oracle},
      {"Gaussian Wasserstein closed form", 10.0, gaussian_wasserstein},
      {"FPCA analytic rank-2 fixture", 10.0, fpca_analytic},
      {"eigen-analysis invariants", 10.0, eigen_invariants},
      {"empirical dynamics exact models", 5.0, dynamics_exact},
      {"cluster recovery on simulated networks", 60.0, cluster_recovery},
      {"convergence-rate smoke tests", 120.0, convergence_rates},
      {"determinism and round-trip", 10.0, determinism_round_trip},
  };

  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c)
  {
    auto const start = std::chrono::steady_clock::now();
    Outcome    out;
    try
    {
      out = criteria[c].run();
    }
    catch (std::exception const &e)
    {
      out = {false, std::string("exception: ") + e.what()};
    }
    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool const   pass = out.pass && secs < criteria[c].budget_seconds;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %zu: %s: %s [%.2f s, limit %.0f s]\n", pass ? "PASS" : "FAIL", c + 1,
                criteria[c].name, out.detail.c_str(), secs, criteria[c].budget_seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
