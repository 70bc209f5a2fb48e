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

#include "fdyn/simulation.hpp"
#include "fdyn/trajectory.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace fdyn;
using namespace fdyn::testing;

namespace {

ObjectTrajectorySample random_network_sample(Rng &rng, std::size_t n, std::size_t r,
                                             TimeGrid const &grid)
{
  std::vector<SubjectTrajectory> subjects(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    subjects[i].id = "s" + std::to_string(i);
    for (std::size_t k = 0; k < grid.size(); ++k)
    {
      subjects[i].objects.push_back(random_laplacian(rng, r));
    }
  }
  return ObjectTrajectorySample(ObjectSpaceTag{SpaceKind::network}, grid, std::move(subjects));
}

// E[sqrt(X)] for X ~ Exp(1) truncated to [a, b], by a fine midpoint rule.
double truncated_exp_mean_sqrt(double a, double b)
{
  int const    steps = 200000;
  double const h     = (b - a) / steps;
  double       sum   = 0.0;
  for (int s = 0; s < steps; ++s)
  {
    double const x = a + (s + 0.5) * h;
    sum += std::sqrt(x) * std::exp(-x);
  }
  return sum * h / (std::exp(-a) - std::exp(-b));
}

}  // namespace

TEST_CASE("time grid weights and validation")
{
  TimeGrid const g({0.0, 0.1, 0.4, 1.0});
  CHECK(g.weights() == std::vector<double>{0.05, 0.2, 0.45, 0.3});
  double sum = 0.0;
  for (double w : g.weights())
  {
    CHECK(w > 0.0);
    sum += w;
  }
  CHECK(std::abs(sum - g.span()) <= 1e-12);

  auto const u = TimeGrid::uniform(201);
  double     su = 0.0;
  for (double w : u.weights())
  {
    su += w;
  }
  CHECK(std::abs(su - 1.0) <= 1e-12);
  CHECK(u.first() == 0.0);
  CHECK(u.last() == 1.0);

  CHECK_THROWS_AS(TimeGrid({0.5}), GridError);
  CHECK_THROWS_AS(TimeGrid({0.0, 0.5, 0.5}), GridError);
  CHECK_THROWS_AS(TimeGrid({0.0, std::nan("")}), GridError);
}

TEST_CASE("sample validation")
{
  auto const     grid = TimeGrid::uniform(3);
  GraphLaplacian l(2, {1, -1, -1, 1});
  GraphLaplacian l3(3, {2, -1, -1, -1, 1, 0, -1, 0, 1});
  ObjectSpaceTag net{SpaceKind::network};

  CHECK_THROWS_AS(ObjectTrajectorySample(net, grid, {}), EmptyInputError);
  CHECK_THROWS_AS(ObjectTrajectorySample(net, grid, {{"a", "", {l, l}}}), DimensionError);
  CHECK_THROWS_AS(ObjectTrajectorySample(net, grid, {{"a", "", {l, l, l3}}}), DimensionError);
  CHECK_THROWS_AS(ObjectTrajectorySample(net, grid, {{"a", "g", {l, l, l}}, {"b", "", {l, l, l}}}),
                  ConfigError);
  CHECK_THROWS_AS(ObjectTrajectorySample(ObjectSpaceTag{SpaceKind::shape}, grid, {{"a", "", {l, l, l}}}),
                  DimensionError);

  ObjectTrajectorySample const ok(net, grid, {{"a", "g", {l, l, l}}, {"b", "h", {l, l, l}}});
  CHECK(ok.has_groups());
  CHECK(ok.slice(1).size() == 2);

  try
  {
    ObjectTrajectorySample(net, grid, {{"a", "", {l, l, l}}, {"bob", "", {l, l}}});
  }
  catch (Error const &e)
  {
    CHECK(std::string(e.what()).find("bob") != std::string::npos);
  }
}

TEST_CASE("mean trajectory of a single subject is its own trajectory")
{
  Rng        rng(21);
  auto const sample = random_network_sample(rng, 1, 4, TimeGrid::uniform(5));
  auto const mean   = frechet_mean_trajectory(sample);
  CHECK(mean.provenance == MeanProvenance::estimated);
  for (std::size_t k = 0; k < 5; ++k)
  {
    CHECK(std::get<GraphLaplacian>(mean.objects[k]) == std::get<GraphLaplacian>(sample.at(0, k)));
  }
}

TEST_CASE("network mean trajectory is the entrywise average")
{
  Rng        rng(22);
  auto const grid   = TimeGrid::uniform(7);
  auto const sample = random_network_sample(rng, 12, 5, grid);
  auto const mean   = frechet_mean_trajectory(sample);
  for (std::size_t k = 0; k < grid.size(); ++k)
  {
    std::vector<double> avg(25, 0.0);
    for (std::size_t i = 0; i < 12; ++i)
    {
      auto const &e = std::get<GraphLaplacian>(sample.at(i, k)).entries();
      for (std::size_t c = 0; c < 25; ++c)
      {
        avg[c] += e[c] / 12.0;
      }
    }
    CHECK(max_abs_diff(std::get<GraphLaplacian>(mean.objects[k]).entries(), avg) <= 1e-12);
  }
}

TEST_CASE("estimated means minimize the sample functional at every time")
{
  Rng        rng(23);
  auto const grid   = TimeGrid::uniform(4);
  auto const sample = random_network_sample(rng, 20, 4, grid);
  auto const mean   = frechet_mean_trajectory(sample);

  auto const                     probs = ProbabilityGrid::midpoints(50);
  std::vector<SubjectTrajectory> subjects(20);
  for (std::size_t i = 0; i < 20; ++i)
  {
    subjects[i].id = "d" + std::to_string(i);
    for (std::size_t k = 0; k < grid.size(); ++k)
    {
      subjects[i].objects.push_back(random_quantile(rng, probs));
    }
  }
  ObjectTrajectorySample const dists(ObjectSpaceTag{SpaceKind::distribution}, grid, subjects);
  auto const                   dmean = frechet_mean_trajectory(dists);

  for (std::size_t k = 0; k < grid.size(); ++k)
  {
    auto const slice = sample.slice(k);
    double const best = frechet_functional(slice, mean.objects[k]);
    auto const dslice = dists.slice(k);
    double const dbest = frechet_functional(dslice, dmean.objects[k]);
    auto const &mq     = std::get<QuantileDistribution>(dmean.objects[k]).values();
    for (int p = 0; p < 100; ++p)
    {
      std::vector<double> adj(16, 0.0);
      auto const &m = std::get<GraphLaplacian>(mean.objects[k]);
      for (std::size_t a = 0; a < 4; ++a)
      {
        for (std::size_t b = a + 1; b < 4; ++b)
        {
          double const w = std::max(0.0, -m(a, b) + gaussian(rng, 0.0, 0.05));
          adj[a * 4 + b] = adj[b * 4 + a] = w;
        }
      }
      CHECK(frechet_functional(slice, GraphLaplacian::from_adjacency(4, adj)) >= best - 1e-10);

      // Monotone perturbation: shift plus a nonnegative cumulative wiggle.
      std::vector<double> q = mq;
      double              shift = gaussian(rng, 0.0, 0.05);
      for (auto &v : q)
      {
        shift += uniform(rng, 0.0, 0.002);
        v += shift;
      }
      CHECK(frechet_functional(dslice, QuantileDistribution(probs, q)) >= dbest - 1e-10);
    }
  }
}

TEST_CASE("variance trajectories basic cases")
{
  Rng        rng(24);
  auto const grid = TimeGrid::uniform(4);
  auto const base = random_network_sample(rng, 1, 3, grid);
  auto       s    = base.subjects();
  s.push_back({"twin", "", s[0].objects});
  ObjectTrajectorySample const twins(base.tag(), grid, s);
  auto const                   mean = frechet_mean_trajectory(twins);
  auto const                   v    = variance_trajectories(twins, mean);
  CHECK_FALSE(v.oracle);
  for (double x : v.values.data())
  {
    CHECK(x == 0.0);
  }

  auto const other  = random_network_sample(rng, 5, 3, grid);
  auto const oracle = make_oracle_mean(base.tag(), grid, base.subjects()[0].objects);
  CHECK(oracle.provenance == MeanProvenance::supplied_oracle);
  auto const vo = variance_trajectories(base, oracle);
  CHECK(vo.oracle);
  for (double x : vo.values.data())
  {
    CHECK(x == 0.0);
  }

  auto const wrong_grid = make_oracle_mean(base.tag(), TimeGrid::uniform(4, 0.0, 2.0),
                                           base.subjects()[0].objects);
  CHECK_THROWS_AS(variance_trajectories(other, wrong_grid), GridError);
}

TEST_CASE("oracle variance of Gaussian trajectories matches the closed form")
{
  GaussianTrajConfig config;
  config.n    = 40;
  config.grid = TimeGrid::uniform(11);
  config.seed = 5;
  auto const sim = generate_gaussian_distribution_sample(config);
  auto const v   = variance_trajectories(sim.sample, sim.population_mean);
  CHECK(v.oracle);

  double const sd_factor = truncated_exp_mean_sqrt(0.25, 3.0);
  CHECK(std::abs(sim.population_sd_factor - sd_factor) <= 1e-9);

  double worst = 0.0;
  for (std::size_t i = 0; i < config.n; ++i)
  {
    auto const &par = sim.parameters[i];
    for (std::size_t k = 0; k < config.grid.size(); ++k)
    {
      double const t      = config.grid.points()[k];
      double const mu     = par.location + par.amplitude * std::sin(2.0 * std::numbers::pi * t);
      double const sigma  = std::sqrt(par.scale * std::exp(0.25 * t));
      double const sbar   = sd_factor * std::exp(t / 8.0);
      double const expect = mu * mu + (sigma - sbar) * (sigma - sbar);
      worst               = std::max(worst, std::abs(v.values(i, k) - expect));
    }
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("plug-in variance approaches the oracle variance as n grows")
{
  NetworkGenConfig config;
  config.groups          = {standard_community_groups().front()};
  config.grid            = TimeGrid::uniform(21);
  config.population_mean = PopulationMeanMethod::exact;

  for (std::uint64_t seed : {1U, 2U, 3U})
  {
    std::vector<double> gaps;
    for (std::size_t n : {25U, 50U, 100U, 200U, 400U})
    {
      config.subjects_per_group = n;
      config.seed               = seed;
      auto const sim            = generate_network_sample(config);
      auto const v              = variance_trajectories(sim.sample, frechet_mean_trajectory(sim.sample));
      auto const vs             = variance_trajectories(sim.sample, *sim.population_mean);
      double     gap            = 0.0;
      for (std::size_t k = 0; k < config.grid.size(); ++k)
      {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
          s += v.values(i, k) - vs.values(i, k);
        }
        gap = std::max(gap, std::abs(s / static_cast<double>(n)));
      }
      gaps.push_back(gap);
    }
    int inversions = 0;
    for (std::size_t j = 1; j < gaps.size(); ++j)
    {
      inversions += gaps[j] >= gaps[j - 1] ? 1 : 0;
    }
    CHECK(inversions <= 1);
  }
}
