#pragma once
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

// Seeded generators for synthetic object trajectory samples:
//   * community-structured time-varying networks with random phase and
//     frequency shifts of a sinusoidal edge-weight profile,
//   * the single-population network model with frequencies in {1..10},
//   * Gaussian distribution trajectories N(X1 + X2 sin(2 pi t), X3 e^{t/4}).

#include "fdyn/trajectory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fdyn {

/// Partition of `nodes` nodes (0-based) into communities.
struct CommunitySpec
{
  std::size_t                           nodes{0};
  std::vector<std::vector<std::size_t>> communities;
  std::string                           label;

  /// Community index of every node. Throws ConfigError unless the
  /// communities cover each node exactly once.
  std::vector<std::size_t> membership() const;
};

/// The three 20-node groups: five communities of four; {1..8} merged;
/// {9..20} merged.
std::vector<CommunitySpec> standard_community_groups();

/// Connectivity strength between communities j and j' at time t.
/// Intra: 0.75 + 0.20 sin(pi t). Inter: 0.20 + 0.10 sin(pi t + pi/4).
double community_weights(std::size_t j, std::size_t j_prime, double t) noexcept;
double intra_community_weight(double t) noexcept;
double inter_community_weight(double t) noexcept;

enum class PopulationMeanMethod
{
  none,
  exact,        // closed-form expectation over the phase and frequency laws
  monte_carlo,  // large-sample average under a derived seed
};

struct NetworkGenConfig
{
  std::vector<CommunitySpec> groups = standard_community_groups();
  std::size_t                subjects_per_group{50};
  TimeGrid                   grid = TimeGrid::uniform(51);
  std::uint64_t              seed{0};
  double                     intra_divisor{2.0};
  double                     inter_divisor{4.0};
  std::vector<unsigned>      inter_frequencies{5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  PopulationMeanMethod       population_mean{PopulationMeanMethod::exact};
  std::size_t                monte_carlo_subjects_per_group{20000};
};

struct NetworkSimulation
{
  ObjectTrajectorySample        sample;
  std::vector<std::size_t>      labels;  // group index per subject
  std::optional<MeanTrajectory> population_mean;
  double                        monte_carlo_standard_error{0.0};  // max over entries and t
};

NetworkSimulation generate_network_sample(NetworkGenConfig const &config);

/// Closed-form population mean trajectory of the network model, averaging
/// the groups with equal weight.
MeanTrajectory network_population_mean_exact(NetworkGenConfig const &config);

struct MonteCarloMean
{
  MeanTrajectory mean;
  double         max_standard_error{0.0};
};

MonteCarloMean network_population_mean_monte_carlo(NetworkGenConfig const &config);

struct SupplementNetworkConfig
{
  std::size_t   n{50};
  TimeGrid      grid = TimeGrid::uniform(51);
  std::uint64_t seed{0};
  CommunitySpec partition = standard_community_groups().front();
  unsigned      max_frequency{10};
};

struct SupplementNetworkSimulation
{
  ObjectTrajectorySample sample;
  MeanTrajectory         population_mean;
};

SupplementNetworkSimulation supplement_network_sample(SupplementNetworkConfig const &config);

struct GaussianTrajConfig
{
  std::size_t     n{50};
  TimeGrid        grid       = TimeGrid::uniform(51);
  ProbabilityGrid prob_grid  = ProbabilityGrid::midpoints(1000);
  std::uint64_t   seed{0};
};

struct GaussianParameters
{
  double location{0.0};   // X1
  double amplitude{0.0};  // X2
  double scale{0.0};      // X3, variance multiplier

  double mean(double t) const noexcept;
  double sd(double t) const noexcept;
};

struct GaussianSimulation
{
  ObjectTrajectorySample          sample;
  std::vector<GaussianParameters> parameters;
  MeanTrajectory                  population_mean;
  double                          population_sd_factor{0.0};  // E[sqrt(X3)]
};

GaussianSimulation generate_gaussian_distribution_sample(GaussianTrajConfig const &config);

/// Inverse standard normal CDF, absolute error well below 1e-9 on (0, 1).
double normal_quantile(double p);

/// Draw from Exp(1) truncated to [lower, upper] by inverting its CDF.
double truncated_exponential(double u, double lower, double upper) noexcept;

}  // namespace fdyn
