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

#include "fdyn/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fdyn {

namespace {

constexpr double kPi = std::numbers::pi;

// Offset applied to the user seed for the population Monte Carlo draws.
constexpr std::uint64_t kPopulationSeedSalt = 0x5DEECE66DULL;

// Exp(1) truncation bounds for the variance multiplier X3.
constexpr double kScaleLower = 0.25;
constexpr double kScaleUpper = 3.0;

}  // namespace

std::vector<std::size_t> CommunitySpec::membership() const
{
  if (nodes == 0)
  {
    throw ConfigError("community partition '" + label + "' has no nodes");
  }
  std::vector<std::size_t> member(nodes, nodes);
  for (std::size_t c = 0; c < communities.size(); ++c)
  {
    for (std::size_t node : communities[c])
    {
      if (node >= nodes)
      {
        throw ConfigError("community partition '" + label + "': node " + std::to_string(node + 1) +
                          " exceeds the node count " + std::to_string(nodes));
      }
      if (member[node] != nodes)
      {
        throw ConfigError("community partition '" + label + "': node " + std::to_string(node + 1) +
                          " appears in more than one community");
      }
      member[node] = c;
    }
  }
  for (std::size_t node = 0; node < nodes; ++node)
  {
    if (member[node] == nodes)
    {
      throw ConfigError("community partition '" + label + "': node " + std::to_string(node + 1) +
                        " is not assigned to a community");
    }
  }
  return member;
}

std::vector<CommunitySpec> standard_community_groups()
{
  auto range = [](std::size_t first, std::size_t last) {
    std::vector<std::size_t> out;
    for (std::size_t v = first; v <= last; ++v)
    {
      out.push_back(v - 1);
    }
    return out;
  };
  return {
      CommunitySpec{20, {range(1, 4), range(5, 8), range(9, 12), range(13, 16), range(17, 20)}, "1"},
      CommunitySpec{20, {range(1, 8), range(9, 12), range(13, 16), range(17, 20)}, "2"},
      CommunitySpec{20, {range(1, 4), range(5, 8), range(9, 20)}, "3"},
  };
}

double intra_community_weight(double t) noexcept
{
  return 0.75 + 0.20 * std::sin(kPi * t);
}

double inter_community_weight(double t) noexcept
{
  return 0.20 + 0.10 * std::sin(kPi * t + kPi / 4.0);
}

double community_weights(std::size_t j, std::size_t j_prime, double t) noexcept
{
  return j == j_prime ? intra_community_weight(t) : inter_community_weight(t);
}

namespace {

void validate(NetworkGenConfig const &config)
{
  if (config.groups.empty())
  {
    throw ConfigError("network generator needs at least one group");
  }
  std::size_t const r = config.groups.front().nodes;
  for (auto const &g : config.groups)
  {
    (void)g.membership();
    if (g.nodes != r)
    {
      throw ConfigError("all groups must have the same node count");
    }
  }
  if (!(config.intra_divisor > 0.0) || !(config.inter_divisor > 0.0))
  {
    throw ConfigError("edge weight divisors must be positive");
  }
  if (config.inter_frequencies.empty())
  {
    throw ConfigError("inter-community frequency set is empty");
  }
  if (config.subjects_per_group == 0)
  {
    throw ConfigError("subjects per group must be at least 1");
  }
}

// Random phase and frequency of one node pair.
struct EdgeDraw
{
  double   phase;
  unsigned frequency;
  bool     intra;
};

template <typename FrequencyFn>
std::vector<EdgeDraw> draw_edges(Xoshiro256ss &rng, std::vector<std::size_t> const &member,
                                 FrequencyFn &&frequency)
{
  std::size_t const     r = member.size();
  std::vector<EdgeDraw> edges;
  edges.reserve(r * (r - 1) / 2);
  for (std::size_t k = 0; k < r; ++k)
  {
    for (std::size_t l = k + 1; l < r; ++l)
    {
      bool const intra = member[k] == member[l];
      double const u   = rng.uniform();
      edges.push_back({u, frequency(rng, intra), intra});
    }
  }
  return edges;
}

// Adjacency at time t, zero diagonal, evaluated pair by pair.
template <typename WeightFn>
void fill_adjacency(std::vector<EdgeDraw> const &edges, std::size_t r, double t, WeightFn &&weight,
                    std::vector<double> &adj)
{
  std::fill(adj.begin(), adj.end(), 0.0);
  std::size_t e = 0;
  for (std::size_t k = 0; k < r; ++k)
  {
    for (std::size_t l = k + 1; l < r; ++l, ++e)
    {
      auto const  &d = edges[e];
      double const a = weight(k, l, d.intra, t) *
                       (1.0 + std::sin(kPi * (t + d.phase) * static_cast<double>(d.frequency)));
      adj[k * r + l] = a;
      adj[l * r + k] = a;
    }
  }
}

// E_U[sin(pi v (t + U))] for U ~ U(0,1) and integer v.
double expected_sine(unsigned v, double t) noexcept
{
  if (v % 2U == 0U)
  {
    return 0.0;
  }
  double const vf = static_cast<double>(v);
  return 2.0 * std::cos(kPi * vf * t) / (kPi * vf);
}

std::string subject_id(std::string const &group_label, std::size_t i)
{
  return "g" + group_label + "_s" + std::to_string(i + 1);
}

}  // namespace

NetworkSimulation generate_network_sample(NetworkGenConfig const &config)
{
  validate(config);
  std::size_t const r = config.groups.front().nodes;
  std::size_t const m = config.grid.size();
  auto const       &t = config.grid.points();
  auto const   nfreq = static_cast<std::uint64_t>(config.inter_frequencies.size());

  std::vector<SubjectTrajectory> subjects;
  std::vector<std::size_t>       labels;
  subjects.reserve(config.groups.size() * config.subjects_per_group);
  std::vector<double> adj(r * r);
  for (std::size_t g = 0; g < config.groups.size(); ++g)
  {
    auto const member = config.groups[g].membership();
    for (std::size_t i = 0; i < config.subjects_per_group; ++i)
    {
      auto rng   = substream(config.seed, g, i);
      auto edges = draw_edges(rng, member, [&](Xoshiro256ss &gen, bool intra) -> unsigned {
        return intra ? 1U : config.inter_frequencies[gen.bounded(nfreq)];
      });
      SubjectTrajectory subject{subject_id(config.groups[g].label, i), config.groups[g].label, {}};
      subject.objects.reserve(m);
      for (std::size_t k = 0; k < m; ++k)
      {
        fill_adjacency(
            edges, r, t[k],
            [&](std::size_t, std::size_t, bool intra, double time) {
              return intra ? intra_community_weight(time) / config.intra_divisor
                           : inter_community_weight(time) / config.inter_divisor;
            },
            adj);
        subject.objects.emplace_back(GraphLaplacian::from_adjacency(r, adj));
      }
      subjects.push_back(std::move(subject));
      labels.push_back(g);
    }
  }

  NetworkSimulation out{
      ObjectTrajectorySample({SpaceKind::network}, config.grid, std::move(subjects)),
      std::move(labels), std::nullopt, 0.0};
  if (config.population_mean == PopulationMeanMethod::exact)
  {
    out.population_mean = network_population_mean_exact(config);
  }
  else if (config.population_mean == PopulationMeanMethod::monte_carlo)
  {
    auto mc                        = network_population_mean_monte_carlo(config);
    out.population_mean            = std::move(mc.mean);
    out.monte_carlo_standard_error = mc.max_standard_error;
  }
  return out;
}

MeanTrajectory network_population_mean_exact(NetworkGenConfig const &config)
{
  validate(config);
  std::size_t const r = config.groups.front().nodes;
  auto const       &t = config.grid.points();
  double const      G = static_cast<double>(config.groups.size());

  std::vector<std::vector<std::size_t>> members;
  for (auto const &g : config.groups)
  {
    members.push_back(g.membership());
  }

  std::vector<Object> objects;
  std::vector<double> adj(r * r);
  for (double time : t)
  {
    double inter_profile = 0.0;
    for (unsigned v : config.inter_frequencies)
    {
      inter_profile += expected_sine(v, time);
    }
    inter_profile /= static_cast<double>(config.inter_frequencies.size());
    double const intra_edge =
        intra_community_weight(time) * (1.0 + expected_sine(1U, time)) / config.intra_divisor;
    double const inter_edge =
        inter_community_weight(time) * (1.0 + inter_profile) / config.inter_divisor;

    std::fill(adj.begin(), adj.end(), 0.0);
    for (std::size_t k = 0; k < r; ++k)
    {
      for (std::size_t l = k + 1; l < r; ++l)
      {
        double s = 0.0;
        for (auto const &member : members)
        {
          s += member[k] == member[l] ? intra_edge : inter_edge;
        }
        adj[k * r + l] = s / G;
        adj[l * r + k] = s / G;
      }
    }
    objects.emplace_back(GraphLaplacian::from_adjacency(r, adj));
  }
  return make_oracle_mean({SpaceKind::network}, config.grid, std::move(objects));
}

MonteCarloMean network_population_mean_monte_carlo(NetworkGenConfig const &config)
{
  validate(config);
  std::size_t const r      = config.groups.front().nodes;
  std::size_t const m      = config.grid.size();
  std::size_t const N      = config.monte_carlo_subjects_per_group;
  auto const       &t      = config.grid.points();
  auto const        nfreq  = static_cast<std::uint64_t>(config.inter_frequencies.size());
  std::uint64_t const seed = config.seed ^ kPopulationSeedSalt;
  double const      G      = static_cast<double>(config.groups.size());
  if (N < 2)
  {
    throw ConfigError("Monte Carlo population mean needs at least 2 subjects per group");
  }

  std::size_t const   pairs = r * (r - 1) / 2;
  std::vector<double> mean(m * pairs, 0.0);
  std::vector<double> var_of_mean(m * pairs, 0.0);
  std::vector<double> sum(m * pairs), sum2(m * pairs);
  for (std::size_t g = 0; g < config.groups.size(); ++g)
  {
    auto const member = config.groups[g].membership();
    std::fill(sum.begin(), sum.end(), 0.0);
    std::fill(sum2.begin(), sum2.end(), 0.0);
    for (std::size_t i = 0; i < N; ++i)
    {
      auto rng   = substream(seed, g, i);
      auto edges = draw_edges(rng, member, [&](Xoshiro256ss &gen, bool intra) -> unsigned {
        return intra ? 1U : config.inter_frequencies[gen.bounded(nfreq)];
      });
      for (std::size_t k = 0; k < m; ++k)
      {
        double const wi = intra_community_weight(t[k]) / config.intra_divisor;
        double const wo = inter_community_weight(t[k]) / config.inter_divisor;
        for (std::size_t e = 0; e < pairs; ++e)
        {
          auto const  &d = edges[e];
          double const a = (d.intra ? wi : wo) *
                           (1.0 + std::sin(kPi * (t[k] + d.phase) * static_cast<double>(d.frequency)));
          sum[k * pairs + e] += a;
          sum2[k * pairs + e] += a * a;
        }
      }
    }
    double const Nf = static_cast<double>(N);
    for (std::size_t q = 0; q < sum.size(); ++q)
    {
      double const mu  = sum[q] / Nf;
      double const var = std::max(sum2[q] / Nf - mu * mu, 0.0) * Nf / (Nf - 1.0);
      mean[q] += mu / G;
      var_of_mean[q] += var / Nf / (G * G);
    }
  }

  // Laplacian diagonal entries are sums of r - 1 edges; their standard error
  // is bounded by (r - 1) times the largest edge standard error.
  double max_se = 0.0;
  for (double v : var_of_mean)
  {
    max_se = std::max(max_se, std::sqrt(v));
  }

  std::vector<Object> objects;
  std::vector<double> adj(r * r);
  for (std::size_t k = 0; k < m; ++k)
  {
    std::fill(adj.begin(), adj.end(), 0.0);
    std::size_t e = 0;
    for (std::size_t a = 0; a < r; ++a)
    {
      for (std::size_t b = a + 1; b < r; ++b, ++e)
      {
        adj[a * r + b] = mean[k * pairs + e];
        adj[b * r + a] = mean[k * pairs + e];
      }
    }
    objects.emplace_back(GraphLaplacian::from_adjacency(r, adj));
  }
  return {make_oracle_mean({SpaceKind::network}, config.grid, std::move(objects)), max_se};
}

SupplementNetworkSimulation supplement_network_sample(SupplementNetworkConfig const &config)
{
  if (config.n == 0)
  {
    throw ConfigError("supplement network sample needs n >= 1");
  }
  if (config.max_frequency == 0)
  {
    throw ConfigError("maximum frequency must be at least 1");
  }
  auto const        member = config.partition.membership();
  std::size_t const r      = config.partition.nodes;
  std::size_t const m      = config.grid.size();
  auto const       &t      = config.grid.points();

  auto weight = [&](std::size_t k, std::size_t l, bool, double time) {
    return community_weights(member[k], member[l], time) / 2.0;
  };

  std::vector<SubjectTrajectory> subjects;
  std::vector<double>            adj(r * r);
  for (std::size_t i = 0; i < config.n; ++i)
  {
    auto rng   = substream(config.seed, 0, i);
    auto edges = draw_edges(rng, member, [&](Xoshiro256ss &gen, bool) -> unsigned {
      return 1U + static_cast<unsigned>(gen.bounded(config.max_frequency));
    });
    SubjectTrajectory subject{"s" + std::to_string(i + 1), "", {}};
    for (std::size_t k = 0; k < m; ++k)
    {
      fill_adjacency(edges, r, t[k], weight, adj);
      subject.objects.emplace_back(GraphLaplacian::from_adjacency(r, adj));
    }
    subjects.push_back(std::move(subject));
  }

  std::vector<Object> mean_objects;
  for (double time : t)
  {
    double profile = 0.0;
    for (unsigned v = 1; v <= config.max_frequency; ++v)
    {
      profile += expected_sine(v, time);
    }
    profile /= static_cast<double>(config.max_frequency);
    std::fill(adj.begin(), adj.end(), 0.0);
    for (std::size_t k = 0; k < r; ++k)
    {
      for (std::size_t l = k + 1; l < r; ++l)
      {
        double const a = weight(k, l, true, time) * (1.0 + profile);
        adj[k * r + l] = a;
        adj[l * r + k] = a;
      }
    }
    mean_objects.emplace_back(GraphLaplacian::from_adjacency(r, adj));
  }

  return {ObjectTrajectorySample({SpaceKind::network}, config.grid, std::move(subjects)),
          make_oracle_mean({SpaceKind::network}, config.grid, std::move(mean_objects))};
}

// --- Gaussian distribution trajectories --------------------------------------

double GaussianParameters::mean(double t) const noexcept
{
  return location + amplitude * std::sin(2.0 * kPi * t);
}

double GaussianParameters::sd(double t) const noexcept
{
  return std::sqrt(scale * std::exp(0.25 * t));
}

double truncated_exponential(double u, double lower, double upper) noexcept
{
  double const a = std::exp(-lower);
  double const b = std::exp(-upper);
  return std::clamp(-std::log(a - u * (a - b)), lower, upper);
}

double normal_quantile(double p)
{
  if (!(p > 0.0 && p < 1.0))
  {
    throw ParameterError("normal quantile needs p in (0, 1)");
  }
  if (p > 0.5)
  {
    return -normal_quantile(1.0 - p);
  }
  // Rational approximation (Acklam), refined by one Halley step.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x = 0.0;
  if (p < p_low)
  {
    double const q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  else if (p <= 1.0 - p_low)
  {
    double const q = p - 0.5;
    double const r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  else
  {
    double const q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double const e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  double const u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

namespace {

// E[sqrt(X3)] for X3 ~ Exp(1) truncated to [lower, upper], composite Simpson.
double truncated_exponential_sqrt_mean(double lower, double upper)
{
  constexpr int intervals = 4000;
  double const  h         = (upper - lower) / intervals;
  auto          f         = [](double x) { return std::sqrt(x) * std::exp(-x); };
  double        s         = f(lower) + f(upper);
  for (int i = 1; i < intervals; ++i)
  {
    s += (i % 2 == 1 ? 4.0 : 2.0) * f(lower + h * i);
  }
  return s * h / 3.0 / (std::exp(-lower) - std::exp(-upper));
}

}  // namespace

GaussianSimulation generate_gaussian_distribution_sample(GaussianTrajConfig const &config)
{
  if (config.n == 0)
  {
    throw ConfigError("Gaussian trajectory sample needs n >= 1");
  }
  auto const         &levels = config.prob_grid.levels();
  std::size_t const   M      = levels.size();
  std::vector<double> z(M);
  for (std::size_t q = 0; q < M; ++q)
  {
    z[q] = normal_quantile(levels[q]);
  }
  auto const &t = config.grid.points();

  auto quantiles = [&](double mu, double sigma) {
    std::vector<double> values(M);
    for (std::size_t q = 0; q < M; ++q)
    {
      values[q] = mu + sigma * z[q];
    }
    return QuantileDistribution(config.prob_grid, std::move(values));
  };

  std::vector<SubjectTrajectory>  subjects;
  std::vector<GaussianParameters> params;
  for (std::size_t i = 0; i < config.n; ++i)
  {
    auto rng = substream(config.seed, 0, i);
    GaussianParameters p;
    p.location  = 2.0 * rng.uniform() - 1.0;
    p.amplitude = 2.0 * rng.uniform() - 1.0;
    p.scale     = truncated_exponential(rng.uniform(), kScaleLower, kScaleUpper);
    SubjectTrajectory subject{"s" + std::to_string(i + 1), "", {}};
    for (double time : t)
    {
      subject.objects.emplace_back(quantiles(p.mean(time), p.sd(time)));
    }
    subjects.push_back(std::move(subject));
    params.push_back(p);
  }

  // E[mu(t)] = 0 and E[sigma(t)] = E[sqrt(X3)] e^{t/8}; the Frechet mean in
  // the quantile chart is the average quantile function.
  double const        sd_factor = truncated_exponential_sqrt_mean(kScaleLower, kScaleUpper);
  std::vector<Object> mean_objects;
  for (double time : t)
  {
    mean_objects.emplace_back(quantiles(0.0, sd_factor * std::exp(0.125 * time)));
  }

  return {ObjectTrajectorySample({SpaceKind::distribution}, config.grid, std::move(subjects)),
          std::move(params),
          make_oracle_mean({SpaceKind::distribution}, config.grid, std::move(mean_objects)),
          sd_factor};
}

}  // namespace fdyn
