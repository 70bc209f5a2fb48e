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

#include "fdyn/pipeline.hpp"

#include "fdyn/dynamics.hpp"

#include <system_error>

namespace fdyn {

OutputSet::~OutputSet()
{
  if (committed_)
  {
    return;
  }
  for (auto const &p : files_)
  {
    std::error_code ec;
    std::filesystem::remove(p, ec);
  }
}

void OutputSet::write(std::filesystem::path const &path, std::string const &content)
{
  files_.push_back(path);
  write_file(path, content);
}

SimulationKind parse_simulation_kind(std::string const &name)
{
  if (name == "networks")
  {
    return SimulationKind::networks;
  }
  if (name == "networks-supplement")
  {
    return SimulationKind::networks_supplement;
  }
  if (name == "gaussians")
  {
    return SimulationKind::gaussians;
  }
  throw ParameterError("unknown simulation kind '" + name +
                       "' (expected networks, networks-supplement or gaussians)");
}

SimulationOutput simulate(SimulateConfig const &config)
{
  if (config.n == 0)
  {
    throw ParameterError("--n must be at least 1");
  }
  if (config.grid_points < 3)
  {
    throw ParameterError("--grid must be at least 3");
  }
  TimeGrid grid = TimeGrid::uniform(config.grid_points);
  switch (config.kind)
  {
  case SimulationKind::networks: {
    NetworkGenConfig cfg;
    cfg.subjects_per_group = config.n;
    cfg.grid               = grid;
    cfg.seed               = config.seed;
    auto sim               = generate_network_sample(cfg);
    return {std::move(sim.sample), std::move(sim.population_mean)};
  }
  case SimulationKind::networks_supplement: {
    SupplementNetworkConfig cfg;
    cfg.n    = config.n;
    cfg.grid = grid;
    cfg.seed = config.seed;
    auto sim = supplement_network_sample(cfg);
    return {std::move(sim.sample), std::move(sim.population_mean)};
  }
  case SimulationKind::gaussians: {
    if (config.prob_grid_points == 0)
    {
      throw ParameterError("probability grid needs at least 1 point");
    }
    GaussianTrajConfig cfg;
    cfg.n         = config.n;
    cfg.grid      = grid;
    cfg.prob_grid = ProbabilityGrid::midpoints(config.prob_grid_points);
    cfg.seed      = config.seed;
    auto sim      = generate_gaussian_distribution_sample(cfg);
    return {std::move(sim.sample), std::move(sim.population_mean)};
  }
  }
  throw ParameterError("unknown simulation kind");
}

std::vector<std::filesystem::path> simulate_to_directory(SimulateConfig const       &config,
                                                         std::filesystem::path const &out_dir)
{
  auto      result = simulate(config);
  OutputSet outputs;
  std::filesystem::create_directories(out_dir);
  outputs.write(out_dir / "sample.json", sample_to_json(result.sample));
  if (result.sample.has_groups())
  {
    outputs.write(out_dir / "labels.csv", labels_to_csv(result.sample));
  }
  if (result.population_mean)
  {
    outputs.write(out_dir / "population_mean.json", mean_to_json(*result.population_mean));
  }
  outputs.commit();
  return outputs.files();
}

void write_fpca_outputs(FpcaResult const &fpca, VarianceMatrix const &v,
                        std::filesystem::path const &out_dir, OutputSet &outputs)
{
  outputs.write(out_dir / "nu_hat.csv", nu_hat_to_csv(v.grid, fpca.nu_hat));
  outputs.write(out_dir / "covariance.csv", covariance_to_csv(fpca.surface));
  outputs.write(out_dir / "eigen.csv", eigen_to_csv(fpca));
  outputs.write(out_dir / "eigenfunctions.csv", eigenfunctions_to_csv(v.grid, fpca.eigenfunctions));
  outputs.write(out_dir / "scores.csv", scores_to_csv(fpca.scores, v.ids, v.groups));
  outputs.write(out_dir / "scores_scatter.svg", scores_scatter_svg(fpca.scores, v.groups));
}

namespace {

template <typename Fn>
auto stage(char const *name, Fn &&fn)
{
  try
  {
    return fn();
  }
  catch (ConvergenceError const &e)
  {
    throw ConvergenceError(std::string(name) + " stage: " + e.what(), e.iterations());
  }
  catch (Error const &e)
  {
    throw Error(e.code(), std::string(name) + " stage: " + e.what());
  }
  catch (std::filesystem::filesystem_error const &e)
  {
    throw IoError(std::string(name) + " stage: " + e.what());
  }
}

}  // namespace

PipelineReport run_pipeline(PipelineConfig const &config, LogFn const &log)
{
  if (config.selection.components && *config.selection.components == 0)
  {
    throw ParameterError("--components must be at least 1");
  }
  if (!(config.bandwidth >= 0.0))
  {
    throw ParameterError("--bandwidth must be nonnegative");
  }
  auto note = [&](std::string const &msg, PipelineReport &report) {
    report.notes.push_back(msg);
    if (log)
    {
      log(msg);
    }
  };

  PipelineReport report;
  OutputSet      outputs;
  auto const    &dir = config.output_dir;

  auto sample = stage("load", [&] { return load_sample(config.input); });
  stage("setup", [&] {
    std::filesystem::create_directories(dir);
    return 0;
  });
  report.subjects    = sample.size();
  report.grid_points = sample.grid().size();

  auto mean = stage("mean", [&] {
    if (config.oracle_mean)
    {
      auto m       = load_mean(*config.oracle_mean);
      m.provenance = MeanProvenance::supplied_oracle;
      return m;
    }
    return frechet_mean_trajectory(sample);
  });
  stage("mean", [&] {
    outputs.write(dir / "mean_trajectory.json", mean_to_json(mean));
    return 0;
  });

  auto variance = stage("variance", [&] { return variance_trajectories(sample, mean); });
  stage("variance", [&] {
    outputs.write(dir / "variance.csv", variance_to_csv(variance));
    return 0;
  });

  auto fpca = stage("fpca", [&] { return run_fpca(variance, config.selection); });
  for (auto const &n : fpca.notes)
  {
    note(n, report);
  }
  report.components = fpca.eigenvalues.size();
  stage("fpca", [&] {
    write_fpca_outputs(fpca, variance, dir, outputs);
    return 0;
  });

  double const bandwidth = config.auto_bandwidth ? default_bandwidth(variance.grid) : config.bandwidth;
  auto dynamics = stage("dynamics", [&] { return empirical_dynamics(variance, bandwidth); });
  stage("dynamics", [&] {
    outputs.write(dir / "dynamics.csv", dynamics_to_csv(dynamics));
    return 0;
  });

  outputs.commit();
  report.files = outputs.files();
  return report;
}

}  // namespace fdyn
