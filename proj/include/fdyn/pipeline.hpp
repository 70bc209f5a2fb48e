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

// Stage orchestration: simulate -> mean -> variance -> FPCA -> dynamics.
// Every stage reads and writes the file formats in io.hpp, so stages can be
// rerun independently.

#include "fdyn/fpca.hpp"
#include "fdyn/io.hpp"
#include "fdyn/simulation.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fdyn {

/// Collects files written by a stage and deletes them unless committed.
class OutputSet
{
public:
  OutputSet() = default;
  OutputSet(OutputSet const &)            = delete;
  OutputSet &operator=(OutputSet const &) = delete;
  ~OutputSet();

  void write(std::filesystem::path const &path, std::string const &content);
  void commit() noexcept
  {
    committed_ = true;
  }
  std::vector<std::filesystem::path> const &files() const noexcept
  {
    return files_;
  }

private:
  std::vector<std::filesystem::path> files_;
  bool                               committed_{false};
};

using LogFn = std::function<void(std::string const &)>;

enum class SimulationKind
{
  networks,
  networks_supplement,
  gaussians,
};

SimulationKind parse_simulation_kind(std::string const &name);

struct SimulateConfig
{
  SimulationKind kind{SimulationKind::networks};
  std::size_t    n{50};  // per group for `networks`
  std::size_t    grid_points{51};
  std::size_t    prob_grid_points{1000};
  std::uint64_t  seed{0};
};

struct SimulationOutput
{
  ObjectTrajectorySample        sample;
  std::optional<MeanTrajectory> population_mean;
};

SimulationOutput simulate(SimulateConfig const &config);

/// Writes sample.json, labels.csv (when labeled) and population_mean.json
/// into `out_dir`. Returns the written paths.
std::vector<std::filesystem::path> simulate_to_directory(SimulateConfig const       &config,
                                                         std::filesystem::path const &out_dir);

/// nu_hat.csv, covariance.csv, eigen.csv, eigenfunctions.csv, scores.csv
/// and scores_scatter.svg.
void write_fpca_outputs(FpcaResult const &fpca, VarianceMatrix const &v,
                        std::filesystem::path const &out_dir, OutputSet &outputs);

struct PipelineConfig
{
  std::filesystem::path                input;
  std::filesystem::path                output_dir;
  ComponentSelection                   selection;
  double                               bandwidth{0.0};
  bool                                 auto_bandwidth{false};  // 10% of the time span
  std::optional<std::filesystem::path> oracle_mean;
};

struct PipelineReport
{
  std::vector<std::filesystem::path> files;
  std::vector<std::string>           notes;
  std::size_t                        subjects{0};
  std::size_t                        grid_points{0};
  std::size_t                        components{0};
};

/// Runs every stage on a sample manifest and writes all artifacts. On
/// failure the files written so far are removed and the error is rethrown
/// with the failing stage named.
PipelineReport run_pipeline(PipelineConfig const &config, LogFn const &log = {});

}  // namespace fdyn
