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

#include "fdyn/fdyn.h"

#include "fdyn/dynamics.hpp"
#include "fdyn/fpca.hpp"
#include "fdyn/io.hpp"
#include "fdyn/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <new>
#include <string>
#include <vector>

struct fdyn_sample
{
  fdyn::ObjectTrajectorySample value;
};

struct fdyn_mean
{
  fdyn::MeanTrajectory value;
};

struct fdyn_variance
{
  fdyn::VarianceMatrix value;
};

struct fdyn_fpca
{
  fdyn::FpcaResult value;
};

struct fdyn_dynamics
{
  fdyn::DynamicsResult value;
};

namespace {

thread_local std::string g_last_error;

fdyn_status fail(fdyn_status status, std::string message)
{
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
fdyn_status guarded(Fn &&fn) noexcept
{
  try
  {
    return fn();
  }
  catch (fdyn::Error const &e)
  {
    return fail(static_cast<fdyn_status>(e.code()), e.what());
  }
  catch (std::filesystem::filesystem_error const &e)
  {
    return fail(FDYN_ERR_IO, e.what());
  }
  catch (std::bad_alloc const &)
  {
    return fail(FDYN_ERR_INTERNAL, "out of memory");
  }
  catch (std::exception const &e)
  {
    return fail(FDYN_ERR_INTERNAL, e.what());
  }
  catch (...)
  {
    return fail(FDYN_ERR_INTERNAL, "unknown error");
  }
}

fdyn_status null_argument(char const *name)
{
  return fail(FDYN_ERR_NULL_ARGUMENT, std::string("argument '") + name + "' is NULL");
}

#define FDYN_REQUIRE(ptr)                                                                          \
  do                                                                                               \
  {                                                                                                \
    if ((ptr) == nullptr)                                                                          \
    {                                                                                              \
      return null_argument(#ptr);                                                                  \
    }                                                                                              \
  } while (false)

template <typename T>
fdyn_status copy_out(std::vector<T> const &src, T *out, std::size_t capacity)
{
  if (out == nullptr && !src.empty())
  {
    return null_argument("out");
  }
  if (capacity < src.size())
  {
    return fail(FDYN_ERR_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(capacity) +
                                               " values, " + std::to_string(src.size()) +
                                               " needed");
  }
  std::copy(src.begin(), src.end(), out);
  return FDYN_OK;
}

fdyn_status copy_out(fdyn::Matrix const &m, double *out, std::size_t capacity)
{
  return copy_out(std::vector<double>(m.data().begin(), m.data().end()), out, capacity);
}

std::vector<std::string> names(char const *const *src, std::size_t n, char const *what)
{
  std::vector<std::string> result;
  if (src == nullptr)
  {
    return result;
  }
  result.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    if (src[i] == nullptr)
    {
      throw fdyn::ParameterError(std::string(what) + " entry " + std::to_string(i) + " is NULL");
    }
    result.emplace_back(src[i]);
  }
  return result;
}

template <typename MakeObject>
fdyn::ObjectTrajectorySample build_sample(fdyn::SpaceKind kind, std::size_t n, std::size_t m,
                                          double const *grid, char const *const *ids,
                                          char const *const *groups, MakeObject &&make)
{
  if (n == 0)
  {
    throw fdyn::EmptyInputError("sample has no subjects");
  }
  fdyn::TimeGrid time(std::vector<double>(grid, grid + m));
  auto           id_list    = names(ids, n, "ids");
  auto           group_list = names(groups, n, "groups");
  std::vector<fdyn::SubjectTrajectory> subjects(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    subjects[i].id    = id_list.empty() ? "s" + std::to_string(i + 1) : id_list[i];
    subjects[i].group = group_list.empty() ? std::string() : group_list[i];
    subjects[i].objects.reserve(m);
    for (std::size_t k = 0; k < m; ++k)
    {
      subjects[i].objects.push_back(make(i * m + k));
    }
  }
  return fdyn::ObjectTrajectorySample(fdyn::ObjectSpaceTag{kind}, std::move(time),
                                      std::move(subjects));
}

fdyn_space to_c(fdyn::SpaceKind kind)
{
  switch (kind)
  {
  case fdyn::SpaceKind::network:
    return FDYN_SPACE_NETWORK;
  case fdyn::SpaceKind::distribution:
    return FDYN_SPACE_DISTRIBUTION;
  case fdyn::SpaceKind::shape:
    return FDYN_SPACE_SHAPE;
  }
  return FDYN_SPACE_NETWORK;
}

fdyn_regime to_c(fdyn::Regime regime)
{
  switch (regime)
  {
  case fdyn::Regime::centripetal:
    return FDYN_REGIME_CENTRIPETAL;
  case fdyn::Regime::centrifugal:
    return FDYN_REGIME_CENTRIFUGAL;
  case fdyn::Regime::undefined:
    return FDYN_REGIME_UNDEFINED;
  }
  return FDYN_REGIME_UNDEFINED;
}

fdyn::SimulateConfig to_config(fdyn_sim_options const &options)
{
  fdyn::SimulateConfig config;
  switch (options.kind)
  {
  case FDYN_SIM_NETWORKS:
    config.kind = fdyn::SimulationKind::networks;
    break;
  case FDYN_SIM_NETWORKS_SUPPLEMENT:
    config.kind = fdyn::SimulationKind::networks_supplement;
    break;
  case FDYN_SIM_GAUSSIANS:
    config.kind = fdyn::SimulationKind::gaussians;
    break;
  default:
    throw fdyn::ParameterError("unknown simulation kind " + std::to_string(options.kind));
  }
  config.n                = options.n;
  config.grid_points      = options.grid_points;
  config.prob_grid_points = options.prob_grid_points;
  config.seed             = options.seed;
  return config;
}

fdyn::ComponentSelection to_selection(std::size_t components, double fve_threshold)
{
  if (!(fve_threshold > 0.0 && fve_threshold <= 1.0))
  {
    throw fdyn::ParameterError("fve threshold must lie in (0, 1]");
  }
  fdyn::ComponentSelection selection;
  if (components > 0)
  {
    selection.components = components;
  }
  selection.fve_threshold = fve_threshold;
  return selection;
}

}  // namespace

extern "C" {

char const *fdyn_version(void)
{
  return "1.0.0";
}

char const *fdyn_status_name(fdyn_status status)
{
  switch (status)
  {
  case FDYN_OK:
    return "ok";
  case FDYN_ERR_NULL_ARGUMENT:
    return "null_argument";
  case FDYN_ERR_BUFFER_TOO_SMALL:
    return "buffer_too_small";
  case FDYN_ERR_INTERNAL:
    return "internal";
  default:
    break;
  }
  if (status >= FDYN_ERR_DIMENSION && status <= FDYN_ERR_IO)
  {
    return fdyn::error_code_name(static_cast<fdyn::ErrorCode>(status));
  }
  return "unknown";
}

char const *fdyn_last_error_message(void)
{
  return g_last_error.c_str();
}

// ---- samples ---------------------------------------------------------------

fdyn_status fdyn_sample_load(char const *path, fdyn_sample **out)
{
  FDYN_REQUIRE(path);
  FDYN_REQUIRE(out);
  return guarded([&] {
    *out = new fdyn_sample{fdyn::load_sample(path)};
    return FDYN_OK;
  });
}

fdyn_status fdyn_sample_save(fdyn_sample const *sample, char const *path)
{
  FDYN_REQUIRE(sample);
  FDYN_REQUIRE(path);
  return guarded([&] {
    fdyn::write_sample(sample->value, path);
    return FDYN_OK;
  });
}

fdyn_status fdyn_sample_save_labels(fdyn_sample const *sample, char const *path)
{
  FDYN_REQUIRE(sample);
  FDYN_REQUIRE(path);
  return guarded([&] {
    if (!sample->value.has_groups())
    {
      throw fdyn::ParameterError("sample has no group labels");
    }
    fdyn::write_file(path, fdyn::labels_to_csv(sample->value));
    return FDYN_OK;
  });
}

fdyn_status fdyn_sample_info(fdyn_sample const *sample, std::size_t *subjects,
                             std::size_t *grid_points, fdyn_space *space)
{
  FDYN_REQUIRE(sample);
  if (subjects)
  {
    *subjects = sample->value.size();
  }
  if (grid_points)
  {
    *grid_points = sample->value.grid().size();
  }
  if (space)
  {
    *space = to_c(sample->value.tag().kind);
  }
  return FDYN_OK;
}

fdyn_status fdyn_sample_grid(fdyn_sample const *sample, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(sample);
  return copy_out(sample->value.grid().points(), out, capacity);
}

fdyn_status fdyn_sample_from_networks(std::size_t n, std::size_t m, std::size_t r,
                                      double const *grid, double const *laplacians,
                                      char const *const *ids, char const *const *groups,
                                      fdyn_sample **out)
{
  FDYN_REQUIRE(grid);
  FDYN_REQUIRE(laplacians);
  FDYN_REQUIRE(out);
  return guarded([&] {
    std::size_t const block = r * r;
    auto              s     = build_sample(fdyn::SpaceKind::network, n, m, grid, ids, groups,
                                           [&](std::size_t idx) -> fdyn::Object {
                                    double const *p = laplacians + idx * block;
                                    return fdyn::GraphLaplacian(r, std::vector<double>(p, p + block));
                                  });
    *out                    = new fdyn_sample{std::move(s)};
    return FDYN_OK;
  });
}

fdyn_status fdyn_sample_from_distributions(std::size_t n, std::size_t m, std::size_t levels,
                                           double const *grid, double const *prob_grid,
                                           double const *quantiles, char const *const *ids,
                                           char const *const *groups, fdyn_sample **out)
{
  FDYN_REQUIRE(grid);
  FDYN_REQUIRE(prob_grid);
  FDYN_REQUIRE(quantiles);
  FDYN_REQUIRE(out);
  return guarded([&] {
    fdyn::ProbabilityGrid probs(std::vector<double>(prob_grid, prob_grid + levels));
    auto s = build_sample(fdyn::SpaceKind::distribution, n, m, grid, ids, groups,
                          [&](std::size_t idx) -> fdyn::Object {
                            double const *p = quantiles + idx * levels;
                            return fdyn::QuantileDistribution(probs,
                                                              std::vector<double>(p, p + levels));
                          });
    *out   = new fdyn_sample{std::move(s)};
    return FDYN_OK;
  });
}

fdyn_status fdyn_sample_from_shapes(std::size_t n, std::size_t m, std::size_t k,
                                    double const *grid, double const *coords,
                                    char const *const *ids, char const *const *groups,
                                    fdyn_sample **out)
{
  FDYN_REQUIRE(grid);
  FDYN_REQUIRE(coords);
  FDYN_REQUIRE(out);
  return guarded([&] {
    auto s = build_sample(fdyn::SpaceKind::shape, n, m, grid, ids, groups,
                          [&](std::size_t idx) -> fdyn::Object {
                            double const                     *p = coords + idx * 2 * k;
                            std::vector<std::complex<double>> z(k);
                            for (std::size_t j = 0; j < k; ++j)
                            {
                              z[j] = {p[2 * j], p[2 * j + 1]};
                            }
                            return fdyn::PlanarShape(std::move(z));
                          });
    *out   = new fdyn_sample{std::move(s)};
    return FDYN_OK;
  });
}

void fdyn_sample_free(fdyn_sample *sample)
{
  delete sample;
}

// ---- simulation ------------------------------------------------------------

void fdyn_sim_options_default(fdyn_sim_options *options)
{
  if (options == nullptr)
  {
    return;
  }
  fdyn::SimulateConfig const defaults;
  options->kind             = FDYN_SIM_NETWORKS;
  options->n                = defaults.n;
  options->grid_points      = defaults.grid_points;
  options->prob_grid_points = defaults.prob_grid_points;
  options->seed             = defaults.seed;
}

fdyn_status fdyn_parse_sim_kind(char const *name, fdyn_sim_kind *out)
{
  FDYN_REQUIRE(name);
  FDYN_REQUIRE(out);
  return guarded([&] {
    switch (fdyn::parse_simulation_kind(name))
    {
    case fdyn::SimulationKind::networks:
      *out = FDYN_SIM_NETWORKS;
      break;
    case fdyn::SimulationKind::networks_supplement:
      *out = FDYN_SIM_NETWORKS_SUPPLEMENT;
      break;
    case fdyn::SimulationKind::gaussians:
      *out = FDYN_SIM_GAUSSIANS;
      break;
    }
    return FDYN_OK;
  });
}

fdyn_status fdyn_simulate(fdyn_sim_options const *options, fdyn_sample **sample,
                          fdyn_mean **population_mean)
{
  FDYN_REQUIRE(options);
  FDYN_REQUIRE(sample);
  return guarded([&] {
    auto result = fdyn::simulate(to_config(*options));
    if (population_mean)
    {
      *population_mean =
          result.population_mean ? new fdyn_mean{std::move(*result.population_mean)} : nullptr;
    }
    *sample = new fdyn_sample{std::move(result.sample)};
    return FDYN_OK;
  });
}

fdyn_status fdyn_simulate_to_directory(fdyn_sim_options const *options, char const *out_dir)
{
  FDYN_REQUIRE(options);
  FDYN_REQUIRE(out_dir);
  return guarded([&] {
    fdyn::simulate_to_directory(to_config(*options), out_dir);
    return FDYN_OK;
  });
}

// ---- means -----------------------------------------------------------------

fdyn_status fdyn_mean_compute(fdyn_sample const *sample, fdyn_mean **out)
{
  FDYN_REQUIRE(sample);
  FDYN_REQUIRE(out);
  return guarded([&] {
    *out = new fdyn_mean{fdyn::frechet_mean_trajectory(sample->value)};
    return FDYN_OK;
  });
}

fdyn_status fdyn_mean_load(char const *path, fdyn_mean **out)
{
  FDYN_REQUIRE(path);
  FDYN_REQUIRE(out);
  return guarded([&] {
    *out = new fdyn_mean{fdyn::load_mean(path)};
    return FDYN_OK;
  });
}

fdyn_status fdyn_mean_save(fdyn_mean const *mean, char const *path)
{
  FDYN_REQUIRE(mean);
  FDYN_REQUIRE(path);
  return guarded([&] {
    fdyn::write_mean(mean->value, path);
    return FDYN_OK;
  });
}

fdyn_status fdyn_mean_is_oracle(fdyn_mean const *mean, int *is_oracle)
{
  FDYN_REQUIRE(mean);
  FDYN_REQUIRE(is_oracle);
  *is_oracle = mean->value.provenance == fdyn::MeanProvenance::supplied_oracle ? 1 : 0;
  return FDYN_OK;
}

fdyn_status fdyn_mean_mark_oracle(fdyn_mean *mean)
{
  FDYN_REQUIRE(mean);
  mean->value.provenance = fdyn::MeanProvenance::supplied_oracle;
  return FDYN_OK;
}

void fdyn_mean_free(fdyn_mean *mean)
{
  delete mean;
}

// ---- variance --------------------------------------------------------------

fdyn_status fdyn_variance_compute(fdyn_sample const *sample, fdyn_mean const *mean,
                                  fdyn_variance **out)
{
  FDYN_REQUIRE(sample);
  FDYN_REQUIRE(mean);
  FDYN_REQUIRE(out);
  return guarded([&] {
    *out = new fdyn_variance{fdyn::variance_trajectories(sample->value, mean->value)};
    return FDYN_OK;
  });
}

fdyn_status fdyn_variance_from_values(std::size_t n, std::size_t m, double const *grid,
                                      double const *values, char const *const *ids,
                                      char const *const *groups, fdyn_variance **out)
{
  FDYN_REQUIRE(grid);
  FDYN_REQUIRE(values);
  FDYN_REQUIRE(out);
  return guarded([&] {
    if (n == 0)
    {
      throw fdyn::EmptyInputError("variance matrix has no subjects");
    }
    fdyn::TimeGrid time(std::vector<double>(grid, grid + m));
    fdyn::Matrix   v(n, m, std::vector<double>(values, values + n * m));
    *out = new fdyn_variance{fdyn::VarianceMatrix(std::move(time), std::move(v), false,
                                                  names(ids, n, "ids"),
                                                  names(groups, n, "groups"))};
    return FDYN_OK;
  });
}

fdyn_status fdyn_variance_load(char const *path, fdyn_variance **out)
{
  FDYN_REQUIRE(path);
  FDYN_REQUIRE(out);
  return guarded([&] {
    *out = new fdyn_variance{fdyn::load_variance(path)};
    return FDYN_OK;
  });
}

fdyn_status fdyn_variance_save(fdyn_variance const *v, char const *path)
{
  FDYN_REQUIRE(v);
  FDYN_REQUIRE(path);
  return guarded([&] {
    fdyn::write_variance(v->value, path);
    return FDYN_OK;
  });
}

fdyn_status fdyn_variance_attach_labels(fdyn_variance *v, char const *labels_path)
{
  FDYN_REQUIRE(v);
  FDYN_REQUIRE(labels_path);
  return guarded([&] {
    auto table = fdyn::parse_csv(fdyn::read_file(labels_path));
    if (table.header.size() != 2 || table.header[0] != "subject_id" || table.header[1] != "group")
    {
      throw fdyn::ParseError(std::string(labels_path) +
                             ": expected header 'subject_id,group'");
    }
    std::map<std::string, std::string> lookup;
    for (std::size_t r = 0; r < table.rows.size(); ++r)
    {
      auto const &row = table.rows[r];
      if (row.size() != 2)
      {
        throw fdyn::ParseError(std::string(labels_path) + ": line " + std::to_string(r + 2) +
                               " has " + std::to_string(row.size()) + " fields, expected 2");
      }
      lookup[row[0]] = row[1];
    }
    std::vector<std::string> groups;
    groups.reserve(v->value.ids.size());
    for (auto const &id : v->value.ids)
    {
      auto it = lookup.find(id);
      if (it == lookup.end())
      {
        throw fdyn::ParseError(std::string(labels_path) + ": no label for subject '" + id + "'");
      }
      groups.push_back(it->second);
    }
    v->value.groups = std::move(groups);
    return FDYN_OK;
  });
}

fdyn_status fdyn_variance_shape(fdyn_variance const *v, std::size_t *subjects,
                                std::size_t *grid_points)
{
  FDYN_REQUIRE(v);
  if (subjects)
  {
    *subjects = v->value.subjects();
  }
  if (grid_points)
  {
    *grid_points = v->value.grid.size();
  }
  return FDYN_OK;
}

fdyn_status fdyn_variance_values(fdyn_variance const *v, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(v);
  return copy_out(v->value.values, out, capacity);
}

fdyn_status fdyn_variance_is_oracle(fdyn_variance const *v, int *is_oracle)
{
  FDYN_REQUIRE(v);
  FDYN_REQUIRE(is_oracle);
  *is_oracle = v->value.oracle ? 1 : 0;
  return FDYN_OK;
}

void fdyn_variance_free(fdyn_variance *v)
{
  delete v;
}

// ---- FPCA ------------------------------------------------------------------

void fdyn_fpca_options_default(fdyn_fpca_options *options)
{
  if (options == nullptr)
  {
    return;
  }
  options->components    = 0;
  options->fve_threshold = fdyn::ComponentSelection{}.fve_threshold;
}

fdyn_status fdyn_fpca_compute(fdyn_variance const *v, fdyn_fpca_options const *options,
                              fdyn_fpca **out)
{
  FDYN_REQUIRE(v);
  FDYN_REQUIRE(out);
  return guarded([&] {
    fdyn_fpca_options opts;
    fdyn_fpca_options_default(&opts);
    if (options)
    {
      opts = *options;
    }
    *out = new fdyn_fpca{fdyn::run_fpca(v->value, to_selection(opts.components, opts.fve_threshold))};
    return FDYN_OK;
  });
}

fdyn_status fdyn_fpca_shape(fdyn_fpca const *fpca, std::size_t *subjects,
                            std::size_t *grid_points, std::size_t *components, std::size_t *rank)
{
  FDYN_REQUIRE(fpca);
  if (subjects)
  {
    *subjects = fpca->value.scores.rows();
  }
  if (grid_points)
  {
    *grid_points = fpca->value.nu_hat.size();
  }
  if (components)
  {
    *components = fpca->value.eigenvalues.size();
  }
  if (rank)
  {
    *rank = fpca->value.rank;
  }
  return FDYN_OK;
}

fdyn_status fdyn_fpca_mean_function(fdyn_fpca const *fpca, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(fpca);
  return copy_out(fpca->value.nu_hat, out, capacity);
}

fdyn_status fdyn_fpca_covariance(fdyn_fpca const *fpca, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(fpca);
  return copy_out(fpca->value.surface.values, out, capacity);
}

fdyn_status fdyn_fpca_eigenvalues(fdyn_fpca const *fpca, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(fpca);
  return copy_out(fpca->value.eigenvalues, out, capacity);
}

fdyn_status fdyn_fpca_eigengaps(fdyn_fpca const *fpca, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(fpca);
  return copy_out(fpca->value.eigengaps, out, capacity);
}

fdyn_status fdyn_fpca_fve(fdyn_fpca const *fpca, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(fpca);
  return copy_out(fpca->value.fve, out, capacity);
}

fdyn_status fdyn_fpca_eigenfunctions(fdyn_fpca const *fpca, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(fpca);
  return copy_out(fpca->value.eigenfunctions, out, capacity);
}

fdyn_status fdyn_fpca_scores(fdyn_fpca const *fpca, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(fpca);
  return copy_out(fpca->value.scores, out, capacity);
}

fdyn_status fdyn_fpca_mode_of_variation(fdyn_fpca const *fpca, std::size_t component,
                                        double multiplier, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(fpca);
  return guarded([&] {
    auto const &f = fpca->value;
    if (component >= f.eigenvalues.size())
    {
      throw fdyn::ParameterError("component " + std::to_string(component) + " out of range (" +
                                 std::to_string(f.eigenvalues.size()) + " retained)");
    }
    auto mode = fdyn::modes_of_variation(f.nu_hat, f.eigenvalues[component],
                                         f.eigenfunctions.row(component), multiplier);
    return copy_out(mode, out, capacity);
  });
}

fdyn_status fdyn_fpca_note_count(fdyn_fpca const *fpca, std::size_t *count)
{
  FDYN_REQUIRE(fpca);
  FDYN_REQUIRE(count);
  *count = fpca->value.notes.size();
  return FDYN_OK;
}

fdyn_status fdyn_fpca_note(fdyn_fpca const *fpca, std::size_t index, char const **message)
{
  FDYN_REQUIRE(fpca);
  FDYN_REQUIRE(message);
  if (index >= fpca->value.notes.size())
  {
    return fail(FDYN_ERR_PARAMETER, "note index out of range");
  }
  *message = fpca->value.notes[index].c_str();
  return FDYN_OK;
}

fdyn_status fdyn_fpca_write(fdyn_fpca const *fpca, fdyn_variance const *v, char const *out_dir)
{
  FDYN_REQUIRE(fpca);
  FDYN_REQUIRE(v);
  FDYN_REQUIRE(out_dir);
  return guarded([&] {
    if (fpca->value.scores.rows() != v->value.subjects() ||
        fpca->value.nu_hat.size() != v->value.grid.size())
    {
      throw fdyn::DimensionError("FPCA result does not match the variance matrix");
    }
    std::filesystem::create_directories(out_dir);
    fdyn::OutputSet outputs;
    fdyn::write_fpca_outputs(fpca->value, v->value, out_dir, outputs);
    outputs.commit();
    return FDYN_OK;
  });
}

void fdyn_fpca_free(fdyn_fpca *fpca)
{
  delete fpca;
}

// ---- dynamics --------------------------------------------------------------

fdyn_status fdyn_default_bandwidth(fdyn_variance const *v, double *bandwidth)
{
  FDYN_REQUIRE(v);
  FDYN_REQUIRE(bandwidth);
  *bandwidth = fdyn::default_bandwidth(v->value.grid);
  return FDYN_OK;
}

fdyn_status fdyn_dynamics_compute(fdyn_variance const *v, double bandwidth, fdyn_dynamics **out)
{
  FDYN_REQUIRE(v);
  FDYN_REQUIRE(out);
  return guarded([&] {
    *out = new fdyn_dynamics{fdyn::empirical_dynamics(v->value, bandwidth)};
    return FDYN_OK;
  });
}

fdyn_status fdyn_dynamics_size(fdyn_dynamics const *d, std::size_t *grid_points)
{
  FDYN_REQUIRE(d);
  FDYN_REQUIRE(grid_points);
  *grid_points = d->value.beta.size();
  return FDYN_OK;
}

fdyn_status fdyn_dynamics_beta(fdyn_dynamics const *d, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(d);
  return copy_out(d->value.beta, out, capacity);
}

fdyn_status fdyn_dynamics_r_squared(fdyn_dynamics const *d, double *out, std::size_t capacity)
{
  FDYN_REQUIRE(d);
  return copy_out(d->value.r_squared, out, capacity);
}

fdyn_status fdyn_dynamics_drift_variance(fdyn_dynamics const *d, double *out,
                                         std::size_t capacity)
{
  FDYN_REQUIRE(d);
  return copy_out(d->value.drift_var, out, capacity);
}

fdyn_status fdyn_dynamics_regimes(fdyn_dynamics const *d, fdyn_regime *out, std::size_t capacity)
{
  FDYN_REQUIRE(d);
  std::vector<fdyn_regime> regimes;
  regimes.reserve(d->value.regime.size());
  for (auto r : d->value.regime)
  {
    regimes.push_back(to_c(r));
  }
  return copy_out(regimes, out, capacity);
}

fdyn_status fdyn_dynamics_save(fdyn_dynamics const *d, char const *path)
{
  FDYN_REQUIRE(d);
  FDYN_REQUIRE(path);
  return guarded([&] {
    fdyn::write_file(path, fdyn::dynamics_to_csv(d->value));
    return FDYN_OK;
  });
}

void fdyn_dynamics_free(fdyn_dynamics *d)
{
  delete d;
}

// ---- pipeline --------------------------------------------------------------

void fdyn_pipeline_options_default(fdyn_pipeline_options *options)
{
  if (options == nullptr)
  {
    return;
  }
  options->input          = nullptr;
  options->output_dir     = nullptr;
  options->components     = 0;
  options->fve_threshold  = fdyn::ComponentSelection{}.fve_threshold;
  options->bandwidth      = 0.0;
  options->auto_bandwidth = 0;
  options->oracle_mean    = nullptr;
  options->log            = nullptr;
  options->log_user_data  = nullptr;
}

fdyn_status fdyn_pipeline_run(fdyn_pipeline_options const *options)
{
  FDYN_REQUIRE(options);
  FDYN_REQUIRE(options->input);
  FDYN_REQUIRE(options->output_dir);
  return guarded([&] {
    fdyn::PipelineConfig config;
    config.input          = options->input;
    config.output_dir     = options->output_dir;
    config.selection      = to_selection(options->components, options->fve_threshold);
    config.bandwidth      = options->bandwidth;
    config.auto_bandwidth = options->auto_bandwidth != 0;
    if (options->oracle_mean)
    {
      config.oracle_mean = std::filesystem::path(options->oracle_mean);
    }
    fdyn::LogFn log;
    if (options->log)
    {
      log = [fn = options->log, data = options->log_user_data](std::string const &msg) {
        fn(msg.c_str(), data);
      };
    }
    fdyn::run_pipeline(config, log);
    return FDYN_OK;
  });
}

}  // extern "C"
