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

// fdyn command line: simulate, mean, variance, fpca, dynamics, pipeline.
// Exit status 0 on success, 2 on usage errors, 1 on any other failure.

#include "fdyn/fdyn.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage   = 2;

CLI::Validator const kAtLeastOne(
    [](std::string &text) -> std::string {
      return text.empty() || text.find_first_not_of("0123456789") != std::string::npos ||
                     text.find_first_not_of('0') == std::string::npos
                 ? std::string("must be an integer of at least 1")
                 : std::string();
    },
    "INT>=1");

struct Failure
{
  fdyn_status status;
};

void check(fdyn_status status)
{
  if (status != FDYN_OK)
  {
    throw Failure{status};
  }
}

template <typename T, void (*Free)(T *)>
struct Deleter
{
  void operator()(T *p) const noexcept
  {
    Free(p);
  }
};

using SamplePtr   = std::unique_ptr<fdyn_sample, Deleter<fdyn_sample, fdyn_sample_free>>;
using MeanPtr     = std::unique_ptr<fdyn_mean, Deleter<fdyn_mean, fdyn_mean_free>>;
using VariancePtr = std::unique_ptr<fdyn_variance, Deleter<fdyn_variance, fdyn_variance_free>>;
using FpcaPtr     = std::unique_ptr<fdyn_fpca, Deleter<fdyn_fpca, fdyn_fpca_free>>;
using DynamicsPtr = std::unique_ptr<fdyn_dynamics, Deleter<fdyn_dynamics, fdyn_dynamics_free>>;

SamplePtr load_sample(std::string const &path)
{
  fdyn_sample *raw = nullptr;
  check(fdyn_sample_load(path.c_str(), &raw));
  return SamplePtr(raw);
}

MeanPtr load_mean(std::string const &path)
{
  fdyn_mean *raw = nullptr;
  check(fdyn_mean_load(path.c_str(), &raw));
  return MeanPtr(raw);
}

VariancePtr load_variance(std::string const &path)
{
  fdyn_variance *raw = nullptr;
  check(fdyn_variance_load(path.c_str(), &raw));
  return VariancePtr(raw);
}

// "auto" or a nonnegative number.
struct Bandwidth
{
  std::string text{"0"};

  bool is_auto() const
  {
    return text == "auto";
  }
  double value() const
  {
    return std::stod(text);
  }
};

std::string validate_bandwidth(std::string const &text)
{
  if (text == "auto")
  {
    return {};
  }
  try
  {
    std::size_t used = 0;
    double      h    = std::stod(text, &used);
    if (used != text.size() || !(h >= 0.0) || !std::isfinite(h))
    {
      return "bandwidth must be a nonnegative number or 'auto'";
    }
  }
  catch (std::exception const &)
  {
    return "bandwidth must be a nonnegative number or 'auto'";
  }
  return {};
}

void log_to_stderr(char const *message, void *)
{
  std::fprintf(stderr, "note: %s\n", message);
}

void print_notes(fdyn_fpca const *fpca)
{
  std::size_t count = 0;
  check(fdyn_fpca_note_count(fpca, &count));
  for (std::size_t i = 0; i < count; ++i)
  {
    char const *msg = nullptr;
    check(fdyn_fpca_note(fpca, i, &msg));
    log_to_stderr(msg, nullptr);
  }
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Frechet variance trajectories: simulation, FPCA and empirical dynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fdyn_version()));

  // simulate
  auto       *sim = app.add_subcommand("simulate", "Generate a seeded simulation sample");
  std::string sim_kind{"networks"};
  std::size_t sim_n{50};
  std::size_t sim_grid{51};
  std::size_t sim_prob_grid{1000};
  std::uint64_t sim_seed{0};
  std::string   sim_out;
  sim->add_option("--kind", sim_kind, "networks, networks-supplement or gaussians")
      ->check(CLI::IsMember({"networks", "networks-supplement", "gaussians"}))
      ->capture_default_str();
  sim->add_option("--n", sim_n, "Subjects (per group for networks)")
      ->check(kAtLeastOne)
      ->capture_default_str();
  sim->add_option("--grid", sim_grid, "Time grid points on [0, 1]")
      ->check(CLI::Range(std::size_t{3}, std::size_t{100000}))
      ->capture_default_str();
  sim->add_option("--prob-grid", sim_prob_grid, "Probability levels (gaussians)")
      ->check(kAtLeastOne)
      ->capture_default_str();
  sim->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
  sim->add_option("--out,--out-dir", sim_out, "Output directory")->required();

  // mean
  auto       *mean = app.add_subcommand("mean", "Frechet mean trajectory of a sample");
  std::string mean_in;
  std::string mean_out;
  mean->add_option("--input", mean_in, "Sample manifest")->required()->check(CLI::ExistingFile);
  mean->add_option("--out", mean_out, "Output mean_trajectory.json")->required();

  // variance
  auto       *var = app.add_subcommand("variance", "Frechet variance trajectories");
  std::string var_in;
  std::string var_mean;
  std::string var_oracle;
  std::string var_out;
  var->add_option("--input", var_in, "Sample manifest")->required()->check(CLI::ExistingFile);
  auto *var_mean_opt =
      var->add_option("--mean", var_mean, "Estimated mean trajectory (default: computed)")
          ->check(CLI::ExistingFile);
  var->add_option("--oracle-mean", var_oracle, "Known population mean trajectory")
      ->check(CLI::ExistingFile)
      ->excludes(var_mean_opt);
  var->add_option("--out", var_out, "Output variance.csv")->required();

  // fpca
  auto        *fpca = app.add_subcommand("fpca", "Functional PCA of variance trajectories");
  std::string  fpca_in;
  std::string  fpca_out;
  std::string  fpca_labels;
  std::size_t  fpca_components{0};
  double       fpca_fve{0.95};
  fpca->add_option("--input", fpca_in, "variance.csv")->required()->check(CLI::ExistingFile);
  fpca->add_option("--out,--out-dir", fpca_out, "Output directory")->required();
  fpca->add_option("--labels", fpca_labels, "subject_id,group table")->check(CLI::ExistingFile);
  auto *fpca_j = fpca->add_option("--components", fpca_components, "Number of components J")
                     ->check(kAtLeastOne);
  fpca->add_option("--fve-threshold", fpca_fve, "Cumulative FVE used to choose J")
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(fpca_j)
      ->capture_default_str();

  // dynamics
  auto       *dyn = app.add_subcommand("dynamics", "Empirical dynamics of variance trajectories");
  std::string dyn_in;
  std::string dyn_out;
  Bandwidth   dyn_bw;
  dyn->add_option("--input", dyn_in, "variance.csv")->required()->check(CLI::ExistingFile);
  dyn->add_option("--out", dyn_out, "Output dynamics.csv")->required();
  dyn->add_option("--bandwidth", dyn_bw.text, "Smoothing bandwidth, 0 (none) or 'auto'")
      ->check(validate_bandwidth)
      ->capture_default_str();

  // pipeline
  auto        *pipe = app.add_subcommand("pipeline", "Run every stage on a sample manifest");
  std::string  pipe_in;
  std::string  pipe_out;
  std::string  pipe_oracle;
  std::size_t  pipe_components{0};
  double       pipe_fve{0.95};
  Bandwidth    pipe_bw;
  pipe->add_option("--input", pipe_in, "Sample manifest")->required()->check(CLI::ExistingFile);
  pipe->add_option("--out,--out-dir", pipe_out, "Output directory")->required();
  auto *pipe_j = pipe->add_option("--components", pipe_components, "Number of components J")
                     ->check(kAtLeastOne);
  pipe->add_option("--fve-threshold", pipe_fve, "Cumulative FVE used to choose J")
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(pipe_j)
      ->capture_default_str();
  pipe->add_option("--bandwidth", pipe_bw.text, "Smoothing bandwidth, 0 (none) or 'auto'")
      ->check(validate_bandwidth)
      ->capture_default_str();
  pipe->add_option("--oracle-mean", pipe_oracle, "Known population mean trajectory")
      ->check(CLI::ExistingFile);

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try
  {
    if (*sim)
    {
      fdyn_sim_options options;
      fdyn_sim_options_default(&options);
      check(fdyn_parse_sim_kind(sim_kind.c_str(), &options.kind));
      options.n                = sim_n;
      options.grid_points      = sim_grid;
      options.prob_grid_points = sim_prob_grid;
      options.seed             = sim_seed;
      check(fdyn_simulate_to_directory(&options, sim_out.c_str()));
    }
    else if (*mean)
    {
      auto       sample = load_sample(mean_in);
      fdyn_mean *raw    = nullptr;
      check(fdyn_mean_compute(sample.get(), &raw));
      MeanPtr m(raw);
      check(fdyn_mean_save(m.get(), mean_out.c_str()));
    }
    else if (*var)
    {
      auto    sample = load_sample(var_in);
      MeanPtr m;
      if (!var_oracle.empty())
      {
        m = load_mean(var_oracle);
        check(fdyn_mean_mark_oracle(m.get()));
      }
      else if (!var_mean.empty())
      {
        m = load_mean(var_mean);
      }
      else
      {
        fdyn_mean *raw = nullptr;
        check(fdyn_mean_compute(sample.get(), &raw));
        m.reset(raw);
      }
      fdyn_variance *raw = nullptr;
      check(fdyn_variance_compute(sample.get(), m.get(), &raw));
      VariancePtr v(raw);
      check(fdyn_variance_save(v.get(), var_out.c_str()));
    }
    else if (*fpca)
    {
      auto v = load_variance(fpca_in);
      if (!fpca_labels.empty())
      {
        check(fdyn_variance_attach_labels(v.get(), fpca_labels.c_str()));
      }
      fdyn_fpca_options options;
      fdyn_fpca_options_default(&options);
      options.components    = fpca_components;
      options.fve_threshold = fpca_fve;
      fdyn_fpca *raw        = nullptr;
      check(fdyn_fpca_compute(v.get(), &options, &raw));
      FpcaPtr f(raw);
      print_notes(f.get());
      check(fdyn_fpca_write(f.get(), v.get(), fpca_out.c_str()));
    }
    else if (*dyn)
    {
      auto   v = load_variance(dyn_in);
      double h = 0.0;
      if (dyn_bw.is_auto())
      {
        check(fdyn_default_bandwidth(v.get(), &h));
      }
      else
      {
        h = dyn_bw.value();
      }
      fdyn_dynamics *raw = nullptr;
      check(fdyn_dynamics_compute(v.get(), h, &raw));
      DynamicsPtr d(raw);
      check(fdyn_dynamics_save(d.get(), dyn_out.c_str()));
    }
    else if (*pipe)
    {
      fdyn_pipeline_options options;
      fdyn_pipeline_options_default(&options);
      options.input         = pipe_in.c_str();
      options.output_dir    = pipe_out.c_str();
      options.components    = pipe_components;
      options.fve_threshold = pipe_fve;
      if (pipe_bw.is_auto())
      {
        options.auto_bandwidth = 1;
      }
      else
      {
        options.bandwidth = pipe_bw.value();
      }
      options.oracle_mean = pipe_oracle.empty() ? nullptr : pipe_oracle.c_str();
      options.log         = log_to_stderr;
      check(fdyn_pipeline_run(&options));
    }
  }
  catch (Failure const &f)
  {
    std::fprintf(stderr, "error [%s]: %s\n", fdyn_status_name(f.status),
                 fdyn_last_error_message());
    return f.status == FDYN_ERR_PARAMETER ? kExitUsage : kExitFailure;
  }
  return 0;
}
