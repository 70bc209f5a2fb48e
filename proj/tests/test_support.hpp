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

// Random fixtures shared by the unit and acceptance tests. These use the
// standard library engines, not fdyn's own generator, so fixture draws are
// independent of the code under test.

#include "fdyn/object_spaces.hpp"
#include "fdyn/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace fdyn::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng &rng, double lo = 0.0, double hi = 1.0)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double gaussian(Rng &rng, double mean = 0.0, double sd = 1.0)
{
  return std::normal_distribution<double>(mean, sd)(rng);
}

/// Random weighted network on r nodes with weights in [0, w_max).
inline GraphLaplacian random_laplacian(Rng &rng, std::size_t r, double w_max = 1.0)
{
  std::vector<double> adjacency(r * r, 0.0);
  for (std::size_t i = 0; i < r; ++i)
  {
    for (std::size_t j = i + 1; j < r; ++j)
    {
      double const w       = uniform(rng, 0.0, w_max);
      adjacency[i * r + j] = w;
      adjacency[j * r + i] = w;
    }
  }
  return GraphLaplacian::from_adjacency(r, adjacency);
}

/// Quantile function of a random law on `grid`: a sorted random shift
/// plus a nonnegative random increment profile.
inline QuantileDistribution random_quantile(Rng &rng, ProbabilityGrid const &grid)
{
  std::vector<double> values(grid.size());
  double              q = uniform(rng, -2.0, 2.0);
  for (auto &v : values)
  {
    q += uniform(rng, 0.0, 0.02);
    v = q;
  }
  return QuantileDistribution(grid, std::move(values));
}

inline PlanarShape random_shape(Rng &rng, std::size_t k)
{
  std::vector<std::complex<double>> z(k);
  for (auto &c : z)
  {
    c = {gaussian(rng), gaussian(rng)};
  }
  return PlanarShape::centered(std::move(z));
}

inline double max_abs_diff(std::vector<double> const &a, std::vector<double> const &b)
{
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

/// Ordinary least-squares slope of log y against log x.
inline double log_log_slope(std::vector<double> const &x, std::vector<double> const &y)
{
  double const n  = static_cast<double>(x.size());
  double       sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    double const lx = std::log(x[i]);
    double const ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Fresh empty directory under the system temp path.
inline std::filesystem::path scratch_dir(std::string const &name)
{
  auto dir = std::filesystem::temp_directory_path() / ("fdyn_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fdyn::testing
