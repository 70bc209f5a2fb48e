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

// Concrete object spaces: weighted networks as graph Laplacians under the
// Frobenius metric, univariate distributions as quantile functions under the
// 2-Wasserstein metric, and planar landmark shapes under the full Procrustes
// metric. All types validate their invariants on construction and are
// immutable afterwards.

#include "fdyn/errors.hpp"

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace fdyn {

enum class SpaceKind
{
  network,
  distribution,
  shape,
};

enum class Metric
{
  frobenius,
  wasserstein2,
  full_procrustes,
};

struct ObjectSpaceTag
{
  SpaceKind kind{SpaceKind::network};

  constexpr Metric metric() const noexcept
  {
    switch (kind)
    {
    case SpaceKind::network:
      return Metric::frobenius;
    case SpaceKind::distribution:
      return Metric::wasserstein2;
    case SpaceKind::shape:
      return Metric::full_procrustes;
    }
    return Metric::frobenius;
  }

  bool operator==(ObjectSpaceTag const &) const = default;
};

std::string_view to_string(SpaceKind kind) noexcept;
std::string_view to_string(Metric metric) noexcept;
SpaceKind        parse_space_kind(std::string_view name);

/// r x r graph Laplacian L = D - A of a weighted undirected network.
class GraphLaplacian
{
public:
  static constexpr double kRowSumTolerance = 1e-9;

  /// Validates symmetry (bit-exact), zero row sums and nonpositive
  /// off-diagonal entries.
  GraphLaplacian(std::size_t dim, std::vector<double> entries);

  /// Builds D - A from a symmetric nonnegative adjacency matrix. The
  /// adjacency diagonal is ignored.
  static GraphLaplacian from_adjacency(std::size_t dim, std::span<double const> adjacency);

  std::size_t dim() const noexcept
  {
    return dim_;
  }
  std::vector<double> const &entries() const noexcept
  {
    return entries_;
  }
  double operator()(std::size_t i, std::size_t j) const noexcept
  {
    return entries_[i * dim_ + j];
  }

  bool operator==(GraphLaplacian const &) const = default;

private:
  std::size_t         dim_;
  std::vector<double> entries_;
};

/// Strictly increasing probability levels in (0, 1), shared by every
/// distribution of a sample.
class ProbabilityGrid
{
public:
  explicit ProbabilityGrid(std::vector<double> levels);

  /// M midpoints (m + 1/2) / M.
  static ProbabilityGrid midpoints(std::size_t count);

  std::size_t size() const noexcept
  {
    return levels_->size();
  }
  std::vector<double> const &levels() const noexcept
  {
    return *levels_;
  }

  bool operator==(ProbabilityGrid const &other) const noexcept;

private:
  std::shared_ptr<std::vector<double> const> levels_;
};

/// A univariate distribution represented by its quantile function on a
/// probability grid.
class QuantileDistribution
{
public:
  static constexpr double kMonotoneSlack = 1e-12;

  QuantileDistribution(ProbabilityGrid grid, std::vector<double> values);

  ProbabilityGrid const &grid() const noexcept
  {
    return grid_;
  }
  std::vector<double> const &values() const noexcept
  {
    return values_;
  }

  bool operator==(QuantileDistribution const &) const = default;

private:
  ProbabilityGrid     grid_;
  std::vector<double> values_;
};

/// Centered configuration of k planar landmarks stored as complex numbers.
class PlanarShape
{
public:
  static constexpr double kCenterTolerance = 1e-9;

  explicit PlanarShape(std::vector<std::complex<double>> coords);

  /// Subtracts the centroid before validating.
  static PlanarShape centered(std::vector<std::complex<double>> coords);

  std::size_t landmarks() const noexcept
  {
    return coords_.size();
  }
  std::vector<std::complex<double>> const &coords() const noexcept
  {
    return coords_;
  }
  double squared_norm() const noexcept;

  bool operator==(PlanarShape const &) const = default;

private:
  std::vector<std::complex<double>> coords_;
};

using Object = std::variant<GraphLaplacian, QuantileDistribution, PlanarShape>;

SpaceKind kind_of(Object const &object) noexcept;

double frobenius_distance(GraphLaplacian const &a, GraphLaplacian const &b);
double squared_frobenius_distance(GraphLaplacian const &a, GraphLaplacian const &b);

/// Trapezoid rule over the probability grid, with the integrand held
/// constant on [0, p_0] and [p_{M-1}, 1].
double wasserstein_distance(QuantileDistribution const &a, QuantileDistribution const &b);
double squared_wasserstein_distance(QuantileDistribution const &a, QuantileDistribution const &b);

/// Full Procrustes distance {1 - |<y,z>|^2 / (|y|^2 |z|^2)}^{1/2}, in [0, 1].
double procrustes_distance(PlanarShape const &y, PlanarShape const &z);
double squared_procrustes_distance(PlanarShape const &y, PlanarShape const &z);

/// Metric of the space both objects belong to. Objects of different
/// kinds raise DimensionError.
double distance(Object const &a, Object const &b);
double squared_distance(Object const &a, Object const &b);

/// (1/n) sum_i d^2(objects_i, omega), summed left to right.
double frechet_functional(std::span<Object const *const> objects, Object const &omega);
double frechet_functional(std::span<Object const> objects, Object const &omega);

struct ProcrustesMeanOptions
{
  double      tolerance      = 1e-12;
  std::size_t max_iterations = 10000;
};

/// Sample Frechet mean of a single time slice. Networks and distributions
/// use their closed forms (entrywise / pointwise averages). Shapes use the
/// full Procrustes mean: the dominant eigenvector of
/// sum_i z_i z_i^* / (z_i^* z_i), found by power iteration, returned
/// centered with unit norm and rotated so that <z_1, mean> is real positive.
Object pointwise_frechet_mean(std::span<Object const *const> objects, ObjectSpaceTag tag,
                              ProcrustesMeanOptions const &options = {});
Object pointwise_frechet_mean(std::span<Object const> objects, ObjectSpaceTag tag,
                              ProcrustesMeanOptions const &options = {});

struct CandidateMean
{
  Object      object;
  double      functional;
  std::size_t index;
};

/// Minimizer of the sample Frechet functional over a finite candidate set.
/// Ties go to the lowest candidate index.
CandidateMean candidate_frechet_mean(std::span<Object const> objects,
                                     std::span<Object const> candidates, ObjectSpaceTag tag);

}  // namespace fdyn
