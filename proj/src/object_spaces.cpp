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

#include "fdyn/object_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fdyn {

char const *error_code_name(ErrorCode code) noexcept
{
  switch (code)
  {
  case ErrorCode::dimension:
    return "DimensionError";
  case ErrorCode::grid:
    return "GridError";
  case ErrorCode::degenerate_shape:
    return "DegenerateShapeError";
  case ErrorCode::empty_input:
    return "EmptyInputError";
  case ErrorCode::convergence:
    return "ConvergenceError";
  case ErrorCode::numerical:
    return "NumericalError";
  case ErrorCode::insufficient_sample:
    return "InsufficientSampleError";
  case ErrorCode::parameter:
    return "ParameterError";
  case ErrorCode::config:
    return "ConfigError";
  case ErrorCode::invariant:
    return "InvariantError";
  case ErrorCode::parse:
    return "ParseError";
  case ErrorCode::io:
    return "IoError";
  }
  return "Error";
}

std::string_view to_string(SpaceKind kind) noexcept
{
  switch (kind)
  {
  case SpaceKind::network:
    return "network";
  case SpaceKind::distribution:
    return "distribution";
  case SpaceKind::shape:
    return "shape";
  }
  return "unknown";
}

std::string_view to_string(Metric metric) noexcept
{
  switch (metric)
  {
  case Metric::frobenius:
    return "frobenius";
  case Metric::wasserstein2:
    return "wasserstein2";
  case Metric::full_procrustes:
    return "full_procrustes";
  }
  return "unknown";
}

SpaceKind parse_space_kind(std::string_view name)
{
  if (name == "network")
  {
    return SpaceKind::network;
  }
  if (name == "distribution")
  {
    return SpaceKind::distribution;
  }
  if (name == "shape")
  {
    return SpaceKind::shape;
  }
  throw ParseError("unknown object space '" + std::string(name) + "'");
}

// --- GraphLaplacian ----------------------------------------------------------

GraphLaplacian::GraphLaplacian(std::size_t dim, std::vector<double> entries)
  : dim_(dim)
  , entries_(std::move(entries))
{
  if (dim_ == 0)
  {
    throw DimensionError("graph Laplacian needs at least one node");
  }
  if (entries_.size() != dim_ * dim_)
  {
    throw DimensionError("graph Laplacian of dimension " + std::to_string(dim_) + " needs " +
                         std::to_string(dim_ * dim_) + " entries, got " +
                         std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < dim_; ++i)
  {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < dim_; ++j)
    {
      double const v = entries_[i * dim_ + j];
      if (!std::isfinite(v))
      {
        throw InvariantError("graph Laplacian entry (" + std::to_string(i) + "," +
                             std::to_string(j) + ") is not finite");
      }
      if (v != entries_[j * dim_ + i])
      {
        throw InvariantError("graph Laplacian is not symmetric at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
      }
      if (i != j && v > 0.0)
      {
        throw InvariantError("graph Laplacian off-diagonal entry (" + std::to_string(i) + "," +
                             std::to_string(j) + ") is positive");
      }
      row_sum += v;
    }
    if (std::abs(row_sum) > kRowSumTolerance)
    {
      throw InvariantError("graph Laplacian row " + std::to_string(i) + " sums to " +
                           std::to_string(row_sum) + ", expected 0");
    }
  }
}

GraphLaplacian GraphLaplacian::from_adjacency(std::size_t dim, std::span<double const> adjacency)
{
  if (adjacency.size() != dim * dim)
  {
    throw DimensionError("adjacency matrix of dimension " + std::to_string(dim) + " needs " +
                         std::to_string(dim * dim) + " entries");
  }
  std::vector<double> lap(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i)
  {
    double degree = 0.0;
    for (std::size_t j = 0; j < dim; ++j)
    {
      if (i == j)
      {
        continue;
      }
      double const a = adjacency[i * dim + j];
      if (a < 0.0)
      {
        throw InvariantError("negative edge weight at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
      }
      lap[i * dim + j] = -a;
      degree += a;
    }
    lap[i * dim + i] = degree;
  }
  return {dim, std::move(lap)};
}

// --- ProbabilityGrid / QuantileDistribution ----------------------------------

ProbabilityGrid::ProbabilityGrid(std::vector<double> levels)
{
  if (levels.empty())
  {
    throw GridError("probability grid is empty");
  }
  for (std::size_t m = 0; m < levels.size(); ++m)
  {
    if (!(levels[m] > 0.0 && levels[m] < 1.0))
    {
      throw GridError("probability level " + std::to_string(m) + " is outside (0,1)");
    }
    if (m > 0 && !(levels[m] > levels[m - 1]))
    {
      throw GridError("probability grid is not strictly increasing at index " +
                      std::to_string(m));
    }
  }
  levels_ = std::make_shared<std::vector<double> const>(std::move(levels));
}

ProbabilityGrid ProbabilityGrid::midpoints(std::size_t count)
{
  std::vector<double> levels(count);
  for (std::size_t m = 0; m < count; ++m)
  {
    levels[m] = (static_cast<double>(m) + 0.5) / static_cast<double>(count);
  }
  return ProbabilityGrid(std::move(levels));
}

bool ProbabilityGrid::operator==(ProbabilityGrid const &other) const noexcept
{
  return levels_ == other.levels_ || *levels_ == *other.levels_;
}

QuantileDistribution::QuantileDistribution(ProbabilityGrid grid, std::vector<double> values)
  : grid_(std::move(grid))
  , values_(std::move(values))
{
  if (values_.size() != grid_.size())
  {
    throw DimensionError("quantile function has " + std::to_string(values_.size()) +
                         " values for a probability grid of " + std::to_string(grid_.size()));
  }
  for (std::size_t m = 0; m < values_.size(); ++m)
  {
    if (!std::isfinite(values_[m]))
    {
      throw InvariantError("quantile value " + std::to_string(m) + " is not finite");
    }
    if (m > 0 && values_[m] < values_[m - 1] - kMonotoneSlack)
    {
      throw InvariantError("quantile function must be nondecreasing; violated at index " +
                           std::to_string(m));
    }
  }
}

// --- PlanarShape -------------------------------------------------------------

PlanarShape::PlanarShape(std::vector<std::complex<double>> coords)
  : coords_(std::move(coords))
{
  if (coords_.empty())
  {
    throw DimensionError("planar shape needs at least one landmark");
  }
  std::complex<double> sum{0.0, 0.0};
  for (auto const &c : coords_)
  {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    {
      throw InvariantError("planar shape coordinate is not finite");
    }
    sum += c;
  }
  if (std::abs(sum) > kCenterTolerance)
  {
    throw InvariantError("planar shape is not centered (|sum| = " + std::to_string(std::abs(sum)) +
                         ")");
  }
  if (!(squared_norm() > 0.0))
  {
    throw DegenerateShapeError("planar shape has zero norm");
  }
}

PlanarShape PlanarShape::centered(std::vector<std::complex<double>> coords)
{
  if (coords.empty())
  {
    throw DimensionError("planar shape needs at least one landmark");
  }
  std::complex<double> sum{0.0, 0.0};
  for (auto const &c : coords)
  {
    sum += c;
  }
  auto const centroid = sum / static_cast<double>(coords.size());
  for (auto &c : coords)
  {
    c -= centroid;
  }
  return PlanarShape(std::move(coords));
}

double PlanarShape::squared_norm() const noexcept
{
  double s = 0.0;
  for (auto const &c : coords_)
  {
    s += std::norm(c);
  }
  return s;
}

// --- metrics -----------------------------------------------------------------

SpaceKind kind_of(Object const &object) noexcept
{
  switch (object.index())
  {
  case 0:
    return SpaceKind::network;
  case 1:
    return SpaceKind::distribution;
  default:
    return SpaceKind::shape;
  }
}

double squared_frobenius_distance(GraphLaplacian const &a, GraphLaplacian const &b)
{
  if (a.dim() != b.dim())
  {
    throw DimensionError("graph Laplacians have " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()) + " nodes");
  }
  auto const &ea = a.entries();
  auto const &eb = b.entries();
  double      s  = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i)
  {
    double const d = ea[i] - eb[i];
    s += d * d;
  }
  return s;
}

double frobenius_distance(GraphLaplacian const &a, GraphLaplacian const &b)
{
  return std::sqrt(squared_frobenius_distance(a, b));
}

double squared_wasserstein_distance(QuantileDistribution const &a, QuantileDistribution const &b)
{
  if (!(a.grid() == b.grid()))
  {
    throw GridError("quantile functions use different probability grids");
  }
  auto const &p  = a.grid().levels();
  auto const &qa = a.values();
  auto const &qb = b.values();
  std::size_t const count = p.size();

  auto integrand = [&](std::size_t m) {
    double const d = qa[m] - qb[m];
    return d * d;
  };

  double prev = integrand(0);
  double sum  = prev * p[0];
  for (std::size_t m = 1; m < count; ++m)
  {
    double const cur = integrand(m);
    sum += 0.5 * (prev + cur) * (p[m] - p[m - 1]);
    prev = cur;
  }
  sum += prev * (1.0 - p[count - 1]);
  return sum;
}

double wasserstein_distance(QuantileDistribution const &a, QuantileDistribution const &b)
{
  return std::sqrt(squared_wasserstein_distance(a, b));
}

double squared_procrustes_distance(PlanarShape const &y, PlanarShape const &z)
{
  if (y.landmarks() != z.landmarks())
  {
    throw DimensionError("planar shapes have " + std::to_string(y.landmarks()) + " and " +
                         std::to_string(z.landmarks()) + " landmarks");
  }
  double const yy = y.squared_norm();
  double const zz = z.squared_norm();
  if (!(yy > 0.0) || !(zz > 0.0))
  {
    throw DegenerateShapeError("full Procrustes distance of a zero-norm configuration");
  }
  if (y.coords() == z.coords())
  {
    return 0.0;
  }
  std::complex<double> inner{0.0, 0.0};
  for (std::size_t j = 0; j < y.landmarks(); ++j)
  {
    inner += std::conj(y.coords()[j]) * z.coords()[j];
  }
  double const d2 = 1.0 - std::norm(inner) / (yy * zz);
  return std::clamp(d2, 0.0, 1.0);
}

double procrustes_distance(PlanarShape const &y, PlanarShape const &z)
{
  return std::sqrt(squared_procrustes_distance(y, z));
}

double squared_distance(Object const &a, Object const &b)
{
  if (a.index() != b.index())
  {
    throw DimensionError("objects belong to different spaces (" +
                         std::string(to_string(kind_of(a))) + " vs " +
                         std::string(to_string(kind_of(b))) + ")");
  }
  switch (a.index())
  {
  case 0:
    return squared_frobenius_distance(std::get<0>(a), std::get<0>(b));
  case 1:
    return squared_wasserstein_distance(std::get<1>(a), std::get<1>(b));
  default:
    return squared_procrustes_distance(std::get<2>(a), std::get<2>(b));
  }
}

double distance(Object const &a, Object const &b)
{
  return std::sqrt(squared_distance(a, b));
}

double frechet_functional(std::span<Object const *const> objects, Object const &omega)
{
  if (objects.empty())
  {
    throw EmptyInputError("Frechet functional of an empty sample");
  }
  double sum = 0.0;
  for (auto const *x : objects)
  {
    sum += squared_distance(*x, omega);
  }
  return sum / static_cast<double>(objects.size());
}

namespace {

std::vector<Object const *> pointers_to(std::span<Object const> objects)
{
  std::vector<Object const *> out;
  out.reserve(objects.size());
  for (auto const &o : objects)
  {
    out.push_back(&o);
  }
  return out;
}

void check_homogeneous(std::span<Object const *const> objects, ObjectSpaceTag tag)
{
  for (std::size_t i = 0; i < objects.size(); ++i)
  {
    if (kind_of(*objects[i]) != tag.kind)
    {
      throw DimensionError("object " + std::to_string(i) + " is a " +
                           std::string(to_string(kind_of(*objects[i]))) + ", expected a " +
                           std::string(to_string(tag.kind)));
    }
  }
}

GraphLaplacian mean_network(std::span<Object const *const> objects)
{
  auto const &first = std::get<GraphLaplacian>(*objects[0]);
  std::size_t const dim = first.dim();
  std::vector<double> sum(dim * dim, 0.0);
  for (auto const *o : objects)
  {
    auto const &lap = std::get<GraphLaplacian>(*o);
    if (lap.dim() != dim)
    {
      throw DimensionError("graph Laplacians in a slice have different node counts");
    }
    auto const &e = lap.entries();
    for (std::size_t q = 0; q < sum.size(); ++q)
    {
      sum[q] += e[q];
    }
  }
  double const n = static_cast<double>(objects.size());
  for (auto &v : sum)
  {
    v /= n;
  }
  return {dim, std::move(sum)};
}

QuantileDistribution mean_distribution(std::span<Object const *const> objects)
{
  auto const &first = std::get<QuantileDistribution>(*objects[0]);
  std::vector<double> sum(first.values().size(), 0.0);
  for (auto const *o : objects)
  {
    auto const &q = std::get<QuantileDistribution>(*o);
    if (!(q.grid() == first.grid()))
    {
      throw GridError("quantile functions in a slice use different probability grids");
    }
    for (std::size_t m = 0; m < sum.size(); ++m)
    {
      sum[m] += q.values()[m];
    }
  }
  double const n = static_cast<double>(objects.size());
  for (auto &v : sum)
  {
    v /= n;
  }
  return {first.grid(), std::move(sum)};
}

using CVector = std::vector<std::complex<double>>;

double normalize(CVector &v)
{
  double s = 0.0;
  for (auto const &c : v)
  {
    s += std::norm(c);
  }
  double const norm = std::sqrt(s);
  for (auto &c : v)
  {
    c /= norm;
  }
  return norm;
}

std::complex<double> inner(CVector const &a, CVector const &b)
{
  std::complex<double> s{0.0, 0.0};
  for (std::size_t j = 0; j < a.size(); ++j)
  {
    s += std::conj(a[j]) * b[j];
  }
  return s;
}

// out = sum_i z_i (z_i^* v) / (z_i^* z_i)
void apply_shape_operator(std::span<PlanarShape const *const> shapes,
                          std::span<double const> norms2, CVector const &v, CVector &out)
{
  std::fill(out.begin(), out.end(), std::complex<double>{0.0, 0.0});
  for (std::size_t i = 0; i < shapes.size(); ++i)
  {
    auto const &z = shapes[i]->coords();
    std::complex<double> proj{0.0, 0.0};
    for (std::size_t j = 0; j < z.size(); ++j)
    {
      proj += std::conj(z[j]) * v[j];
    }
    proj /= norms2[i];
    for (std::size_t j = 0; j < z.size(); ++j)
    {
      out[j] += z[j] * proj;
    }
  }
}

struct PowerResult
{
  CVector vector;
  double  rayleigh;
};

PowerResult power_iterate(std::span<PlanarShape const *const> shapes,
                          std::span<double const> norms2, CVector start,
                          ProcrustesMeanOptions const &options)
{
  normalize(start);
  CVector v = std::move(start);
  CVector w(v.size());
  for (std::size_t it = 1; it <= options.max_iterations; ++it)
  {
    apply_shape_operator(shapes, norms2, v, w);
    double const rayleigh = inner(v, w).real();
    normalize(w);
    // Remove the arbitrary phase before comparing successive iterates.
    auto const phase = inner(v, w);
    double const mag = std::abs(phase);
    if (mag > 0.0)
    {
      auto const rot = std::conj(phase) / mag;
      for (auto &c : w)
      {
        c *= rot;
      }
    }
    double change = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j)
    {
      change = std::max(change, std::abs(w[j] - v[j]));
    }
    std::swap(v, w);
    if (change < options.tolerance)
    {
      return {std::move(v), rayleigh};
    }
  }
  throw ConvergenceError("full Procrustes mean: power iteration did not converge within " +
                             std::to_string(options.max_iterations) + " iterations",
                         options.max_iterations);
}

PlanarShape mean_shape(std::span<Object const *const> objects,
                       ProcrustesMeanOptions const &options)
{
  std::vector<PlanarShape const *> shapes;
  std::vector<double>              norms2;
  shapes.reserve(objects.size());
  norms2.reserve(objects.size());
  std::size_t const k = std::get<PlanarShape>(*objects[0]).landmarks();
  for (auto const *o : objects)
  {
    auto const &s = std::get<PlanarShape>(*o);
    if (s.landmarks() != k)
    {
      throw DimensionError("planar shapes in a slice have different landmark counts");
    }
    shapes.push_back(&s);
    norms2.push_back(s.squared_norm());
  }

  CVector start = shapes[0]->coords();
  auto    result = power_iterate(shapes, norms2, start, options);

  // The Rayleigh quotient of every normalized sample shape bounds the top
  // eigenvalue from below. Falling short means the start vector had no
  // component along the dominant eigenspace; restart from the best sample.
  double      best_rayleigh = -1.0;
  std::size_t best_index    = 0;
  CVector     tmp(k);
  for (std::size_t i = 0; i < shapes.size(); ++i)
  {
    CVector z = shapes[i]->coords();
    normalize(z);
    apply_shape_operator(shapes, norms2, z, tmp);
    double const rq = inner(z, tmp).real();
    if (rq > best_rayleigh)
    {
      best_rayleigh = rq;
      best_index    = i;
    }
  }
  if (result.rayleigh < best_rayleigh - 1e-10 * best_rayleigh)
  {
    CVector restart = shapes[best_index]->coords();
    normalize(restart);
    restart[0] += 1e-8;
    result = power_iterate(shapes, norms2, std::move(restart), options);
  }

  CVector &mean = result.vector;
  std::complex<double> centroid{0.0, 0.0};
  for (auto const &c : mean)
  {
    centroid += c;
  }
  centroid /= static_cast<double>(k);
  for (auto &c : mean)
  {
    c -= centroid;
  }
  normalize(mean);
  auto const phase = inner(mean, shapes[0]->coords());
  if (std::abs(phase) > 0.0)
  {
    auto const rot = phase / std::abs(phase);
    for (auto &c : mean)
    {
      c *= rot;
    }
  }
  return PlanarShape(std::move(mean));
}

}  // namespace

double frechet_functional(std::span<Object const> objects, Object const &omega)
{
  auto const ptrs = pointers_to(objects);
  return frechet_functional(std::span<Object const *const>(ptrs), omega);
}

Object pointwise_frechet_mean(std::span<Object const *const> objects, ObjectSpaceTag tag,
                              ProcrustesMeanOptions const &options)
{
  if (objects.empty())
  {
    throw EmptyInputError("Frechet mean of an empty slice");
  }
  check_homogeneous(objects, tag);
  switch (tag.kind)
  {
  case SpaceKind::network:
    return mean_network(objects);
  case SpaceKind::distribution:
    return mean_distribution(objects);
  case SpaceKind::shape:
    return mean_shape(objects, options);
  }
  throw DimensionError("unknown object space");
}

Object pointwise_frechet_mean(std::span<Object const> objects, ObjectSpaceTag tag,
                              ProcrustesMeanOptions const &options)
{
  auto const ptrs = pointers_to(objects);
  return pointwise_frechet_mean(std::span<Object const *const>(ptrs), tag, options);
}

CandidateMean candidate_frechet_mean(std::span<Object const> objects,
                                     std::span<Object const> candidates, ObjectSpaceTag tag)
{
  if (objects.empty())
  {
    throw EmptyInputError("candidate Frechet mean of an empty sample");
  }
  if (candidates.empty())
  {
    throw EmptyInputError("candidate Frechet mean needs at least one candidate");
  }
  auto const ptrs = pointers_to(objects);
  check_homogeneous(ptrs, tag);
  std::size_t best_index = 0;
  double      best_value = 0.0;
  for (std::size_t c = 0; c < candidates.size(); ++c)
  {
    if (kind_of(candidates[c]) != tag.kind)
    {
      throw DimensionError("candidate " + std::to_string(c) + " is not a " +
                           std::string(to_string(tag.kind)));
    }
    double const value = frechet_functional(std::span<Object const *const>(ptrs), candidates[c]);
    if (c == 0 || value < best_value)
    {
      best_value = value;
      best_index = c;
    }
  }
  return {candidates[best_index], best_value, best_index};
}

}  // namespace fdyn
