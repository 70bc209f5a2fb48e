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

#include "fdyn/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace fdyn {

TimeGrid::TimeGrid(std::vector<double> points)
  : points_(std::move(points))
{
  std::size_t const m = points_.size();
  if (m < 2)
  {
    throw GridError("time grid needs at least 2 points, got " + std::to_string(m));
  }
  for (std::size_t k = 0; k < m; ++k)
  {
    if (!std::isfinite(points_[k]))
    {
      throw GridError("time point " + std::to_string(k) + " is not finite");
    }
    if (k > 0 && !(points_[k] > points_[k - 1]))
    {
      throw GridError("time grid is not strictly increasing at index " + std::to_string(k));
    }
  }
  weights_.resize(m);
  weights_[0]     = 0.5 * (points_[1] - points_[0]);
  weights_[m - 1] = 0.5 * (points_[m - 1] - points_[m - 2]);
  for (std::size_t k = 1; k + 1 < m; ++k)
  {
    weights_[k] = 0.5 * (points_[k + 1] - points_[k - 1]);
  }
}

TimeGrid TimeGrid::uniform(std::size_t m, double first, double last)
{
  if (m < 2)
  {
    throw GridError("time grid needs at least 2 points, got " + std::to_string(m));
  }
  if (!(last > first))
  {
    throw GridError("time grid end must exceed its start");
  }
  std::vector<double> points(m);
  double const        step = (last - first) / static_cast<double>(m - 1);
  for (std::size_t k = 0; k < m; ++k)
  {
    points[k] = first + step * static_cast<double>(k);
  }
  points[m - 1] = last;
  return TimeGrid(std::move(points));
}

namespace {

void check_same_space(Object const &reference, Object const &o, std::string const &where)
{
  if (o.index() != reference.index())
  {
    throw DimensionError(where + ": object is a " + std::string(to_string(kind_of(o))) +
                         ", sample holds " + std::string(to_string(kind_of(reference))));
  }
  switch (o.index())
  {
  case 0:
    if (std::get<0>(o).dim() != std::get<0>(reference).dim())
    {
      throw DimensionError(where + ": graph Laplacian has " + std::to_string(std::get<0>(o).dim()) +
                           " nodes, expected " + std::to_string(std::get<0>(reference).dim()));
    }
    break;
  case 1:
    if (!(std::get<1>(o).grid() == std::get<1>(reference).grid()))
    {
      throw GridError(where + ": quantile function uses a different probability grid");
    }
    break;
  default:
    if (std::get<2>(o).landmarks() != std::get<2>(reference).landmarks())
    {
      throw DimensionError(where + ": shape has " + std::to_string(std::get<2>(o).landmarks()) +
                           " landmarks, expected " +
                           std::to_string(std::get<2>(reference).landmarks()));
    }
    break;
  }
}

}  // namespace

ObjectTrajectorySample::ObjectTrajectorySample(ObjectSpaceTag tag, TimeGrid grid,
                                               std::vector<SubjectTrajectory> subjects)
  : tag_(tag)
  , grid_(std::move(grid))
  , subjects_(std::move(subjects))
{
  if (subjects_.empty())
  {
    throw EmptyInputError("object trajectory sample has no subjects");
  }
  std::size_t const m = grid_.size();
  bool const        labeled = !subjects_[0].group.empty();
  if (subjects_[0].objects.size() != m)
  {
    throw DimensionError("subject '" + subjects_[0].id + "' has " +
                         std::to_string(subjects_[0].objects.size()) + " objects, expected " +
                         std::to_string(m));
  }
  Object const &reference = subjects_[0].objects[0];
  for (std::size_t i = 0; i < subjects_.size(); ++i)
  {
    auto const &s = subjects_[i];
    if (s.objects.size() != m)
    {
      throw DimensionError("subject '" + s.id + "' has " + std::to_string(s.objects.size()) +
                           " objects, expected " + std::to_string(m));
    }
    if (s.group.empty() == labeled)
    {
      throw ConfigError("group labels must be given for all subjects or none (subject '" + s.id +
                        "')");
    }
    for (std::size_t k = 0; k < m; ++k)
    {
      std::string const where = "subject '" + s.id + "', grid index " + std::to_string(k);
      if (kind_of(s.objects[k]) != tag_.kind)
      {
        throw DimensionError(where + ": object is a " +
                             std::string(to_string(kind_of(s.objects[k]))) + ", sample is " +
                             std::string(to_string(tag_.kind)));
      }
      check_same_space(reference, s.objects[k], where);
    }
  }
}

bool ObjectTrajectorySample::has_groups() const noexcept
{
  return !subjects_.front().group.empty();
}

std::vector<Object const *> ObjectTrajectorySample::slice(std::size_t k) const
{
  std::vector<Object const *> out;
  out.reserve(subjects_.size());
  for (auto const &s : subjects_)
  {
    out.push_back(&s.objects[k]);
  }
  return out;
}

VarianceMatrix::VarianceMatrix(TimeGrid grid_, Matrix values_, bool oracle_,
                               std::vector<std::string> ids_, std::vector<std::string> groups_)
  : grid(std::move(grid_))
  , values(std::move(values_))
  , oracle(oracle_)
  , ids(std::move(ids_))
  , groups(std::move(groups_))
{
  if (values.cols() != grid.size())
  {
    throw DimensionError("variance matrix has " + std::to_string(values.cols()) +
                         " columns for a grid of " + std::to_string(grid.size()));
  }
  if (values.rows() == 0)
  {
    throw EmptyInputError("variance matrix has no subjects");
  }
  if (ids.empty())
  {
    for (std::size_t i = 0; i < values.rows(); ++i)
    {
      ids.push_back("s" + std::to_string(i + 1));
    }
  }
  if (ids.size() != values.rows())
  {
    throw DimensionError("variance matrix has " + std::to_string(values.rows()) + " rows but " +
                         std::to_string(ids.size()) + " subject ids");
  }
  if (!groups.empty() && groups.size() != values.rows())
  {
    throw DimensionError("variance matrix group labels do not match its rows");
  }
  for (double v : values.data())
  {
    if (!(v >= 0.0) || !std::isfinite(v))
    {
      throw InvariantError("variance entries must be finite and nonnegative");
    }
  }
}

MeanTrajectory make_oracle_mean(ObjectSpaceTag tag, TimeGrid grid, std::vector<Object> objects)
{
  if (objects.size() != grid.size())
  {
    throw DimensionError("mean trajectory has " + std::to_string(objects.size()) +
                         " objects for a grid of " + std::to_string(grid.size()));
  }
  for (std::size_t k = 0; k < objects.size(); ++k)
  {
    if (kind_of(objects[k]) != tag.kind)
    {
      throw DimensionError("mean object at grid index " + std::to_string(k) +
                           " is not a " + std::string(to_string(tag.kind)));
    }
  }
  return {tag, std::move(grid), std::move(objects), MeanProvenance::supplied_oracle};
}

MeanTrajectory frechet_mean_trajectory(ObjectTrajectorySample const &sample,
                                       ProcrustesMeanOptions const &options)
{
  std::size_t const   m = sample.grid().size();
  std::vector<Object> objects;
  objects.reserve(m);
  for (std::size_t k = 0; k < m; ++k)
  {
    auto const slice = sample.slice(k);
    try
    {
      objects.push_back(pointwise_frechet_mean(slice, sample.tag(), options));
    }
    catch (ConvergenceError const &e)
    {
      throw ConvergenceError("grid index " + std::to_string(k) + ": " + e.what(), e.iterations());
    }
    catch (Error const &e)
    {
      throw Error(e.code(), "grid index " + std::to_string(k) + ": " + e.what());
    }
  }
  return {sample.tag(), sample.grid(), std::move(objects), MeanProvenance::estimated};
}

VarianceMatrix variance_trajectories(ObjectTrajectorySample const &sample,
                                     MeanTrajectory const &mean)
{
  if (!(mean.grid == sample.grid()))
  {
    throw GridError("mean trajectory and sample use different time grids");
  }
  if (!(mean.tag == sample.tag()))
  {
    throw GridError("mean trajectory and sample belong to different object spaces");
  }
  std::size_t const n = sample.size();
  std::size_t const m = sample.grid().size();
  Matrix            values(n, m);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t k = 0; k < m; ++k)
    {
      double v = 0.0;
      try
      {
        v = squared_distance(sample.at(i, k), mean.objects[k]);
      }
      catch (Error const &e)
      {
        throw GridError("subject '" + sample.subject(i).id + "', grid index " +
                        std::to_string(k) + ": " + e.what());
      }
      values(i, k) = std::max(v, 0.0);
    }
  }
  std::vector<std::string> ids;
  std::vector<std::string> groups;
  ids.reserve(n);
  for (auto const &s : sample.subjects())
  {
    ids.push_back(s.id);
    if (sample.has_groups())
    {
      groups.push_back(s.group);
    }
  }
  return {sample.grid(), std::move(values), mean.provenance == MeanProvenance::supplied_oracle,
          std::move(ids), std::move(groups)};
}

}  // namespace fdyn
