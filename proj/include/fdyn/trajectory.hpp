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

#include "fdyn/matrix.hpp"
#include "fdyn/object_spaces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fdyn {

/// Strictly increasing time points with trapezoid quadrature weights.
class TimeGrid
{
public:
  explicit TimeGrid(std::vector<double> points);

  /// m equally spaced points spanning [first, last].
  static TimeGrid uniform(std::size_t m, double first = 0.0, double last = 1.0);

  std::size_t size() const noexcept
  {
    return points_.size();
  }
  std::vector<double> const &points() const noexcept
  {
    return points_;
  }
  std::vector<double> const &weights() const noexcept
  {
    return weights_;
  }
  double first() const noexcept
  {
    return points_.front();
  }
  double last() const noexcept
  {
    return points_.back();
  }
  double span() const noexcept
  {
    return points_.back() - points_.front();
  }

  bool operator==(TimeGrid const &other) const noexcept
  {
    return points_ == other.points_;
  }

private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// n subjects observed at every point of a common time grid.
struct SubjectTrajectory
{
  std::string         id;
  std::string         group;  // empty when unlabeled
  std::vector<Object> objects;
};

class ObjectTrajectorySample
{
public:
  /// Validates that every subject has one object per grid point, that all
  /// objects belong to the tagged space and share dimensions (and, for
  /// distributions, the probability grid).
  ObjectTrajectorySample(ObjectSpaceTag tag, TimeGrid grid, std::vector<SubjectTrajectory> subjects);

  ObjectSpaceTag tag() const noexcept
  {
    return tag_;
  }
  TimeGrid const &grid() const noexcept
  {
    return grid_;
  }
  std::size_t size() const noexcept
  {
    return subjects_.size();
  }
  std::vector<SubjectTrajectory> const &subjects() const noexcept
  {
    return subjects_;
  }
  SubjectTrajectory const &subject(std::size_t i) const
  {
    return subjects_.at(i);
  }
  Object const &at(std::size_t subject, std::size_t k) const
  {
    return subjects_[subject].objects[k];
  }
  bool has_groups() const noexcept;

  /// Pointers to the n objects observed at grid index k, in subject order.
  std::vector<Object const *> slice(std::size_t k) const;

private:
  ObjectSpaceTag                 tag_;
  TimeGrid                       grid_;
  std::vector<SubjectTrajectory> subjects_;
};

enum class MeanProvenance
{
  estimated,
  supplied_oracle,
};

struct MeanTrajectory
{
  ObjectSpaceTag      tag;
  TimeGrid            grid;
  std::vector<Object> objects;
  MeanProvenance      provenance{MeanProvenance::estimated};
};

/// Square distances of each subject from a mean trajectory, n x m.
struct VarianceMatrix
{
  TimeGrid                 grid;
  Matrix                   values;
  bool                     oracle{false};
  std::vector<std::string> ids;
  std::vector<std::string> groups;  // empty, or one label per subject

  VarianceMatrix(TimeGrid grid, Matrix values, bool oracle = false,
                 std::vector<std::string> ids = {}, std::vector<std::string> groups = {});

  std::size_t subjects() const noexcept
  {
    return values.rows();
  }
};

/// Validates and wraps an externally supplied mean (e.g. a known
/// population mean) as an oracle baseline for variance_trajectories.
MeanTrajectory make_oracle_mean(ObjectSpaceTag tag, TimeGrid grid, std::vector<Object> objects);

/// Frechet mean at every grid point, each computed independently.
MeanTrajectory frechet_mean_trajectory(ObjectTrajectorySample const &sample,
                                       ProcrustesMeanOptions const &options = {});

/// values[i][k] = d^2(X_i(t_k), mean(t_k)); the oracle flag follows the
/// mean's provenance.
VarianceMatrix variance_trajectories(ObjectTrajectorySample const &sample,
                                     MeanTrajectory const &mean);

}  // namespace fdyn
