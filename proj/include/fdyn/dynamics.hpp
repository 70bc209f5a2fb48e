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

// Empirical dynamics of centered variance trajectories W(t) = V(t) - nu(t):
// the pointwise linear model W'(t) = beta(t) W(t) + Z(t).

#include "fdyn/matrix.hpp"
#include "fdyn/trajectory.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace fdyn {

enum class Regime
{
  centripetal,  // beta < 0: deviations shrink
  centrifugal,  // beta > 0: deviations grow
  undefined,
};

std::string_view to_string(Regime regime) noexcept;
Regime           parse_regime(std::string_view name);

struct DynamicsResult
{
  TimeGrid            grid;
  std::vector<double> beta;       // NaN where undefined
  std::vector<double> r_squared;  // NaN where undefined
  std::vector<double> drift_var;  // NaN where undefined
  std::vector<Regime> regime;
  double              bandwidth{0.0};
};

inline constexpr double kDynamicsVarianceFloor = 1e-12;

/// Default smoothing bandwidth, 10% of the time span.
double default_bandwidth(TimeGrid const &grid) noexcept;

/// Local-linear Gaussian-kernel smoother applied to each row, evaluated on
/// the same grid. bandwidth == 0 returns the input unchanged.
Matrix smooth_trajectories(Matrix const &values, TimeGrid const &grid, double bandwidth);

/// Three-point finite differences on a non-uniform grid: centered in the
/// interior, one-sided second-order at both ends.
Matrix derivative_trajectories(Matrix const &values, TimeGrid const &grid);
std::vector<double> derivative(std::span<double const> f, TimeGrid const &grid);

/// Moment-ratio fit at every grid point, divisor n:
///   beta = cov(W, W') / var(W),  var Z = var(W') - beta^2 var(W),
///   R^2 = cov^2 / (var(W) var(W')).
/// Points where var(W) or var(W') fall below 1e-12 are flagged undefined.
DynamicsResult dynamics_fit(TimeGrid const &grid, Matrix const &v, Matrix const &dv,
                            std::span<double const> nu_hat, std::span<double const> dnu_hat);

/// Smooth, differentiate and fit in one call.
DynamicsResult empirical_dynamics(VarianceMatrix const &v, double bandwidth);

}  // namespace fdyn
