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

#include "fdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fdyn {

std::string_view to_string(Regime regime) noexcept
{
  switch (regime)
  {
  case Regime::centripetal:
    return "centripetal";
  case Regime::centrifugal:
    return "centrifugal";
  case Regime::undefined:
    return "undefined";
  }
  return "undefined";
}

Regime parse_regime(std::string_view name)
{
  if (name == "centripetal")
  {
    return Regime::centripetal;
  }
  if (name == "centrifugal")
  {
    return Regime::centrifugal;
  }
  if (name == "undefined")
  {
    return Regime::undefined;
  }
  throw ParseError("unknown regime label '" + std::string(name) + "'");
}

double default_bandwidth(TimeGrid const &grid) noexcept
{
  return 0.1 * grid.span();
}

Matrix smooth_trajectories(Matrix const &values, TimeGrid const &grid, double bandwidth)
{
  if (!(bandwidth >= 0.0) || !std::isfinite(bandwidth))
  {
    throw ParameterError("smoothing bandwidth must be finite and nonnegative");
  }
  std::size_t const m = grid.size();
  if (values.cols() != m)
  {
    throw DimensionError("trajectories have " + std::to_string(values.cols()) +
                         " columns for a grid of " + std::to_string(m));
  }
  if (bandwidth == 0.0)
  {
    return values;
  }

  // Row k of `smoother` holds the local-linear equivalent kernel at t_k.
  auto const &t = grid.points();
  Matrix      smoother(m, m);
  std::vector<double> kern(m);
  for (std::size_t k = 0; k < m; ++k)
  {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < m; ++j)
    {
      double const d = t[j] - t[k];
      double const u = d / bandwidth;
      kern[j]        = std::exp(-0.5 * u * u);
      s0 += kern[j];
      s1 += kern[j] * d;
      s2 += kern[j] * d * d;
    }
    double const det = s0 * s2 - s1 * s1;
    if (!(det > 0.0))
    {
      throw NumericalError("local-linear smoother is singular at t = " + std::to_string(t[k]) +
                           "; bandwidth too small for the grid");
    }
    for (std::size_t j = 0; j < m; ++j)
    {
      double const d = t[j] - t[k];
      smoother(k, j) = kern[j] * (s2 - s1 * d) / det;
    }
  }

  Matrix out(values.rows(), m);
  for (std::size_t i = 0; i < values.rows(); ++i)
  {
    auto const y = values.row(i);
    for (std::size_t k = 0; k < m; ++k)
    {
      auto const row = smoother.row(k);
      double     s   = 0.0;
      for (std::size_t j = 0; j < m; ++j)
      {
        s += row[j] * y[j];
      }
      out(i, k) = s;
    }
  }
  return out;
}

std::vector<double> derivative(std::span<double const> f, TimeGrid const &grid)
{
  std::size_t const m = grid.size();
  if (m < 3)
  {
    throw GridError("derivatives need at least 3 grid points, got " + std::to_string(m));
  }
  if (f.size() != m)
  {
    throw DimensionError("trajectory length does not match the grid");
  }
  // Derivatives of the interpolating quadratic, in divided-difference form
  // so that constants differentiate to exactly zero.
  auto const         &t = grid.points();
  std::vector<double> d(m);
  auto slope = [&](std::size_t k) { return (f[k + 1] - f[k]) / (t[k + 1] - t[k]); };
  {
    double const h1 = t[1] - t[0];
    double const h2 = t[2] - t[1];
    double const s1 = slope(0);
    double const s2 = slope(1);
    d[0]            = s1 - h1 * (s2 - s1) / (h1 + h2);
  }
  for (std::size_t k = 1; k + 1 < m; ++k)
  {
    double const h1 = t[k] - t[k - 1];
    double const h2 = t[k + 1] - t[k];
    d[k]            = (h2 * slope(k - 1) + h1 * slope(k)) / (h1 + h2);
  }
  {
    double const h1 = t[m - 2] - t[m - 3];
    double const h2 = t[m - 1] - t[m - 2];
    double const s1 = slope(m - 3);
    double const s2 = slope(m - 2);
    d[m - 1]        = s2 + h2 * (s2 - s1) / (h1 + h2);
  }
  return d;
}

Matrix derivative_trajectories(Matrix const &values, TimeGrid const &grid)
{
  if (grid.size() < 3)
  {
    throw GridError("derivatives need at least 3 grid points, got " + std::to_string(grid.size()));
  }
  Matrix out(values.rows(), values.cols());
  for (std::size_t i = 0; i < values.rows(); ++i)
  {
    auto const d = derivative(values.row(i), grid);
    std::copy(d.begin(), d.end(), out.row(i).begin());
  }
  return out;
}

DynamicsResult dynamics_fit(TimeGrid const &grid, Matrix const &v, Matrix const &dv,
                            std::span<double const> nu_hat, std::span<double const> dnu_hat)
{
  std::size_t const n = v.rows();
  std::size_t const m = grid.size();
  if (v.cols() != m || dv.cols() != m || dv.rows() != n || nu_hat.size() != m ||
      dnu_hat.size() != m)
  {
    throw DimensionError("dynamics_fit: inconsistent trajectory, derivative and mean shapes");
  }
  if (n < 2)
  {
    throw InsufficientSampleError("empirical dynamics needs at least 2 subjects, got " +
                                  std::to_string(n));
  }
  double const nan = std::numeric_limits<double>::quiet_NaN();
  DynamicsResult out{grid, std::vector<double>(m, nan), std::vector<double>(m, nan),
                     std::vector<double>(m, nan), std::vector<Regime>(m, Regime::undefined), 0.0};
  double const inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < m; ++k)
  {
    double sww = 0.0, swd = 0.0, sdd = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      double const w  = v(i, k) - nu_hat[k];
      double const wd = dv(i, k) - dnu_hat[k];
      sww += w * w;
      swd += w * wd;
      sdd += wd * wd;
    }
    double const var_w  = sww * inv_n;
    double const cov    = swd * inv_n;
    double const var_wd = sdd * inv_n;
    if (var_w < kDynamicsVarianceFloor || var_wd < kDynamicsVarianceFloor)
    {
      continue;
    }
    double const beta  = cov / var_w;
    out.beta[k]        = beta;
    out.drift_var[k]   = std::max(var_wd - beta * beta * var_w, 0.0);
    out.r_squared[k]   = std::clamp(cov * cov / (var_w * var_wd), 0.0, 1.0);
    out.regime[k]      = beta < 0.0   ? Regime::centripetal
                         : beta > 0.0 ? Regime::centrifugal
                                      : Regime::undefined;
  }
  return out;
}

DynamicsResult empirical_dynamics(VarianceMatrix const &v, double bandwidth)
{
  auto const smoothed = smooth_trajectories(v.values, v.grid, bandwidth);
  auto const deriv    = derivative_trajectories(smoothed, v.grid);
  std::vector<double> nu(v.grid.size(), 0.0);
  for (std::size_t i = 0; i < smoothed.rows(); ++i)
  {
    for (std::size_t k = 0; k < nu.size(); ++k)
    {
      nu[k] += smoothed(i, k);
    }
  }
  for (auto &x : nu)
  {
    x /= static_cast<double>(smoothed.rows());
  }
  auto const dnu      = derivative(nu, v.grid);
  auto       out      = dynamics_fit(v.grid, smoothed, deriv, nu, dnu);
  out.bandwidth       = bandwidth;
  return out;
}

}  // namespace fdyn
