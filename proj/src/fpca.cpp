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

#include "fdyn/fpca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fdyn {

std::vector<double> mean_variance_function(Matrix const &values)
{
  std::size_t const n = values.rows();
  std::size_t const m = values.cols();
  if (n == 0)
  {
    throw EmptyInputError("mean variance function of an empty sample");
  }
  std::vector<double> nu(m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
  {
    auto const row = values.row(i);
    for (std::size_t k = 0; k < m; ++k)
    {
      nu[k] += row[k];
    }
  }
  for (auto &x : nu)
  {
    x /= static_cast<double>(n);
  }
  return nu;
}

std::vector<double> mean_variance_function(VarianceMatrix const &v)
{
  return mean_variance_function(v.values);
}

CovarianceSurface covariance_surface(TimeGrid const &grid, Matrix const &values)
{
  std::size_t const n = values.rows();
  std::size_t const m = values.cols();
  if (m != grid.size())
  {
    throw DimensionError("data matrix has " + std::to_string(m) + " columns for a grid of " +
                         std::to_string(grid.size()) + " points");
  }
  if (n < 2)
  {
    throw InsufficientSampleError("covariance surface needs at least 2 subjects, got " +
                                  std::to_string(n));
  }
  auto const   nu = mean_variance_function(values);
  Matrix       c(m, m);
  double const inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < m; ++k)
  {
    for (std::size_t l = k; l < m; ++l)
    {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
      {
        s += values(i, k) * values(i, l);
      }
      double const value = s * inv_n - nu[k] * nu[l];
      c(k, l) = value;
      c(l, k) = value;
    }
  }
  return {grid, std::move(c)};
}

CovarianceSurface covariance_surface(VarianceMatrix const &v)
{
  return covariance_surface(v.grid, v.values);
}

namespace {

double frobenius_norm(Matrix const &a)
{
  double s = 0.0;
  for (double x : a.data())
  {
    s += x * x;
  }
  return std::sqrt(s);
}

double off_diagonal_norm(Matrix const &a)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
  {
    for (std::size_t j = 0; j < a.cols(); ++j)
    {
      if (i != j)
      {
        s += a(i, j) * a(i, j);
      }
    }
  }
  return std::sqrt(s);
}

struct JacobiResult
{
  std::vector<double> values;
  Matrix              vectors;  // columns are eigenvectors
  std::size_t         sweeps;
};

// Cyclic-by-row Jacobi for a dense symmetric matrix.
JacobiResult jacobi_eigen(Matrix a, JacobiOptions const &options)
{
  std::size_t const m = a.rows();
  Matrix            vec(m, m);
  for (std::size_t i = 0; i < m; ++i)
  {
    vec(i, i) = 1.0;
  }
  double const threshold = options.off_diagonal_tolerance * frobenius_norm(a);
  std::size_t  sweeps    = 0;
  while (off_diagonal_norm(a) > threshold)
  {
    if (sweeps == options.max_sweeps)
    {
      throw ConvergenceError("Jacobi eigensolver did not converge within " +
                                 std::to_string(options.max_sweeps) + " sweeps",
                             sweeps);
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < m; ++p)
    {
      for (std::size_t q = p + 1; q < m; ++q)
      {
        double const apq = a(p, q);
        if (apq == 0.0)
        {
          continue;
        }
        double const theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double const t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        double const c = 1.0 / std::sqrt(t * t + 1.0);
        double const s = t * c;
        for (std::size_t k = 0; k < m; ++k)
        {
          double const akp = a(k, p);
          double const akq = a(k, q);
          a(k, p)          = c * akp - s * akq;
          a(k, q)          = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k)
        {
          double const apk = a(p, k);
          double const aqk = a(q, k);
          a(p, k)          = c * apk - s * aqk;
          a(q, k)          = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < m; ++k)
        {
          double const vkp = vec(k, p);
          double const vkq = vec(k, q);
          vec(k, p)        = c * vkp - s * vkq;
          vec(k, q)        = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<double> values(m);
  for (std::size_t i = 0; i < m; ++i)
  {
    values[i] = a(i, i);
  }
  return {std::move(values), std::move(vec), sweeps};
}

}  // namespace

EigenDecomposition eigen_decompose(CovarianceSurface const &surface,
                                   std::optional<std::size_t> num_components,
                                   JacobiOptions const       &options)
{
  std::size_t const m = surface.values.rows();
  if (surface.values.cols() != m || surface.grid.size() != m)
  {
    throw DimensionError("covariance surface is not m x m on its grid");
  }
  auto const         &w = surface.grid.weights();
  std::vector<double> sqrt_w(m);
  for (std::size_t k = 0; k < m; ++k)
  {
    sqrt_w[k] = std::sqrt(w[k]);
  }
  Matrix kernel(m, m);
  for (std::size_t k = 0; k < m; ++k)
  {
    for (std::size_t l = k; l < m; ++l)
    {
      double const value = sqrt_w[k] * surface.values(k, l) * sqrt_w[l];
      kernel(k, l)       = value;
      kernel(l, k)       = value;
    }
  }

  auto jac = jacobi_eigen(std::move(kernel), options);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return jac.values[x] > jac.values[y];
  });

  std::vector<double> all_values(m);
  for (std::size_t j = 0; j < m; ++j)
  {
    double lambda = jac.values[order[j]];
    if (lambda < -kEigenvalueClampWindow)
    {
      throw NumericalError("covariance surface is not positive semidefinite: eigenvalue " +
                           std::to_string(lambda));
    }
    all_values[j] = std::max(lambda, 0.0);
  }

  std::size_t const keep = std::min(num_components.value_or(m), m);

  EigenDecomposition out;
  out.sweeps = jac.sweeps;
  out.eigenvalues.assign(all_values.begin(), all_values.begin() + static_cast<std::ptrdiff_t>(keep));
  out.eigenfunctions = Matrix(keep, m);
  for (std::size_t j = 0; j < keep; ++j)
  {
    std::size_t const col = order[j];
    auto              phi = out.eigenfunctions.row(j);
    double            integral = 0.0;
    for (std::size_t k = 0; k < m; ++k)
    {
      phi[k] = jac.vectors(k, col) / sqrt_w[k];
      integral += w[k] * phi[k];
    }
    bool flip = integral < 0.0;
    if (std::abs(integral) < 1e-12)
    {
      flip = false;
      for (std::size_t k = 0; k < m; ++k)
      {
        if (std::abs(phi[k]) > 1e-8)
        {
          flip = phi[k] < 0.0;
          break;
        }
      }
    }
    if (flip)
    {
      for (auto &x : phi)
      {
        x = -x;
      }
    }
  }

  out.eigengaps.resize(keep);
  double running = 0.0;
  for (std::size_t j = 0; j < keep; ++j)
  {
    double const next = j + 1 < m ? all_values[j + 1] : 0.0;
    double const gap  = all_values[j] - next;
    running           = j == 0 ? gap : std::min(running, gap);
    out.eigengaps[j]  = running;
  }
  return out;
}

Matrix fpc_scores(TimeGrid const &grid, Matrix const &values, std::span<double const> nu_hat,
                  Matrix const &eigenfunctions)
{
  std::size_t const n = values.rows();
  std::size_t const m = values.cols();
  std::size_t const J = eigenfunctions.rows();
  if (grid.size() != m || nu_hat.size() != m || (J > 0 && eigenfunctions.cols() != m))
  {
    throw DimensionError("fpc_scores: variance matrix, mean function and eigenfunctions disagree "
                         "on the grid size");
  }
  auto const &w = grid.weights();
  Matrix      scores(n, J);
  std::vector<double> centered(m);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t k = 0; k < m; ++k)
    {
      centered[k] = w[k] * (values(i, k) - nu_hat[k]);
    }
    for (std::size_t j = 0; j < J; ++j)
    {
      auto const phi = eigenfunctions.row(j);
      double     s   = 0.0;
      for (std::size_t k = 0; k < m; ++k)
      {
        s += centered[k] * phi[k];
      }
      scores(i, j) = s;
    }
  }
  return scores;
}

Matrix fpc_scores(VarianceMatrix const &v, std::span<double const> nu_hat,
                  Matrix const &eigenfunctions)
{
  return fpc_scores(v.grid, v.values, nu_hat, eigenfunctions);
}

FveResult fraction_variance_explained(std::span<double const> eigenvalues)
{
  FveResult out;
  out.fractions.resize(eigenvalues.size(), 0.0);
  double const total = std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
  if (!(total > 0.0))
  {
    out.degenerate = true;
    return out;
  }
  double running = 0.0;
  for (std::size_t j = 0; j < eigenvalues.size(); ++j)
  {
    running += eigenvalues[j];
    out.fractions[j] = std::min(running / total, 1.0);
  }
  if (!out.fractions.empty())
  {
    out.fractions.back() = running / total;
  }
  return out;
}

std::vector<double> modes_of_variation(std::span<double const> nu_hat, double eigenvalue,
                                       std::span<double const> eigenfunction, double multiplier)
{
  if (eigenvalue < 0.0)
  {
    throw ParameterError("mode of variation needs a nonnegative eigenvalue");
  }
  if (nu_hat.size() != eigenfunction.size())
  {
    throw DimensionError("mode of variation: mean function and eigenfunction lengths differ");
  }
  double const        scale = multiplier * std::sqrt(eigenvalue);
  std::vector<double> out(nu_hat.size());
  for (std::size_t k = 0; k < out.size(); ++k)
  {
    out[k] = nu_hat[k] + scale * eigenfunction[k];
  }
  return out;
}

std::size_t numerical_rank(std::span<double const> eigenvalues)
{
  if (eigenvalues.empty() || !(eigenvalues.front() > 0.0))
  {
    return 0;
  }
  double const cutoff = 1e-12 * eigenvalues.front();
  return static_cast<std::size_t>(
      std::count_if(eigenvalues.begin(), eigenvalues.end(), [&](double x) { return x > cutoff; }));
}

FpcaResult run_fpca(TimeGrid const &grid, Matrix const &values, ComponentSelection const &selection)
{
  if (selection.components && *selection.components == 0)
  {
    throw ParameterError("number of components must be at least 1");
  }
  if (!selection.components && !(selection.fve_threshold > 0.0 && selection.fve_threshold <= 1.0))
  {
    throw ParameterError("FVE threshold must lie in (0, 1]");
  }

  FpcaResult out{mean_variance_function(values), covariance_surface(grid, values), {}, {}, {}, {}, {}, {}, 0, false, {}};
  auto       full = eigen_decompose(out.surface);
  out.all_eigenvalues = full.eigenvalues;
  out.rank            = numerical_rank(out.all_eigenvalues);
  auto const fve_all  = fraction_variance_explained(out.all_eigenvalues);
  out.degenerate      = fve_all.degenerate;

  std::size_t J = 0;
  if (selection.components)
  {
    J = *selection.components;
    if (J > out.rank)
    {
      out.notes.push_back("requested " + std::to_string(J) +
                          " components but the covariance surface has rank " +
                          std::to_string(out.rank) + "; truncating");
      J = out.rank;
    }
  }
  else
  {
    while (J < out.rank && fve_all.fractions[J] < selection.fve_threshold)
    {
      ++J;
    }
    J = std::min(J + 1, out.rank);
  }
  if (out.rank == 0)
  {
    out.notes.push_back("variance trajectories have no variation; no components retained");
  }

  out.eigenvalues.assign(full.eigenvalues.begin(), full.eigenvalues.begin() + static_cast<std::ptrdiff_t>(J));
  out.eigengaps.assign(full.eigengaps.begin(), full.eigengaps.begin() + static_cast<std::ptrdiff_t>(J));
  out.fve.assign(fve_all.fractions.begin(), fve_all.fractions.begin() + static_cast<std::ptrdiff_t>(J));
  std::size_t const m = grid.size();
  out.eigenfunctions  = Matrix(J, m);
  for (std::size_t j = 0; j < J; ++j)
  {
    auto const src = full.eigenfunctions.row(j);
    std::copy(src.begin(), src.end(), out.eigenfunctions.row(j).begin());
  }
  out.scores = fpc_scores(grid, values, out.nu_hat, out.eigenfunctions);
  return out;
}

FpcaResult run_fpca(VarianceMatrix const &v, ComponentSelection const &selection)
{
  return run_fpca(v.grid, v.values, selection);
}

}  // namespace fdyn
