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

// Functional principal component analysis of Frechet variance trajectories
// on a common (possibly non-uniform) time grid. Integrals are trapezoid sums
// with the grid's quadrature weights.

#include "fdyn/matrix.hpp"
#include "fdyn/trajectory.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fdyn {

struct CovarianceSurface
{
  TimeGrid grid;
  Matrix   values;  // m x m, exactly symmetric
};

struct EigenDecomposition
{
  std::vector<double> eigenvalues;     // descending, clamped at 0
  Matrix              eigenfunctions;  // J x m; row j is phi_j on the grid
  std::vector<double> eigengaps;       // delta_j = min_{l<=j}(lambda_l - lambda_{l+1})
  std::size_t         sweeps{0};
};

struct FveResult
{
  std::vector<double> fractions;
  bool                degenerate{false};  // total variance was zero
};

struct JacobiOptions
{
  double      off_diagonal_tolerance = 1e-14;  // relative to the Frobenius norm
  std::size_t max_sweeps             = 100;
};

inline constexpr double kEigenvalueClampWindow = 1e-10;

// Every operation also accepts a plain n x m matrix of real-valued
// trajectories on `grid` (no sign constraint), for general functional data.

/// Columnwise mean of the variance matrix.
std::vector<double> mean_variance_function(VarianceMatrix const &v);
std::vector<double> mean_variance_function(Matrix const &values);

/// (1/n) sum_i V_i(s) V_i(t) - nu(s) nu(t). Requires n >= 2.
CovarianceSurface covariance_surface(VarianceMatrix const &v);
CovarianceSurface covariance_surface(TimeGrid const &grid, Matrix const &values);

/// Eigenpairs of the integral operator with kernel `surface`, via cyclic
/// Jacobi on W^{1/2} C W^{1/2}. Eigenfunctions are orthonormal under the
/// grid quadrature and signed so that their integral is positive (or, when
/// the integral vanishes, so that the first non-negligible value is).
/// `num_components` = nullopt keeps all m.
EigenDecomposition eigen_decompose(CovarianceSurface const &surface,
                                   std::optional<std::size_t> num_components = std::nullopt,
                                   JacobiOptions const       &options        = {});

/// B_ij = sum_k w_k (V_i(t_k) - nu(t_k)) phi_j(t_k); n x J.
Matrix fpc_scores(VarianceMatrix const &v, std::span<double const> nu_hat,
                  Matrix const &eigenfunctions);
Matrix fpc_scores(TimeGrid const &grid, Matrix const &values, std::span<double const> nu_hat,
                  Matrix const &eigenfunctions);

FveResult fraction_variance_explained(std::span<double const> eigenvalues);

/// nu(t) + c sqrt(lambda) phi(t).
std::vector<double> modes_of_variation(std::span<double const> nu_hat, double eigenvalue,
                                       std::span<double const> eigenfunction, double multiplier);

/// Number of components to retain: a fixed J, or the smallest J whose
/// cumulative FVE reaches the threshold.
struct ComponentSelection
{
  std::optional<std::size_t> components;
  double                     fve_threshold = 0.95;
};

struct FpcaResult
{
  std::vector<double>      nu_hat;
  CovarianceSurface        surface;
  std::vector<double>      eigenvalues;     // J retained
  Matrix                   eigenfunctions;  // J x m
  std::vector<double>      eigengaps;       // J
  Matrix                   scores;          // n x J
  std::vector<double>      fve;             // J cumulative
  std::vector<double>      all_eigenvalues; // m
  std::size_t              rank{0};
  bool                     degenerate{false};
  std::vector<std::string> notes;
};

/// Numerical rank of a descending eigenvalue list: count of eigenvalues
/// above 1e-12 times the leading one.
std::size_t numerical_rank(std::span<double const> eigenvalues);

FpcaResult run_fpca(VarianceMatrix const &v, ComponentSelection const &selection = {});
FpcaResult run_fpca(TimeGrid const &grid, Matrix const &values,
                    ComponentSelection const &selection = {});

}  // namespace fdyn
