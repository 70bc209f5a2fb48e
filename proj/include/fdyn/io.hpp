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

// File formats.
//
// Sample manifest (JSON):
//   { "format": "fdyn.sample", "version": 1, "space": "network",
//     "metric": "frobenius", "grid": [t_1, ...], "prob_grid": [...],
//     "subjects": [ { "id": "...", "group": "...", "objects": [[...], ...] } ] }
// Object payloads are flat arrays: network [r, L_11, L_12, ..., L_rr];
// distribution [Q(p_1), ..., Q(p_M)]; shape [k, re_1, im_1, ..., re_k, im_k].
// "prob_grid" is present for distributions only, "group" only when labeled.
//
// Mean trajectory (JSON): same header plus "provenance" and "objects".
//
// Tabular outputs are comma-separated with '.' decimals and 17 significant
// digits, so every finite double round-trips exactly.

#include "fdyn/dynamics.hpp"
#include "fdyn/fpca.hpp"
#include "fdyn/trajectory.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fdyn {

inline constexpr int kFormatVersion = 1;

/// Shortest-exact formatting with 17 significant digits, locale-free.
std::string format_double(double value);
double      parse_double(std::string_view text, std::string const &context);

std::string            sample_to_json(ObjectTrajectorySample const &sample);
ObjectTrajectorySample sample_from_json(std::string const &text);
void                   write_sample(ObjectTrajectorySample const &sample, std::filesystem::path const &path);
ObjectTrajectorySample load_sample(std::filesystem::path const &path);

std::string    mean_to_json(MeanTrajectory const &mean);
MeanTrajectory mean_from_json(std::string const &text);
void           write_mean(MeanTrajectory const &mean, std::filesystem::path const &path);
MeanTrajectory load_mean(std::filesystem::path const &path);

/// Header "subject_id[,group],t_1,...,t_m"; one row per subject.
std::string    variance_to_csv(VarianceMatrix const &v);
VarianceMatrix variance_from_csv(std::string const &text);
void           write_variance(VarianceMatrix const &v, std::filesystem::path const &path);
VarianceMatrix load_variance(std::filesystem::path const &path);

/// "subject_id,group" ground truth.
std::string labels_to_csv(ObjectTrajectorySample const &sample);

std::string nu_hat_to_csv(TimeGrid const &grid, std::vector<double> const &nu_hat);
std::string covariance_to_csv(CovarianceSurface const &surface);
std::string eigen_to_csv(FpcaResult const &fpca);
std::string eigenfunctions_to_csv(TimeGrid const &grid, Matrix const &eigenfunctions);
std::string scores_to_csv(Matrix const &scores, std::vector<std::string> const &ids,
                          std::vector<std::string> const &groups);

std::string    dynamics_to_csv(DynamicsResult const &dynamics);
DynamicsResult dynamics_from_csv(std::string const &text);

/// Scatter plot of the second versus first score column, one circle per
/// subject, colored by group label when present.
std::string scores_scatter_svg(Matrix const &scores, std::vector<std::string> const &groups);

/// Parsed comma-separated table, header row kept separately.
struct CsvTable
{
  std::vector<std::string>              header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(std::string const &text);

std::string read_file(std::filesystem::path const &path);
void        write_file(std::filesystem::path const &path, std::string const &content);

}  // namespace fdyn
