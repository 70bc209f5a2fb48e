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

#include "fdyn/errors.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fdyn {

/// Dense row-major matrix of doubles.
class Matrix
{
public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
    : rows_(rows)
    , cols_(cols)
    , data_(rows * cols, fill)
  {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows)
    , cols_(cols)
    , data_(std::move(data))
  {
    if (data_.size() != rows * cols)
    {
      throw DimensionError("matrix payload has " + std::to_string(data_.size()) +
                           " entries, expected " + std::to_string(rows * cols));
    }
  }

  std::size_t rows() const noexcept
  {
    return rows_;
  }
  std::size_t cols() const noexcept
  {
    return cols_;
  }
  bool empty() const noexcept
  {
    return data_.empty();
  }

  double &operator()(std::size_t i, std::size_t j) noexcept
  {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept
  {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) noexcept
  {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double const> row(std::size_t i) const noexcept
  {
    return {data_.data() + i * cols_, cols_};
  }

  std::vector<double> column(std::size_t j) const
  {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
    {
      out[i] = (*this)(i, j);
    }
    return out;
  }

  std::vector<double> const &data() const noexcept
  {
    return data_;
  }
  std::vector<double> &data() noexcept
  {
    return data_;
  }

  bool operator==(Matrix const &) const = default;

private:
  std::size_t         rows_{0};
  std::size_t         cols_{0};
  std::vector<double> data_;
};

}  // namespace fdyn
