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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdyn {

/// Error categories. The numeric values are mirrored by the C API status
/// codes in fdyn.h and must stay in sync with them.
enum class ErrorCode : int
{
  dimension           = 1,
  grid                = 2,
  degenerate_shape    = 3,
  empty_input         = 4,
  convergence         = 5,
  numerical           = 6,
  insufficient_sample = 7,
  parameter           = 8,
  config              = 9,
  invariant           = 10,
  parse               = 11,
  io                  = 12,
};

char const *error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, std::string const &what)
    : std::runtime_error(what)
    , code_(code)
  {}

  ErrorCode code() const noexcept
  {
    return code_;
  }

private:
  ErrorCode code_;
};

template <ErrorCode C>
class CodedError : public Error
{
public:
  explicit CodedError(std::string const &what)
    : Error(C, what)
  {}
};

using DimensionError          = CodedError<ErrorCode::dimension>;
using GridError               = CodedError<ErrorCode::grid>;
using DegenerateShapeError    = CodedError<ErrorCode::degenerate_shape>;
using EmptyInputError         = CodedError<ErrorCode::empty_input>;
using NumericalError          = CodedError<ErrorCode::numerical>;
using InsufficientSampleError = CodedError<ErrorCode::insufficient_sample>;
using ParameterError          = CodedError<ErrorCode::parameter>;
using ConfigError             = CodedError<ErrorCode::config>;
using InvariantError          = CodedError<ErrorCode::invariant>;
using ParseError              = CodedError<ErrorCode::parse>;
using IoError                 = CodedError<ErrorCode::io>;

/// Raised when an iterative solver hits its iteration cap.
class ConvergenceError : public Error
{
public:
  ConvergenceError(std::string const &what, std::size_t iterations)
    : Error(ErrorCode::convergence, what)
    , iterations_(iterations)
  {}

  std::size_t iterations() const noexcept
  {
    return iterations_;
  }

private:
  std::size_t iterations_;
};

}  // namespace fdyn
