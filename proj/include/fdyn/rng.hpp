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

// Reproducible random streams: splitmix64 key derivation feeding
// xoshiro256**. A stream is a pure function of (seed, group, subject), so
// subject draws do not depend on how many other subjects are generated.

#include <array>
#include <cstdint>

namespace fdyn {

__extension__ using u128 = unsigned __int128;

/// splitmix64 output function applied to a single value.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

class Xoshiro256ss
{
public:
  explicit constexpr Xoshiro256ss(std::uint64_t seed) noexcept
  {
    std::uint64_t s = seed;
    for (auto &word : state_)
    {
      word = mix64(s);
      s += 0x9E3779B97F4A7C15ULL;
    }
  }

  /// Starts from an explicit internal state (not all zero).
  static constexpr Xoshiro256ss from_state(std::array<std::uint64_t, 4> const &state) noexcept
  {
    Xoshiro256ss g(0);
    g.state_ = state;
    return g;
  }

  constexpr std::uint64_t next() noexcept
  {
    std::uint64_t const result = rotl(state_[1] * 5U, 7) * 9U;
    std::uint64_t const t      = state_[1] << 17U;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() noexcept
  {
    return static_cast<double>(next() >> 11U) * 0x1.0p-53;
  }

  /// Uniform on {0, ..., range - 1}, unbiased (Lemire's multiply-and-reject).
  std::uint64_t bounded(std::uint64_t range) noexcept
  {
    u128 product = static_cast<u128>(next()) * range;
    auto              low     = static_cast<std::uint64_t>(product);
    if (low < range)
    {
      std::uint64_t const threshold = (0 - range) % range;
      while (low < threshold)
      {
        product = static_cast<u128>(next()) * range;
        low     = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64U);
  }

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
  {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t group,
                                   std::uint64_t subject) noexcept
{
  std::uint64_t k = mix64(seed);
  k               = mix64(k ^ (group * 0xD1B54A32D192ED03ULL + 1U));
  k               = mix64(k ^ (subject * 0x8CB92BA72F3D8DD7ULL + 1U));
  return k;
}

inline Xoshiro256ss substream(std::uint64_t seed, std::uint64_t group, std::uint64_t subject)
{
  return Xoshiro256ss(stream_key(seed, group, subject));
}

}  // namespace fdyn
