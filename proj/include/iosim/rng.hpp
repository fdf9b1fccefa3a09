// SPDX-License-Identifier: Apache-2.0
//
// iosim - link-level simulation of sensing-assisted communication through
// a vehicle-mounted intelligent omni-surface
// Copyright (C) 2026 iosim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IOSIM_RNG_HPP
#define IOSIM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace iosim
{

// Counter-based random streams. Every Monte Carlo trial owns a stream derived
// from (seed, stream index), so results do not depend on thread count or
// evaluation order, and the same seed reproduces the same draws on any
// platform. std:: distributions are avoided on purpose; their output is
// implementation-defined.

inline std::uint64_t splitmix64_next(std::uint64_t &state)
{
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class StreamRng
{
  public:
    StreamRng(std::uint64_t seed, std::uint64_t stream)
    {
        // Scramble the pair so that nearby (seed, stream) values give
        // unrelated sequences.
        state_ = seed ^ 0xD1B54A32D192ED03ull;
        splitmix64_next(state_);
        state_ ^= stream * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull;
        splitmix64_next(state_);
    }

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    // Uniform draw in the open interval (0, 1)
    double uniform()
    {
        std::uint64_t bits = next_u64() >> 11; // 53 bits
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller, one pair per two calls
    double normal()
    {
        if (have_spare_)
        {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Inverse of the standard normal CDF (Acklam's rational approximation plus
// one Halley step). Used for stratified quantile draws.
double normal_quantile(double p);

} // namespace iosim

#endif
