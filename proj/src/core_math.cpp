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

#include "iosim/core_math.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace iosim
{

arma::cx_vec ula_response(double angle, arma::uword m)
{
    if (m == 0)
        throw std::invalid_argument("ula_response: array needs at least one element");

    arma::cx_vec v(m);
    double c = std::cos(angle);
    for (arma::uword i = 0; i < m; ++i)
        v(i) = std::polar(1.0, -pi * static_cast<double>(i) * c);
    return v;
}

arma::cx_vec upa_response(double angle_x, double angle_y, arma::uword lx, arma::uword ly)
{
    if (lx == 0 || ly == 0)
        throw std::invalid_argument("upa_response: grid needs at least one element per axis");

    double cx = std::cos(angle_x), cy = std::cos(angle_y);
    arma::cx_vec v(lx * ly);
    for (arma::uword ix = 0; ix < lx; ++ix)
    {
        std::complex<double> row = std::polar(1.0, +pi * static_cast<double>(ix) * cx);
        for (arma::uword iy = 0; iy < ly; ++iy)
            v(ix * ly + iy) = row * std::polar(1.0, -pi * static_cast<double>(iy) * cy);
    }
    return v;
}

double fejer_kernel(double x, arma::uword m)
{
    if (m == 0)
        throw std::invalid_argument("fejer_kernel: m must be positive");

    double s = std::sin(0.5 * pi * x);
    if (std::abs(s) < 1e-8)
    {
        // Removable singularity: fall back to the geometric sum, which this
        // kernel is the squared magnitude of.
        std::complex<double> acc(0.0, 0.0);
        for (arma::uword i = 0; i < m; ++i)
            acc += std::polar(1.0, pi * static_cast<double>(i) * x);
        return std::norm(acc) / static_cast<double>(m);
    }
    double num = std::sin(0.5 * pi * static_cast<double>(m) * x);
    double r = num / s;
    return r * r / static_cast<double>(m);
}

namespace
{
// exp with a cheap cutoff; the image sums below feed arguments that
// routinely underflow (tracked variances can be ~1e-15).
inline double exp_neg(double a)
{
    return (a > 745.0) ? 0.0 : std::exp(-a);
}
} // namespace

double h_series(double x, double y, int k_max)
{
    if (!(y > 0.0))
        throw std::invalid_argument("h_series: variance must be positive");
    if (k_max < 0)
        throw std::invalid_argument("h_series: k_max must be nonnegative");
    double sx = std::sin(x);
    if (std::abs(sx) < 1e-12)
        throw std::invalid_argument("h_series: angle too close to the endfire singularity");

    // Very wide priors wrap to a uniform angle, where the series has the
    // exact limit 1 / (pi |sin x|): Poisson summation turns each image
    // family into sqrt(y / (2 pi)) with relative error exp(-y/2), which is
    // below 1e-13 already at y = 60. Branching here also keeps the term
    // count bounded when a diverged tracker reports astronomical variance.
    if (y > 60.0)
        return 1.0 / (pi * std::abs(sx));

    double tot = 0.0;
    for (int k = -k_max; k <= k_max; ++k)
    {
        double kk = static_cast<double>(k) * pi;
        double im = (static_cast<double>(k) + 1.0) * pi - x;
        tot += exp_neg(2.0 * kk * kk / y);
        tot += exp_neg(2.0 * im * im / y);
    }
    return tot / (std::sqrt(2.0 * pi * y) * std::abs(sx));
}

int suggest_k_max(double variance, int k_max_floor)
{
    if (variance <= 1.0)
        return k_max_floor;
    // Want 2 (k pi)^2 / y >= ~40 for the first dropped image. Past the
    // wide-prior branch of h_series no caller needs more images than the
    // branch threshold implies, so the count tops out at 13; the cap also
    // keeps this finite for absurd variances.
    double k = std::ceil(1.5 * std::sqrt(variance)) + 1.0;
    if (k > 13.0)
        k = 13.0;
    int ki = static_cast<int>(k);
    return ki > k_max_floor ? ki : k_max_floor;
}

double h_tilde(double x, double y)
{
    if (!(y > 0.0))
        throw std::invalid_argument("h_tilde: variance must be positive");
    double sx = std::sin(x);
    if (std::abs(sx) < 1e-12)
        throw std::invalid_argument("h_tilde: angle too close to the endfire singularity");

    double im = pi - x;
    return (1.0 + exp_neg(2.0 * im * im / y)) / (std::sqrt(2.0 * pi * y) * std::abs(sx));
}

double wrapped_cos_offset_pdf(double y_off, double center, double variance, int k_max)
{
    if (!(variance > 0.0))
        throw std::invalid_argument("wrapped_cos_offset_pdf: variance must be positive");
    if (k_max < 0)
        throw std::invalid_argument("wrapped_cos_offset_pdf: k_max must be nonnegative");

    double a = 0.5 * y_off + std::cos(center);
    double one_m = (1.0 - a) * (1.0 + a);
    if (one_m <= 0.0)
        return 0.0; // outside (or on the edge of) the reachable offset range

    double alpha = std::acos(a); // in [0, pi]
    double tot = 0.0;
    for (int k = -k_max; k <= k_max; ++k)
    {
        double t1 = 2.0 * (static_cast<double>(k) + 1.0) * pi - alpha - center;
        double t2 = 2.0 * static_cast<double>(k) * pi + alpha - center;
        tot += exp_neg(t1 * t1 / (2.0 * variance));
        tot += exp_neg(t2 * t2 / (2.0 * variance));
    }
    return tot / (2.0 * std::sqrt(2.0 * pi * variance) * std::sqrt(one_m));
}

} // namespace iosim
