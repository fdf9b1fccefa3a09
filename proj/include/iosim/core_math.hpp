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

#ifndef IOSIM_CORE_MATH_HPP
#define IOSIM_CORE_MATH_HPP

#include <armadillo>

namespace iosim
{

constexpr double pi = 3.14159265358979323846;

// Working range for angles of arrival / departure. Geometry keeps angles
// inside the open interval (0, pi); evaluation near the endpoints divides by
// sin(x), so everything is clamped a little away from them.
constexpr double angle_floor = 1e-3;
inline double clamp_angle(double a)
{
    if (a < angle_floor)
        return angle_floor;
    if (a > pi - angle_floor)
        return pi - angle_floor;
    return a;
}

// Smallest angle variance fed into the series evaluations. Noise-free
// configurations stay finite this way and still behave as if exact: every
// expression involving the floor is monotone, so 1e-30 and a true zero are
// indistinguishable at double precision.
constexpr double variance_floor = 1e-30;
inline double floor_variance(double y) { return y < variance_floor ? variance_floor : y; }

/*!
 * Response of a half-wavelength uniform linear array with m elements,
 * entry i = exp(-j pi i cos(angle)), i = 0..m-1.
 */
arma::cx_vec ula_response(double angle, arma::uword m);

/*!
 * Response of the surface's lx-by-ly element grid toward (angle_x, angle_y),
 * where angle_x is measured against the row axis and angle_y against the
 * column axis. Row-major element order: entry (ix * ly + iy) carries
 * exp(+j pi ix cos(angle_x)) * exp(-j pi iy cos(angle_y)). The sign split
 * between the two factors reflects the surface's mounting orientation and is
 * load-bearing for the phase alignment rules; do not "fix" it.
 */
arma::cx_vec upa_response(double angle_x, double angle_y, arma::uword lx, arma::uword ly);

/*!
 * Fejer kernel F_m(x) = (1/m) (sin(m pi x/2) / sin(pi x/2))^2.
 *
 * Periodic in x with period 2, peak value m at even integers. Near the
 * removable singularities (|sin(pi x/2)| < 1e-8) the kernel is evaluated
 * through its geometric-sum form, which is exact and well conditioned there.
 */
double fejer_kernel(double x, arma::uword m);

/*!
 * Series h(x, y): the density of the wrapped cosine offset at zero, doubled.
 * It shows up as the expected beamforming gain per element when the beam is
 * pointed with Gaussian angle error of variance y around angle x:
 *
 *   h(x, y) = sum_k [exp(-2 k^2 pi^2 / y) + exp(-2 ((k+1) pi - x)^2 / y)]
 *             / (sqrt(2 pi y) |sin x|)
 *
 * k runs over -k_max..k_max. Three image terms cover variances up to ~1;
 * callers with very wide priors should raise k_max (see suggest_k_max).
 */
double h_series(double x, double y, int k_max = 3);

// Large-variance guard: number of wrap images needed so that the dropped
// tail of h_series is negligible.
int suggest_k_max(double variance, int k_max_floor = 3);

/*!
 * Keep-one-image shortcut h~(x, y): only the k = 0 bracket of h_series.
 * Cheap, and within machine precision of the full series whenever
 * 2 (pi - x)^2 / y is large (beam pointed well away from endfire).
 */
double h_tilde(double x, double y);

/*!
 * Density of the offset y_off = 2 cos(center + w) - 2 cos(center) where
 * w ~ N(0, variance) is wrapped over 2 pi. Support is
 * |y_off/2 + cos(center)| < 1; outside it (and on the boundary, where the
 * density has an integrable singularity) the function returns zero.
 * At y_off = 0 this equals h_series(center, variance, k_max) / 2 exactly.
 */
double wrapped_cos_offset_pdf(double y_off, double center, double variance, int k_max = 3);

} // namespace iosim

#endif
