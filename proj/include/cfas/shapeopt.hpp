// SPDX-License-Identifier: Apache-2.0
//
// cfas -- high-SNR probability of continuous fluid antenna systems
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "cfas/analytic.hpp"
#include "cfas/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace cfas {

/// Sub-rectangle problem: T1 T2 <= area, Ti <= limits[i].
struct ShapeConstraints2D {
    double area = 1.0;
    std::array<double, 2> limits{1.0, 1.0};

    void validate() const
    {
        detail::require(std::isfinite(area) && area > 0.0, "ShapeConstraints2D: area must be > 0");
        for (double l : limits)
            detail::require(std::isfinite(l) && l > 0.0, "ShapeConstraints2D: limits must be > 0");
    }
};

/// Sub-cuboid problem: T1 T2 T3 <= volume, Ti <= limits[i].
struct ShapeConstraints3D {
    double volume = 1.0;
    std::array<double, 3> limits{1.0, 1.0, 1.0};

    void validate() const
    {
        detail::require(std::isfinite(volume) && volume > 0.0, "ShapeConstraints3D: volume must be > 0");
        for (double l : limits)
            detail::require(std::isfinite(l) && l > 0.0, "ShapeConstraints3D: limits must be > 0");
    }
};

template <std::size_t N>
struct GridOptimum {
    std::array<double, N> sides{};
    double value = 0.0;
};

namespace detail {

/// Axis indices ordered by ascending limit; ties keep caller order.
template <std::size_t N>
std::array<std::size_t, N> ascending_order(const std::array<double, N>& limits)
{
    std::array<std::size_t, N> idx;
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return limits[a] < limits[b]; });
    return idx;
}

} // namespace detail

/// Optimal sub-rectangle: the longer admissible side is taken at its limit and
/// the other is set by the area budget. A slack budget returns the full box.
inline std::array<double, 2> optimal_rectangle(const ShapeConstraints2D& c)
{
    c.validate();
    const auto order = detail::ascending_order(c.limits);
    const double l_short = c.limits[order[0]];
    const double l_long = c.limits[order[1]];

    std::array<double, 2> out = c.limits;
    if (c.area < l_short * l_long) {
        out[order[1]] = l_long;
        out[order[0]] = std::min(l_short, c.area / l_long);
    }
    return out;
}

/// Optimal sub-cuboid: the two longest admissible sides at their limits, the
/// shortest set by the volume budget.
///
/// With limits sorted ascending, V < L1 L2 L3 is the same condition as
/// V / (L2 L3) < L1, so whenever the budget binds the reduced side is
/// feasible and the closed-form optimum always applies.
inline std::array<double, 3> optimal_cuboid(const ShapeConstraints3D& c)
{
    c.validate();
    const auto order = detail::ascending_order(c.limits);
    const double l1 = c.limits[order[0]];
    const double l2 = c.limits[order[1]];
    const double l3 = c.limits[order[2]];

    std::array<double, 3> out = c.limits;
    if (c.volume < l1 * l2 * l3)
        out[order[0]] = std::min(l1, c.volume / (l2 * l3));
    return out;
}

/// Grid search over T2 in {i L2 / steps} with T1 = min(L1, S / T2).
/// Ties resolve to the smallest T2.
inline GridOptimum<2> brute_force_rectangle(const ShapeConstraints2D& c, double lambda2, double u0,
                                            int steps = 4000)
{
    c.validate();
    detail::require(steps >= 100, "brute_force_rectangle: steps must be >= 100");
    detail::require_hsp_args(lambda2, u0);
    const ClosedFormCoefficients k(lambda2, u0);

    GridOptimum<2> best;
    best.value = -HUGE_VAL;
    for (int i = 0; i <= steps; ++i) {
        const double t2 = c.limits[1] * i / steps;
        const double t1 = (t2 > 0.0) ? std::min(c.limits[0], c.area / t2) : c.limits[0];
        const double v = k.rectangle(t1, t2);
        if (v > best.value)
            best = {{t1, t2}, v};
    }
    return best;
}

/// Grid search over (T2, T3) with T1 = min(L1, V / (T2 T3)).
/// Ties resolve to the smallest T2, then the smallest T3.
inline GridOptimum<3> brute_force_cuboid(const ShapeConstraints3D& c, double lambda2, double u0,
                                         int steps = 4000)
{
    c.validate();
    detail::require(steps >= 100, "brute_force_cuboid: steps must be >= 100");
    detail::require_hsp_args(lambda2, u0);
    const ClosedFormCoefficients k(lambda2, u0);

    GridOptimum<3> best;
    best.value = -HUGE_VAL;
    for (int i = 0; i <= steps; ++i) {
        const double t2 = c.limits[1] * i / steps;
        for (int j = 0; j <= steps; ++j) {
            const double t3 = c.limits[2] * j / steps;
            const double area = t2 * t3;
            const double t1 = (area > 0.0) ? std::min(c.limits[0], c.volume / area) : c.limits[0];
            const double v = k.cuboid(t1, t2, t3);
            if (v > best.value)
                best = {{t1, t2, t3}, v};
        }
    }
    return best;
}

} // namespace cfas
