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

#include "cfas/error.hpp"

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cfas {

/// Axis-aligned movement region: a point, segment, rectangle or cuboid.
/// Side lengths are in wavelengths; the dimension is the number of sides.
class DomainBox {
public:
    static constexpr std::size_t max_dim = 3;

    DomainBox() = default;

    explicit DomainBox(std::vector<double> sides) : sides_(std::move(sides))
    {
        detail::require(sides_.size() <= max_dim, "DomainBox: at most 3 sides");
        for (double t : sides_)
            detail::require(std::isfinite(t) && t >= 0.0, "DomainBox: sides must be finite and >= 0");
    }

    DomainBox(std::initializer_list<double> sides) : DomainBox(std::vector<double>(sides)) {}

    std::size_t dim() const noexcept { return sides_.size(); }
    std::span<const double> sides() const noexcept { return sides_; }
    double side(std::size_t i) const { return sides_.at(i); }

    /// Length, area or volume (1 for a point).
    double measure() const noexcept
    {
        double m = 1.0;
        for (double t : sides_)
            m *= t;
        return m;
    }

private:
    std::vector<double> sides_;
};

/// Euclidean intrinsic volumes L_0^E .. L_n^E of the box. For a box these are
/// the elementary symmetric polynomials of the side lengths.
inline std::vector<double> intrinsic_volumes(const DomainBox& box)
{
    std::vector<double> e(box.dim() + 1, 0.0);
    e[0] = 1.0;
    for (double t : box.sides())
        for (std::size_t j = e.size() - 1; j > 0; --j)
            e[j] += t * e[j - 1];
    return e;
}

/// Lipschitz-Killing curvatures L_j = lambda2^{j/2} L_j^E.
inline std::vector<double> lk_curvatures(const DomainBox& box, double lambda2)
{
    detail::require(std::isfinite(lambda2) && lambda2 > 0.0, "lk_curvatures: lambda2 must be > 0");
    auto l = intrinsic_volumes(box);
    for (std::size_t j = 1; j < l.size(); ++j)
        l[j] *= std::pow(lambda2, 0.5 * double(j));
    return l;
}

} // namespace cfas
