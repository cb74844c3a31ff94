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

#include <catch2/catch_amalgamated.hpp>

#include "cfas/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using Catch::Matchers::WithinRel;

TEST_CASE("intrinsic volumes of boxes", "[geometry]")
{
    CHECK(cfas::intrinsic_volumes(cfas::DomainBox{}) == std::vector<double>{1.0});
    CHECK(cfas::intrinsic_volumes(cfas::DomainBox{3.5}) == std::vector<double>{1.0, 3.5});
    CHECK(cfas::intrinsic_volumes(cfas::DomainBox{2.0, 3.0}) == std::vector<double>{1.0, 5.0, 6.0});
    CHECK(cfas::intrinsic_volumes(cfas::DomainBox{1.0, 2.0, 3.0}) == std::vector<double>{1.0, 6.0, 11.0, 6.0});
    CHECK(cfas::intrinsic_volumes(cfas::DomainBox{0.0, 5.0}) == std::vector<double>{1.0, 5.0, 0.0});
}

TEST_CASE("box validation", "[geometry]")
{
    CHECK_THROWS_AS(cfas::DomainBox({1.0, 1.0, 1.0, 1.0}), cfas::invalid_argument);
    CHECK_THROWS_AS(cfas::DomainBox({-0.5}), cfas::invalid_argument);
    CHECK_THROWS_AS(cfas::DomainBox({NAN}), cfas::invalid_argument);
    CHECK(cfas::DomainBox{0.0}.dim() == 1);
}

TEST_CASE("intrinsic volumes: permutation symmetry and half surface area", "[geometry]")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> side(0.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> s{side(rng), side(rng), side(rng)};
        const auto ref = cfas::intrinsic_volumes(cfas::DomainBox(s));
        std::sort(s.begin(), s.end());
        do {
            const auto perm = cfas::intrinsic_volumes(cfas::DomainBox(s));
            for (std::size_t j = 0; j < ref.size(); ++j)
                CHECK_THAT(perm[j], WithinRel(ref[j], 1e-14));
        } while (std::next_permutation(s.begin(), s.end()));

        const double a = s[0], b = s[1], c = s[2];
        CHECK_THAT(ref[2], WithinRel((2 * a * b + 2 * a * c + 2 * b * c) / 2.0, 1e-14));
        CHECK_THAT(ref[3], WithinRel(a * b * c, 1e-14));
    }
}

TEST_CASE("Lipschitz-Killing curvatures", "[geometry]")
{
    const double lambda2 = 2.0 * std::numbers::pi * std::numbers::pi;
    CHECK(cfas::lk_curvatures(cfas::DomainBox{}, lambda2) == std::vector<double>{1.0});

    const auto l1 = cfas::lk_curvatures(cfas::DomainBox{2.0}, lambda2);
    REQUIRE(l1.size() == 2);
    CHECK_THAT(l1[1], WithinRel(8.88576587631673249, 1e-14));

    const auto l2 = cfas::lk_curvatures(cfas::DomainBox{1.0, 1.0}, 2.0);
    CHECK(l2[0] == 1.0);
    CHECK_THAT(l2[1], WithinRel(2.0 * std::numbers::sqrt2, 1e-15));
    CHECK(l2[2] == 2.0);

    CHECK_THROWS_AS(cfas::lk_curvatures(cfas::DomainBox{1.0}, 0.0), cfas::invalid_argument);
    CHECK_THROWS_AS(cfas::lk_curvatures(cfas::DomainBox{1.0}, -2.0), cfas::invalid_argument);
}

TEST_CASE("unit lambda2 leaves intrinsic volumes unchanged", "[geometry]")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> side(0.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> s;
        for (int d = 0; d < trial % 4; ++d)
            s.push_back(side(rng));
        const cfas::DomainBox box(s);
        CHECK(cfas::lk_curvatures(box, 1.0) == cfas::intrinsic_volumes(box));
    }
}
