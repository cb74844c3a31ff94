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

#include "cfas/correlation.hpp"

#include <mpfr.h>

#include <cmath>
#include <numbers>
#include <random>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Independent reference: MPFR's J0 at 256-bit precision.
double mpfr_j0(double x)
{
    mpfr_t in, out;
    mpfr_init2(in, 256);
    mpfr_init2(out, 256);
    mpfr_set_d(in, x, MPFR_RNDN);
    mpfr_j0(out, in, MPFR_RNDN);
    const double r = mpfr_get_d(out, MPFR_RNDN);
    mpfr_clear(in);
    mpfr_clear(out);
    return r;
}

} // namespace

TEST_CASE("bessel_j0 reference values", "[correlation]")
{
    CHECK(cfas::bessel_j0(0.0) == 1.0);
    CHECK(std::fabs(cfas::bessel_j0(2.404825557695773)) <= 1e-10);
    CHECK_THAT(cfas::bessel_j0(std::numbers::pi), WithinAbs(-0.304242177644093864, 1e-12));
}

TEST_CASE("bessel_j0 matches the high-precision oracle over |x| <= 1000", "[correlation]")
{
    std::mt19937_64 rng(20261019);
    std::uniform_real_distribution<double> wide(-1000.0, 1000.0);
    std::uniform_real_distribution<double> near(-30.0, 30.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = (i % 2 == 0) ? wide(rng) : near(rng);
        worst = std::max(worst, std::fabs(cfas::bessel_j0(x) - mpfr_j0(x)));
    }
    // branch boundaries
    for (double x : {7.999999, 8.0, 8.000001, 24.999999, 25.0, 25.000001, 1000.0, -1000.0})
        worst = std::max(worst, std::fabs(cfas::bessel_j0(x) - mpfr_j0(x)));
    CHECK(worst <= 1e-12);
}

TEST_CASE("bessel_j0 is even and rejects non-finite input", "[correlation]")
{
    for (double x : {0.3, 5.5, 12.25, 300.0})
        CHECK(cfas::bessel_j0(-x) == cfas::bessel_j0(x));
    CHECK_THROWS_AS(cfas::bessel_j0(NAN), cfas::invalid_argument);
    CHECK_THROWS_AS(cfas::bessel_j0(INFINITY), cfas::invalid_argument);
}

TEST_CASE("eval_correlation", "[correlation]")
{
    const auto jakes = cfas::CorrelationModel::jakes();
    CHECK(cfas::eval_correlation(jakes, 0.0) == 1.0);
    CHECK_THAT(cfas::eval_correlation(jakes, 0.5), WithinAbs(-0.304242, 1e-6));

    const auto quad = cfas::CorrelationModel::quadratic_local(std::numbers::pi * std::numbers::pi);
    CHECK(cfas::eval_correlation(quad, 0.0) == 1.0);
    CHECK_THAT(cfas::eval_correlation(quad, 0.1), WithinAbs(0.901304, 1e-6));
    CHECK_THAT(cfas::eval_correlation(quad, 0.1),
               WithinAbs(1.0 - std::numbers::pi * std::numbers::pi * 0.01, 1e-15));
    CHECK_THROWS_AS(cfas::eval_correlation(quad, 0.5), cfas::model_validity_error);
    CHECK_THROWS_AS(cfas::eval_correlation(jakes, -0.1), cfas::invalid_argument);
}

TEST_CASE("|rho| <= 1 for the Jakes model", "[correlation]")
{
    const auto jakes = cfas::CorrelationModel::jakes();
    for (int i = 0; i <= 20000; ++i)
        CHECK(std::fabs(cfas::eval_correlation(jakes, i * 0.01)) <= 1.0);
}

TEST_CASE("second spectral moment", "[correlation]")
{
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK_THAT(cfas::second_spectral_moment(cfas::CorrelationModel::jakes()), WithinRel(2.0 * pi2, 1e-15));
    CHECK_THAT(cfas::second_spectral_moment(cfas::CorrelationModel::jakes()), WithinAbs(19.7392, 1e-4));
    CHECK(cfas::second_spectral_moment(cfas::CorrelationModel::quadratic_local(1.0)) == 2.0);
    CHECK(cfas::second_spectral_moment(cfas::CorrelationModel::quadratic_local(pi2))
          == cfas::second_spectral_moment(cfas::CorrelationModel::jakes()));
}

TEST_CASE("curvature of the Jakes model from a second difference", "[correlation]")
{
    const auto jakes = cfas::CorrelationModel::jakes();
    const double h = 1e-4;
    // rho is even, so rho(-h) = rho(h)
    const double rho_h = cfas::eval_correlation(jakes, h);
    // -rho''(0) = 2a = lambda2 for rho(tau) ~ 1 - a tau^2
    const double curvature = -(rho_h - 2.0 * cfas::eval_correlation(jakes, 0.0) + rho_h) / (h * h);
    CHECK_THAT(curvature, WithinRel(jakes.lambda2(), 1e-4));
    CHECK_THAT(0.5 * curvature, WithinRel(jakes.a, 1e-4));
}
