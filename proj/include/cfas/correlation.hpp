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
#include <numbers>

namespace cfas {

/// Bessel function of the first kind, order zero.
///
/// |x| < 8 uses the power series, 8 <= |x| < 25 Miller's backward recurrence
/// normalised by J0 + 2*sum(J_2k) = 1, and |x| >= 25 the Hankel asymptotic
/// expansion. Absolute error is below 1e-12 for |x| <= 1000.
inline double bessel_j0(double x)
{
    detail::require(std::isfinite(x), "bessel_j0: argument must be finite");
    x = std::fabs(x);

    if (x < 8.0) {
        const double q = -0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= q / (double(k) * double(k));
            sum += term;
            if (std::fabs(term) < 1e-18)
                break;
        }
        return sum;
    }

    if (x < 25.0) {
        const int start = 2 * (static_cast<int>(x / 2.0) + 25);
        double next = 0.0;      // J_{k+1}
        double curr = 1e-300;   // J_k
        double even_sum = 0.0;  // sum of J_2k for k >= 1
        for (int k = start; k > 0; --k) {
            const double prev = (2.0 * k / x) * curr - next;
            next = curr;
            curr = prev;
            if ((k - 1) % 2 == 0 && k - 1 > 0)
                even_sum += curr;
            if (std::fabs(curr) > 1e250) {
                curr *= 1e-250;
                next *= 1e-250;
                even_sum *= 1e-250;
            }
        }
        return curr / (curr + 2.0 * even_sum);
    }

    // Hankel: J0 = sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4)).
    double p = 1.0;
    double q = 0.0;
    double a = 1.0;
    double last = 1.0;
    for (int k = 1; k < 100; ++k) {
        a *= -double((2 * k - 1) * (2 * k - 1)) / (8.0 * k * x);
        const double mag = std::fabs(a);
        if (mag > last)
            break;
        last = mag;
        // sign pattern (-1)^floor(k/2) applied to a_k / x^k
        const double signed_term = ((k / 2) % 2 == 0) ? a : -a;
        if (k % 2 == 0)
            p += signed_term;
        else
            q += signed_term;
        if (mag < 1e-17)
            break;
    }
    const double c = std::cos(x);
    const double s = std::sin(x);
    const double cos_chi = (c + s) * std::numbers::sqrt2 / 2.0;
    const double sin_chi = (s - c) * std::numbers::sqrt2 / 2.0;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

enum class CorrelationKind {
    JakesJ0,        ///< rho(tau) = J0(2 pi tau)
    QuadraticLocal, ///< rho(tau) = 1 - a tau^2, small-tau model only
};

/// Isotropic spatial correlation rho(tau), tau in wavelengths.
struct CorrelationModel {
    CorrelationKind kind = CorrelationKind::JakesJ0;
    double a = std::numbers::pi * std::numbers::pi;

    static CorrelationModel jakes() { return {}; }

    static CorrelationModel quadratic_local(double a)
    {
        detail::require(std::isfinite(a) && a > 0.0, "quadratic_local: a must be positive");
        return {CorrelationKind::QuadraticLocal, a};
    }

    /// Second spectral moment, the variance of the spatial derivative.
    double lambda2() const noexcept { return 2.0 * a; }
};

inline double eval_correlation(const CorrelationModel& model, double tau)
{
    detail::require(std::isfinite(tau) && tau >= 0.0, "eval_correlation: tau must be >= 0");
    switch (model.kind) {
    case CorrelationKind::JakesJ0:
        return bessel_j0(2.0 * std::numbers::pi * tau);
    case CorrelationKind::QuadraticLocal:
        if (model.a * tau * tau > 1.0)
            throw model_validity_error("eval_correlation: quadratic model is not valid for a*tau^2 > 1");
        return 1.0 - model.a * tau * tau;
    }
    return 0.0;
}

inline double second_spectral_moment(const CorrelationModel& model) noexcept
{
    return model.lambda2();
}

} // namespace cfas
