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
#include "cfas/geometry.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>

namespace cfas {

/// Physical link parameters used to map an SNR threshold u to the
/// normalised threshold u0 applied to the chi^2_2 field.
struct ChannelConfig {
    double beta = 1.0;   ///< channel gain
    double es = 1.0;     ///< symbol energy
    double sigma2 = 1.0; ///< noise power

    void validate() const
    {
        detail::require(beta > 0.0 && es > 0.0 && sigma2 > 0.0,
                        "ChannelConfig: beta, es and sigma2 must be > 0");
    }
};

enum class HspMethod { ClosedForm, GeneralEec, ScalingLaw, Simulation };

constexpr std::string_view to_string(HspMethod m) noexcept
{
    switch (m) {
    case HspMethod::ClosedForm: return "closed_form";
    case HspMethod::GeneralEec: return "eec";
    case HspMethod::ScalingLaw: return "scaling_law";
    case HspMethod::Simulation: return "simulation";
    }
    return "unknown";
}

/// A high-SNR probability value and the route that produced it.
///
/// The asymptotic expressions are not probabilities away from the tail: they
/// can overshoot 1 for large regions, and dip below 0 at low thresholds where
/// the u0 - 1 and u0^{3/2} - 3 u0^{1/2} coefficients turn negative. Such values
/// are kept raw and flagged rather than truncated.
struct HspEstimate {
    double value = 0.0;
    HspMethod method = HspMethod::ClosedForm;
    bool clamped = false; ///< value lies outside [0, 1] and was reported raw

    static HspEstimate make(double value, HspMethod method) noexcept
    {
        return {value, method, !(value >= 0.0 && value <= 1.0)};
    }
};

/// u0 = 2 sigma^2 u / (beta Es).
inline double threshold_u0(const ChannelConfig& config, double u)
{
    config.validate();
    detail::require(std::isfinite(u) && u > 0.0, "threshold_u0: u must be > 0");
    return 2.0 * config.sigma2 * u / (config.beta * config.es);
}

/// P(chi^2_k >= u0) for integer k.
inline double chi2_tail(int k, double u0)
{
    detail::require(k >= 1, "chi2_tail: k must be >= 1");
    detail::require(std::isfinite(u0) && u0 >= 0.0, "chi2_tail: u0 must be >= 0");
    const double x = 0.5 * u0;
    const double ex = std::exp(-x);
    if (k % 2 == 0) {
        double term = 1.0;
        double sum = 1.0;
        for (int i = 1; i < k / 2; ++i) {
            term *= x / i;
            sum += term;
        }
        return ex * sum;
    }
    // odd k: Q(k/2, x) = erfc(sqrt x) + e^{-x} sum_{i=0}^{(k-3)/2} x^{i+1/2} / Gamma(i + 3/2)
    double sum = 0.0;
    double term = std::sqrt(x) / std::tgamma(1.5);
    for (int i = 0; i <= (k - 3) / 2; ++i) {
        sum += term;
        term *= x / (i + 1.5);
    }
    return std::erfc(std::sqrt(x)) + ex * sum;
}

namespace detail {

inline double binomial(int n, int r)
{
    if (r < 0 || n < 0 || r > n)
        return 0.0;
    double b = 1.0;
    for (int i = 1; i <= r; ++i)
        b = b * (n - r + i) / i;
    return b;
}

inline double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

} // namespace detail

/// Euler characteristic density rho_j(u0) of a chi^2_k field.
///
/// The prefactor denominator is (2 pi)^{j/2} Gamma(k/2) 2^{(k-2)/2}; with that
/// reading j = 1, 2, 3 reproduce the level-crossing and closed-form results
/// for k = 2.
inline double ec_density(int j, int k, double u0)
{
    detail::require(j >= 0 && j <= 3, "ec_density: j must be in 0..3");
    detail::require(k >= 1, "ec_density: k must be >= 1");
    if (j == 0)
        return chi2_tail(k, u0);
    detail::require(std::isfinite(u0) && u0 > 0.0, "ec_density: u0 must be > 0 for j >= 1");

    double sum = 0.0;
    for (int l = 0; l <= (j - 1) / 2; ++l) {
        for (int m = 0; m <= j - 1 - 2 * l; ++m) {
            if (!(k >= j - m - 2 * l))
                continue;
            const double sign = ((j - 1 + m + l) % 2 == 0) ? 1.0 : -1.0;
            sum += detail::binomial(k - 1, j - 1 - m - 2 * l) * sign * detail::factorial(j - 1)
                   * std::pow(u0, m + l)
                   / (detail::factorial(m) * detail::factorial(l) * std::pow(2.0, l));
        }
    }
    const double prefactor = std::pow(u0, 0.5 * (k - j)) * std::exp(-0.5 * u0)
                             / (std::pow(2.0 * std::numbers::pi, 0.5 * j) * std::tgamma(0.5 * k)
                                * std::pow(2.0, 0.5 * (k - 2)));
    return prefactor * sum;
}

/// Level crossing rate of the chi^2_2 envelope field at u0.
inline double lcr(double u0, double lambda2)
{
    detail::require(std::isfinite(u0) && u0 >= 0.0, "lcr: u0 must be >= 0");
    detail::require(std::isfinite(lambda2) && lambda2 > 0.0, "lcr: lambda2 must be > 0");
    return std::sqrt(lambda2 * u0 / (2.0 * std::numbers::pi)) * std::exp(-0.5 * u0);
}

namespace detail {

inline void require_hsp_args(double lambda2, double u0)
{
    require(std::isfinite(lambda2) && lambda2 > 0.0, "lambda2 must be > 0");
    require(std::isfinite(u0) && u0 > 0.0, "u0 must be > 0");
}

} // namespace detail

/// Expected Euler characteristic of the excursion set of the chi^2_2 field
/// above u0: sum_j L_j(A) rho_j(u0).
inline HspEstimate eec(const DomainBox& box, double lambda2, double u0)
{
    detail::require_hsp_args(lambda2, u0);
    const auto curvatures = lk_curvatures(box, lambda2);
    double sum = 0.0;
    for (std::size_t j = 0; j < curvatures.size(); ++j)
        sum += curvatures[j] * ec_density(static_cast<int>(j), 2, u0);
    return HspEstimate::make(sum, HspMethod::GeneralEec);
}

/// Coefficients of the closed-form high-SNR probability as a polynomial in
/// the side lengths:
///   e^{-u0/2} (1 + c1 e1(T) + c2 e2(T) + c3 e3(T))
/// where e_j are the elementary symmetric polynomials of the sides.
struct ClosedFormCoefficients {
    double scale = 0.0; ///< e^{-u0/2}
    double c1 = 0.0;    ///< sqrt(lambda2 u0 / 2 pi)
    double c2 = 0.0;    ///< lambda2 (u0 - 1) / 2 pi
    double c3 = 0.0;    ///< (lambda2 / 2 pi)^{3/2} (u0^{3/2} - 3 u0^{1/2})

    ClosedFormCoefficients(double lambda2, double u0)
    {
        const double q = lambda2 / (2.0 * std::numbers::pi);
        scale = std::exp(-0.5 * u0);
        c1 = std::sqrt(q * u0);
        c2 = q * (u0 - 1.0);
        c3 = std::pow(q, 1.5) * (std::pow(u0, 1.5) - 3.0 * std::sqrt(u0));
    }

    double rectangle(double t1, double t2) const noexcept
    {
        return scale * (1.0 + c1 * (t1 + t2) + c2 * t1 * t2);
    }

    double cuboid(double t1, double t2, double t3) const noexcept
    {
        return scale * (1.0 + c1 * (t1 + t2 + t3) + c2 * (t1 * t2 + t1 * t3 + t2 * t3)
                        + c3 * t1 * t2 * t3);
    }
};

/// Dimension-specific closed forms for the high-SNR probability of a point,
/// segment, rectangle and cuboid.
inline HspEstimate hsp_closed_form(const DomainBox& box, double lambda2, double u0)
{
    detail::require_hsp_args(lambda2, u0);
    const ClosedFormCoefficients k(lambda2, u0);
    const auto t = box.sides();

    double value = 0.0;
    switch (box.dim()) {
    case 0: value = k.scale; break;
    case 1: value = k.scale * (1.0 + k.c1 * t[0]); break;
    case 2: value = k.rectangle(t[0], t[1]); break;
    case 3: value = k.cuboid(t[0], t[1], t[2]); break;
    }
    return HspEstimate::make(value, HspMethod::ClosedForm);
}

/// Multiplicative gain of adding one dimension of length T.
inline double scaling_factor(double T, double lambda2, double u0)
{
    detail::require(std::isfinite(T) && T >= 0.0, "scaling_factor: T must be >= 0");
    detail::require_hsp_args(lambda2, u0);
    return 1.0 + T * std::sqrt(lambda2 * u0 / (2.0 * std::numbers::pi));
}

/// Exact corrections between the n-dimensional closed form and the
/// (n-1)-dimensional one times the scaling factor of the new side:
///   P(2) = P(1) factor(T2) + r2,   P(3) = P(2) factor(T3) + r3.
struct ScalingRemainders {
    double r2 = 0.0;
    std::optional<double> r3;
};

/// With q = lambda2 / (2 pi):
///   r2 = -q T1 T2 e^{-u0/2}
///   r3 = -q T3 e^{-u0/2} (T1 + T2 + 2 T1 T2 sqrt(q u0))
/// For Jakes' correlation q = pi.
inline ScalingRemainders scaling_remainders(const DomainBox& box, double u0,
                                            double lambda2 = 2.0 * std::numbers::pi * std::numbers::pi)
{
    detail::require(box.dim() >= 2, "scaling_remainders: box dimension must be >= 2");
    detail::require_hsp_args(lambda2, u0);
    const double e = std::exp(-0.5 * u0);
    const double q = lambda2 / (2.0 * std::numbers::pi);
    const auto t = box.sides();

    ScalingRemainders r;
    r.r2 = -q * t[0] * t[1] * e;
    if (box.dim() == 3)
        r.r3 = -q * t[2] * e * (t[0] + t[1] + 2.0 * t[0] * t[1] * std::sqrt(q * u0));
    return r;
}

/// e^{-u0/2} times the product of per-side scaling factors.
inline HspEstimate scaled_hsp(const DomainBox& box, double lambda2, double u0)
{
    detail::require_hsp_args(lambda2, u0);
    double value = std::exp(-0.5 * u0);
    for (double t : box.sides())
        value *= scaling_factor(t, lambda2, u0);
    return HspEstimate::make(value, HspMethod::ScalingLaw);
}

} // namespace cfas
