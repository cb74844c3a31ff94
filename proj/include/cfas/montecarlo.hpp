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

#include "cfas/correlation.hpp"
#include "cfas/error.hpp"
#include "cfas/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace cfas {

using Point = std::array<double, 3>; // unused trailing coordinates are zero

/// Lattice over a box with the given spacing, both endpoints included.
struct GridSpec {
    DomainBox box;
    double spacing = 0.01;
    std::size_t max_points = 20000;

    std::vector<std::size_t> axis_counts() const
    {
        detail::require(std::isfinite(spacing) && spacing > 0.0, "GridSpec: spacing must be > 0");
        std::vector<std::size_t> counts;
        for (double t : box.sides()) {
            // a small relative slack keeps T = k * spacing from losing its endpoint
            counts.push_back(static_cast<std::size_t>(std::floor(t / spacing * (1.0 + 1e-12))) + 1);
        }
        return counts;
    }

    std::size_t point_count() const
    {
        std::size_t n = 1;
        for (auto c : axis_counts())
            n *= c;
        return n;
    }
};

/// Row-major lattice points (last axis varies fastest).
inline std::vector<Point> build_grid(const GridSpec& spec)
{
    const auto counts = spec.axis_counts();
    const std::size_t total = spec.point_count();
    if (total > spec.max_points)
        throw capacity_error("build_grid: grid has " + std::to_string(total)
                                 + " points, exceeding the cap of " + std::to_string(spec.max_points),
                             total);

    std::vector<Point> points;
    points.reserve(total);
    std::vector<std::size_t> idx(counts.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        Point p{0.0, 0.0, 0.0};
        for (std::size_t a = 0; a < counts.size(); ++a)
            p[a] = static_cast<double>(idx[a]) * spec.spacing;
        points.push_back(p);
        for (std::size_t a = counts.size(); a-- > 0;) {
            if (++idx[a] < counts[a])
                break;
            idx[a] = 0;
        }
    }
    return points;
}

inline Eigen::MatrixXd covariance_matrix(std::span<const Point> points, const CorrelationModel& model)
{
    if (model.kind != CorrelationKind::JakesJ0)
        throw model_validity_error(
            "covariance_matrix: only the Jakes model is a valid covariance over arbitrary separations");
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        c(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const auto& p = points[static_cast<std::size_t>(i)];
            const auto& q = points[static_cast<std::size_t>(j)];
            const double tau = std::hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]);
            c(i, j) = c(j, i) = eval_correlation(model, tau);
        }
    }
    return c;
}

/// Square-root factor B of a grid correlation matrix, B B^T ~ C.
struct FieldSampler {
    Eigen::MatrixXd factor;
    double clamped_mass = 0.0;         ///< sum |negative eigenvalues| / trace(C)
    double reconstruction_error = 0.0; ///< max |B B^T - C|

    Eigen::Index size() const noexcept { return factor.rows(); }
};

/// Symmetric eigendecomposition with negative eigenvalues clamped to zero.
/// Fine Jakes grids are numerically rank deficient, so a Cholesky factor
/// generally does not exist.
inline FieldSampler covariance_factor(const Eigen::MatrixXd& c, double clamp_tol = 0.01)
{
    detail::require(c.rows() == c.cols() && c.rows() > 0, "covariance_factor: matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
    if (eig.info() != Eigen::Success)
        throw conditioning_error("covariance_factor: eigendecomposition failed", 1.0);

    Eigen::VectorXd lambda = eig.eigenvalues();
    double negative = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) < 0.0) {
            negative += -lambda(i);
            lambda(i) = 0.0;
        }
    }

    FieldSampler s;
    s.clamped_mass = negative / c.trace();
    if (s.clamped_mass > clamp_tol)
        throw conditioning_error("covariance_factor: clamped eigenvalue mass "
                                     + std::to_string(s.clamped_mass) + " exceeds tolerance "
                                     + std::to_string(clamp_tol),
                                 s.clamped_mass);
    s.factor = eig.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
    s.reconstruction_error = (s.factor * s.factor.transpose() - c).cwiseAbs().maxCoeff();
    if (s.reconstruction_error > 1e-6)
        throw conditioning_error("covariance_factor: reconstruction error "
                                     + std::to_string(s.reconstruction_error) + " exceeds 1e-6",
                                 s.clamped_mass);
    return s;
}

/// Deterministic random stream for one replicate, keyed by (seed, index).
/// The engine state depends only on the key, never on scheduling.
inline std::mt19937_64 replicate_stream(std::uint64_t seed, std::uint64_t replicate)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replicate),
                      static_cast<std::uint32_t>(replicate >> 32)};
    return std::mt19937_64(seq);
}

/// In-phase and quadrature components of one field realisation at the grid
/// points. Each component has unit variance, so |h|^2 is chi^2_2 with mean 2.
struct FieldRealisation {
    Eigen::VectorXd real;
    Eigen::VectorXd imag;

    Eigen::VectorXd intensity() const { return real.cwiseAbs2() + imag.cwiseAbs2(); }
};

namespace detail {

inline void fill_normals(std::mt19937_64& rng, Eigen::Ref<Eigen::VectorXd> out)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < out.size(); ++i)
        out(i) = normal(rng);
}

} // namespace detail

template <class Rng>
FieldRealisation sample_field(const FieldSampler& sampler, Rng& rng)
{
    const auto n = sampler.size();
    Eigen::VectorXd zr(n), zi(n);
    detail::fill_normals(rng, zr);
    detail::fill_normals(rng, zi);
    return {sampler.factor * zr, sampler.factor * zi};
}

/// Lattice maximum of the chi^2_2 field for one realisation.
template <class Rng>
double sample_sup_chi2(const FieldSampler& sampler, Rng& rng)
{
    return sample_field(sampler, rng).intensity().maxCoeff();
}

/// Monte Carlo exceedance counts of the lattice supremum.
struct EmpiricalCcdf {
    std::vector<double> thresholds;
    std::vector<std::uint64_t> exceed_counts;
    std::uint64_t replicates = 0;
    std::uint64_t seed = 0;

    double probability(std::size_t i) const
    {
        return static_cast<double>(exceed_counts.at(i)) / static_cast<double>(replicates);
    }
};

struct SimulationOptions {
    double clamp_tol = 0.01;
    unsigned workers = 0; ///< 0 selects the hardware concurrency
};

namespace detail {

inline constexpr std::uint64_t replicate_block = 64;

/// Exceedance counts for replicates [first, last). The block is evaluated as
/// one N x 2b product; its composition depends only on the replicate range.
inline void count_block(const FieldSampler& sampler, std::span<const double> thresholds,
                        std::uint64_t seed, std::uint64_t first, std::uint64_t last,
                        std::vector<std::uint64_t>& counts)
{
    const auto n = sampler.size();
    const auto b = static_cast<Eigen::Index>(last - first);
    Eigen::MatrixXd z(n, 2 * b);
    for (Eigen::Index r = 0; r < b; ++r) {
        auto rng = replicate_stream(seed, first + static_cast<std::uint64_t>(r));
        fill_normals(rng, z.col(2 * r));
        fill_normals(rng, z.col(2 * r + 1));
    }
    const Eigen::MatrixXd g = sampler.factor * z;
    for (Eigen::Index r = 0; r < b; ++r) {
        const double sup = (g.col(2 * r).cwiseAbs2() + g.col(2 * r + 1).cwiseAbs2()).maxCoeff();
        // thresholds ascending: everything up to the first miss is exceeded
        for (std::size_t t = 0; t < thresholds.size() && sup >= thresholds[t]; ++t)
            ++counts[t];
    }
}

} // namespace detail

inline EmpiricalCcdf estimate_hsp(const FieldSampler& sampler, std::vector<double> thresholds,
                                  std::uint64_t replicates, std::uint64_t seed, unsigned workers = 0)
{
    detail::require(replicates >= 1, "estimate_hsp: replicates must be >= 1");
    detail::require(std::is_sorted(thresholds.begin(), thresholds.end()),
                    "estimate_hsp: thresholds must be ascending");

    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t blocks = (replicates + detail::replicate_block - 1) / detail::replicate_block;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));

    // Each worker owns a strided set of blocks; counts are summed afterwards,
    // which is order independent for integers.
    std::vector<std::vector<std::uint64_t>> partial(workers,
                                                    std::vector<std::uint64_t>(thresholds.size(), 0));
    auto run = [&](unsigned w) {
        for (std::uint64_t blk = w; blk < blocks; blk += workers) {
            const std::uint64_t first = blk * detail::replicate_block;
            const std::uint64_t last = std::min(replicates, first + detail::replicate_block);
            detail::count_block(sampler, thresholds, seed, first, last, partial[w]);
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
    }

    EmpiricalCcdf out;
    out.thresholds = std::move(thresholds);
    out.exceed_counts.assign(out.thresholds.size(), 0);
    for (const auto& p : partial)
        for (std::size_t t = 0; t < p.size(); ++t)
            out.exceed_counts[t] += p[t];
    out.replicates = replicates;
    out.seed = seed;
    return out;
}

/// Builds the grid, its covariance and factor, then runs the replicates.
inline EmpiricalCcdf estimate_hsp(const GridSpec& spec, const CorrelationModel& model,
                                  std::vector<double> thresholds, std::uint64_t replicates,
                                  std::uint64_t seed, const SimulationOptions& options = {})
{
    const auto points = build_grid(spec);
    const auto sampler = covariance_factor(covariance_matrix(points, model), options.clamp_tol);
    return estimate_hsp(sampler, std::move(thresholds), replicates, seed, options.workers);
}

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Wilson score interval for a binomial proportion; z = 1.96 gives 95%.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                double z = 1.959963984540054)
{
    detail::require(trials > 0 && successes <= trials, "wilson_interval: need 0 <= k <= n, n > 0");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

} // namespace cfas
