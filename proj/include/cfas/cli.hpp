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
#include "cfas/correlation.hpp"
#include "cfas/error.hpp"
#include "cfas/geometry.hpp"
#include "cfas/montecarlo.hpp"
#include "cfas/shapeopt.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

namespace cfas::cli {

/// Bad or inconsistent command-line / config input (exit status 2).
class usage_error : public cfas::invalid_argument {
public:
    using cfas::invalid_argument::invalid_argument;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_capacity = 3;

struct RunConfig {
    std::vector<double> dims;
    double lambda2 = 2.0 * std::numbers::pi * std::numbers::pi;

    double u0_start = 1.0;
    double u0_stop = 16.0;
    double u0_step = 0.5;
    std::vector<double> thresholds; ///< explicit list, overrides the range

    /// When set, range and threshold values are physical SNR thresholds u.
    std::optional<ChannelConfig> channel;

    double spacing = 0.01;
    std::uint64_t replicates = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::size_t max_points = 20000;
    double clamp_tol = 0.01;

    std::optional<double> area;
    std::optional<double> volume;
    std::vector<double> limits;
    double u0 = 6.4; ///< objective threshold for optimize
    int steps = 4000;
};

/// Locale-independent formatting to a fixed number of significant digits
/// (printf %.Ng semantics).
inline std::string format_number(double v, int significant)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, significant);
    return std::string(buf, res.ptr);
}

inline std::string format_analytic(double v) { return format_number(v, 15); }
inline std::string format_probability(double v) { return format_number(v, 6); }

struct ThresholdPoint {
    double u = 0.0;  ///< as given by the user (equals u0 without a channel)
    double u0 = 0.0; ///< normalised threshold
};

/// Thresholds from the explicit list or the start/stop/step range, converted
/// to u0 when a channel is configured.
inline std::vector<ThresholdPoint> threshold_points(const RunConfig& cfg)
{
    std::vector<double> values = cfg.thresholds;
    if (values.empty()) {
        if (!(std::isfinite(cfg.u0_start) && std::isfinite(cfg.u0_stop) && cfg.u0_start < cfg.u0_stop))
            throw usage_error("u0 range: start must be < stop");
        if (!(std::isfinite(cfg.u0_step) && cfg.u0_step > 0.0))
            throw usage_error("u0 range: step must be > 0");
        const auto n = static_cast<std::size_t>(
                           std::floor((cfg.u0_stop - cfg.u0_start) / cfg.u0_step + 1e-9))
                       + 1;
        for (std::size_t i = 0; i < n; ++i)
            values.push_back(cfg.u0_start + static_cast<double>(i) * cfg.u0_step);
    }
    std::vector<ThresholdPoint> out;
    double prev = -HUGE_VAL;
    for (double v : values) {
        if (!(std::isfinite(v) && v > 0.0))
            throw usage_error("thresholds must be finite and > 0");
        if (v <= prev)
            throw usage_error("thresholds must be strictly ascending");
        prev = v;
        out.push_back({v, cfg.channel ? threshold_u0(*cfg.channel, v) : v});
    }
    return out;
}

inline DomainBox config_box(const RunConfig& cfg)
{
    try {
        return DomainBox(cfg.dims);
    } catch (const cfas::invalid_argument& e) {
        throw usage_error(e.what());
    }
}

inline void require_lambda2(const RunConfig& cfg)
{
    if (!(std::isfinite(cfg.lambda2) && cfg.lambda2 > 0.0))
        throw usage_error("lambda2 must be > 0");
}

inline void write_threshold_prefix(std::ostream& out, const RunConfig& cfg, const ThresholdPoint& t)
{
    if (cfg.channel)
        out << format_analytic(t.u) << ',';
    out << format_analytic(t.u0);
}

/// Closed form, general EEC and scaling-law curves over the threshold range.
inline void cmd_analytic(const RunConfig& cfg, std::ostream& out)
{
    require_lambda2(cfg);
    const auto box = config_box(cfg);
    const auto points = threshold_points(cfg);

    out << (cfg.channel ? "u," : "") << "u0,p_closed,p_eec,p_scaling,clamped\n";
    for (const auto& t : points) {
        const auto closed = hsp_closed_form(box, cfg.lambda2, t.u0);
        const auto general = eec(box, cfg.lambda2, t.u0);
        const auto scaled = scaled_hsp(box, cfg.lambda2, t.u0);
        const bool clamped = closed.clamped || general.clamped || scaled.clamped;
        write_threshold_prefix(out, cfg, t);
        out << ',' << format_analytic(closed.value) << ',' << format_analytic(general.value) << ','
            << format_analytic(scaled.value) << ',' << (clamped ? "true" : "false") << '\n';
    }
}

/// Dimensional scaling law: per-threshold gain over a fixed antenna and the
/// exact remainders separating it from the closed form.
inline void cmd_scale(const RunConfig& cfg, std::ostream& out)
{
    require_lambda2(cfg);
    const auto box = config_box(cfg);
    const auto points = threshold_points(cfg);

    out << (cfg.channel ? "u," : "") << "u0,p_zero,p_scaling,p_closed,ratio,r2,r3\n";
    for (const auto& t : points) {
        const double p0 = chi2_tail(2, t.u0);
        const double scaled = scaled_hsp(box, cfg.lambda2, t.u0).value;
        const double closed = hsp_closed_form(box, cfg.lambda2, t.u0).value;
        write_threshold_prefix(out, cfg, t);
        out << ',' << format_analytic(p0) << ',' << format_analytic(scaled) << ','
            << format_analytic(closed) << ',' << format_analytic(scaled / p0) << ',';
        if (box.dim() >= 2) {
            const auto r = scaling_remainders(box, t.u0, cfg.lambda2);
            out << format_analytic(r.r2) << ',';
            if (r.r3)
                out << format_analytic(*r.r3);
        } else {
            out << ',';
        }
        out << '\n';
    }
}

/// Analytic optimum versus grid-search optimum for a sub-rectangle (area) or
/// sub-cuboid (volume) problem.
inline void cmd_optimize(const RunConfig& cfg, std::ostream& out)
{
    require_lambda2(cfg);
    if (cfg.area.has_value() == cfg.volume.has_value())
        throw usage_error("optimize: give exactly one of --area or --volume");
    if (!(std::isfinite(cfg.u0) && cfg.u0 > 0.0))
        throw usage_error("optimize: u0 must be > 0");
    if (cfg.steps < 100)
        throw usage_error("optimize: steps must be >= 100");

    const ClosedFormCoefficients k(cfg.lambda2, cfg.u0);
    auto cell = [](double v) { return format_analytic(v); };

    out << "solution,T1,T2,T3,objective\n";
    try {
        if (cfg.area) {
            if (cfg.limits.size() != 2)
                throw usage_error("optimize: --area needs two limits");
            const ShapeConstraints2D c{*cfg.area, {cfg.limits[0], cfg.limits[1]}};
            const auto best = optimal_rectangle(c);
            const double value = k.rectangle(best[0], best[1]);
            const auto grid = brute_force_rectangle(c, cfg.lambda2, cfg.u0, cfg.steps);
            out << "analytic," << cell(best[0]) << ',' << cell(best[1]) << ",," << cell(value) << '\n';
            out << "oracle," << cell(grid.sides[0]) << ',' << cell(grid.sides[1]) << ",,"
                << cell(grid.value) << '\n';
            out << "gap,,,," << cell(value - grid.value) << '\n';
        } else {
            if (cfg.limits.size() != 3)
                throw usage_error("optimize: --volume needs three limits");
            const ShapeConstraints3D c{*cfg.volume, {cfg.limits[0], cfg.limits[1], cfg.limits[2]}};
            const auto best = optimal_cuboid(c);
            const double value = k.cuboid(best[0], best[1], best[2]);
            const auto grid = brute_force_cuboid(c, cfg.lambda2, cfg.u0, cfg.steps);
            out << "analytic," << cell(best[0]) << ',' << cell(best[1]) << ',' << cell(best[2]) << ','
                << cell(value) << '\n';
            out << "oracle," << cell(grid.sides[0]) << ',' << cell(grid.sides[1]) << ','
                << cell(grid.sides[2]) << ',' << cell(grid.value) << '\n';
            out << "gap,,,," << cell(value - grid.value) << '\n';
        }
    } catch (const usage_error&) {
        throw;
    } catch (const cfas::invalid_argument& e) {
        throw usage_error(e.what());
    }
}

/// Empirical high-SNR probability of the lattice supremum with 95% Wilson
/// intervals, alongside the closed form.
inline void cmd_simulate(const RunConfig& cfg, std::ostream& out)
{
    require_lambda2(cfg);
    const auto box = config_box(cfg);
    const auto points = threshold_points(cfg);
    if (!(std::isfinite(cfg.spacing) && cfg.spacing > 0.0))
        throw usage_error("simulate: spacing must be > 0");
    if (cfg.replicates < 1)
        throw usage_error("simulate: replicates must be >= 1");

    std::vector<double> u0s;
    for (const auto& t : points)
        u0s.push_back(t.u0);

    const GridSpec spec{box, cfg.spacing, cfg.max_points};
    const auto ccdf = estimate_hsp(spec, CorrelationModel::jakes(), u0s, cfg.replicates, cfg.seed,
                                   SimulationOptions{cfg.clamp_tol, cfg.workers});

    out << (cfg.channel ? "u," : "") << "u0,p_emp,ci_low,ci_high,p_closed\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto ci = wilson_interval(ccdf.exceed_counts[i], ccdf.replicates);
        write_threshold_prefix(out, cfg, points[i]);
        out << ',' << format_probability(ccdf.probability(i)) << ',' << format_probability(ci.low) << ','
            << format_probability(ci.high) << ','
            << format_analytic(hsp_closed_form(box, cfg.lambda2, points[i].u0).value) << '\n';
    }
}

/// Side sets for the fixed-measure comparison curves.
inline const std::vector<std::vector<double>>& fig3_rectangles()
{
    static const std::vector<std::vector<double>> sets{{1.0, 1.0}, {2.0, 0.5}, {8.0, 0.125}};
    return sets;
}

inline const std::vector<std::vector<double>>& fig3_cuboids()
{
    static const std::vector<std::vector<double>> sets{
        {1.0, 1.0, 1.0}, {2.0, 2.0, 0.25}, {4.0, 4.0, 0.0625}};
    return sets;
}

inline constexpr double fig2_side = 0.25;
inline constexpr double fig2_spacing_1d = 0.01;
inline constexpr double fig2_spacing_2d = 0.025;

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw usage_error("cannot write " + path.string());
    return f;
}

inline std::string side_label(const std::vector<double>& sides)
{
    std::string s;
    for (std::size_t i = 0; i < sides.size(); ++i)
        s += (i ? "x" : "") + format_number(sides[i], 15);
    return s;
}

inline void write_curves(std::ostream& out, const RunConfig& cfg,
                         const std::vector<std::vector<double>>& boxes)
{
    const auto points = threshold_points(cfg);
    out << "u0";
    for (const auto& b : boxes)
        out << ",p_" << side_label(b);
    out << '\n';
    for (const auto& t : points) {
        out << format_analytic(t.u0);
        for (const auto& b : boxes)
            out << ',' << format_analytic(hsp_closed_form(DomainBox(b), cfg.lambda2, t.u0).value);
        out << '\n';
    }
}

} // namespace detail

/// Writes the data behind the dimension-comparison ("fig2") or the
/// fixed-measure shape comparison ("fig3") into out_dir. Returns the paths
/// written.
inline std::vector<std::filesystem::path> cmd_reproduce(const std::string& figure,
                                                        const std::filesystem::path& out_dir,
                                                        const RunConfig& cfg)
{
    require_lambda2(cfg);
    if (figure != "fig2" && figure != "fig3")
        throw usage_error("reproduce: figure must be fig2 or fig3");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw usage_error("cannot create " + out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    if (figure == "fig2") {
        const auto points = threshold_points(cfg);
        const auto path = out_dir / "fig2_analytic.csv";
        auto f = detail::open_output(path);
        f << "u0,closed_0d,closed_1d,closed_2d,closed_3d,scaling_1d,scaling_2d,scaling_3d\n";
        for (const auto& t : points) {
            f << format_analytic(t.u0);
            std::vector<double> sides;
            for (int n = 0; n <= 3; ++n) {
                f << ',' << format_analytic(hsp_closed_form(DomainBox(sides), cfg.lambda2, t.u0).value);
                sides.push_back(fig2_side);
            }
            sides.clear();
            for (int n = 1; n <= 3; ++n) {
                sides.push_back(fig2_side);
                f << ',' << format_analytic(scaled_hsp(DomainBox(sides), cfg.lambda2, t.u0).value);
            }
            f << '\n';
        }
        written.push_back(path);

        const std::vector<std::pair<std::vector<double>, double>> sims{
            {{}, fig2_spacing_1d},
            {{fig2_side}, fig2_spacing_1d},
            {{fig2_side, fig2_side}, fig2_spacing_2d}};
        for (std::size_t n = 0; n < sims.size(); ++n) {
            RunConfig sim = cfg;
            sim.dims = sims[n].first;
            sim.spacing = sims[n].second;
            const auto sim_path = out_dir / ("fig2_simulated_" + std::to_string(n) + "d.csv");
            auto sf = detail::open_output(sim_path);
            cmd_simulate(sim, sf);
            written.push_back(sim_path);
        }
    } else {
        const auto p2 = out_dir / "fig3_2d.csv";
        auto f2 = detail::open_output(p2);
        detail::write_curves(f2, cfg, fig3_rectangles());
        written.push_back(p2);

        const auto p3 = out_dir / "fig3_3d.csv";
        auto f3 = detail::open_output(p3);
        detail::write_curves(f3, cfg, fig3_cuboids());
        written.push_back(p3);
    }
    return written;
}

} // namespace cfas::cli
