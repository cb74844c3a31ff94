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

#include "cfas/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

namespace {

struct ChannelArgs {
    std::optional<double> beta;
    std::optional<double> es;
    std::optional<double> sigma2;
};

} // namespace

int main(int argc, char** argv)
{
    using namespace cfas::cli;

    CLI::App app{"High-SNR probability of continuous fluid antenna systems"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<CLI::ConfigINI>());
    app.set_config("--config", "", "Flat key=value file; command-line flags override it");

    RunConfig cfg;
    ChannelArgs channel;
    std::string output;
    std::string out_dir = ".";
    std::string figure;
    double area = 0.0;
    double volume = 0.0;

    app.add_option("--dims", cfg.dims, "Box side lengths in wavelengths (0-3 values)")->delimiter(',');
    app.add_option("--lambda2", cfg.lambda2, "Second spectral moment")->capture_default_str();
    app.add_option("--u0-start", cfg.u0_start, "First threshold of the range")->capture_default_str();
    app.add_option("--u0-stop", cfg.u0_stop, "Last threshold of the range")->capture_default_str();
    app.add_option("--u0-step", cfg.u0_step, "Threshold step")->capture_default_str();
    app.add_option("--thresholds", cfg.thresholds, "Explicit ascending thresholds")->delimiter(',');
    app.add_option("--beta", channel.beta, "Channel gain; with --es and --sigma2 thresholds are SNR values");
    app.add_option("--es", channel.es, "Symbol energy");
    app.add_option("--sigma2", channel.sigma2, "Noise power");
    app.add_option("--spacing", cfg.spacing, "Simulation grid step in wavelengths")->capture_default_str();
    app.add_option("--replicates", cfg.replicates, "Monte Carlo replicates")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    app.add_option("--workers", cfg.workers, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--max-points", cfg.max_points, "Grid point cap")->capture_default_str();
    app.add_option("--clamp-tol", cfg.clamp_tol, "Allowed clamped eigenvalue mass")->capture_default_str();
    auto* area_opt = app.add_option("--area", area, "Area budget S (2D optimize)");
    auto* volume_opt = app.add_option("--volume", volume, "Volume budget V (3D optimize)");
    app.add_option("--limits", cfg.limits, "Per-side limits")->delimiter(',');
    app.add_option("--u0", cfg.u0, "Objective threshold for optimize")->capture_default_str();
    app.add_option("--steps", cfg.steps, "Oracle grid steps")->capture_default_str();
    app.add_option("--output", output, "Output CSV path (default stdout)");
    app.add_option("--out-dir", out_dir, "Output directory for reproduce")->capture_default_str();

    auto* analytic = app.add_subcommand("analytic", "Closed-form, EEC and scaling-law curves");
    auto* scale = app.add_subcommand("scale", "Dimensional scaling factors and remainders");
    auto* optimize = app.add_subcommand("optimize", "Optimal sub-rectangle / sub-cuboid");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo high-SNR probability");
    auto* reproduce = app.add_subcommand("reproduce", "Write the figure data sets");
    reproduce->add_option("figure", figure, "fig2 or fig3")->required()->check(CLI::IsMember({"fig2", "fig3"}));
    for (auto* sub : {analytic, scale, optimize, simulate, reproduce})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        const int given = channel.beta.has_value() + channel.es.has_value() + channel.sigma2.has_value();
        if (given == 3)
            cfg.channel = cfas::ChannelConfig{*channel.beta, *channel.es, *channel.sigma2};
        else if (given != 0)
            throw usage_error("--beta, --es and --sigma2 must be given together");
        if (cfg.channel)
            cfg.channel->validate();
        if (area_opt->count() > 0)
            cfg.area = area;
        if (volume_opt->count() > 0)
            cfg.volume = volume;

        if (*reproduce) {
            for (const auto& p : cmd_reproduce(figure, out_dir, cfg))
                std::cout << p.string() << '\n';
            return exit_ok;
        }

        std::ofstream file;
        if (!output.empty()) {
            file.open(output, std::ios::binary | std::ios::trunc);
            if (!file)
                throw usage_error("cannot write " + output);
        }
        std::ostream& out = output.empty() ? std::cout : file;

        if (*analytic)
            cmd_analytic(cfg, out);
        else if (*scale)
            cmd_scale(cfg, out);
        else if (*optimize)
            cmd_optimize(cfg, out);
        else if (*simulate)
            cmd_simulate(cfg, out);
        out.flush();
    } catch (const cfas::capacity_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_capacity;
    } catch (const cfas::conditioning_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_capacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_ok;
}
