// cli.hpp
// Subcommand implementations behind the memwalk tool: simulate, design,
// compare, figures, selftest. Exit codes: 0 ok, 1 tolerance failure,
// 2 config error, 3 engine error.

#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "memwalk/designer.hpp"
#include "memwalk/io.hpp"
#include "memwalk/qtable.hpp"
#include "memwalk/selftest.hpp"
#include "memwalk/verify.hpp"

namespace memwalk::cli {

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open config file '" + path + "'");
    return parse_config(in);
}

namespace detail {

// Scenario coefficients plus, for designed targets, the target itself.
struct ScenarioBuild {
    ClosedFormParams params;
    std::optional<TargetDensity> target;
    int T;
};

inline ScenarioBuild build_scenario(const RunConfig& cfg) {
    if (cfg.scenario.empty())
        throw validation_error("config: scenario is required");
    if (cfg.scenario == "target") {
        if (cfg.f.empty())
            throw validation_error("config: scenario=target requires f = ...");
        TargetDensity target(cfg.f);
        const int T = cfg.T < 0 ? target.horizon() : cfg.T;
        return {design(target), std::move(target), T};
    }
    if (cfg.T < 0)
        throw validation_error("config: T is required for scenario=" + cfg.scenario);
    if (cfg.scenario == "linear") {
        if (cfg.b1 < 0.0)
            throw validation_error("config: scenario=linear requires b1 in [0, 1]");
        return {scenario_params(ScenarioParams::linear(cfg.b1), cfg.T), std::nullopt,
                cfg.T};
    }
    if (cfg.scenario == "parabolic") {
        return {scenario_params(ScenarioParams::parabolic(cfg.z), cfg.T), std::nullopt,
                cfg.T};
    }
    if (cfg.scenario == "coefficients") {
        if (cfg.coefficients.empty())
            throw validation_error("config: scenario=coefficients requires coefficients = A:B,...");
        return {ClosedFormParams(cfg.coefficients, cfg.T), std::nullopt, cfg.T};
    }
    throw validation_error("config: unknown scenario '" + cfg.scenario + "'");
}

// Smallest odd lattice keeping the cone strictly inside, unless pinned.
inline LatticeConfig pick_lattice(const RunConfig& cfg, int T) {
    const int N = cfg.N == 0 ? std::max(5, 2 * T + 3) : cfg.N;
    const LatticeConfig lattice(N);
    // the cone first wraps at t = floor(N/2) + 1; allow runs up to the touch
    if (T > lattice.half())
        throw validation_error("config: T = " + std::to_string(T) +
                               " needs N >= " + std::to_string(2 * T + 1) +
                               " (got N = " + std::to_string(N) + ")");
    return lattice;
}

inline std::vector<DensityProfile> evolve_profiles(const ClosedFormParams& params,
                                                   const RunConfig& cfg, int T) {
    std::vector<DensityProfile> profiles;
    profiles.reserve(static_cast<std::size_t>(T) + 1);
    switch (cfg.engine) {
        case EngineKind::sparse: {
            const LatticeConfig lattice = pick_lattice(cfg, T);
            return run(params.to_walk_program(lattice), T);
        }
        case EngineKind::dense: {
            const LatticeConfig lattice = pick_lattice(cfg, T);
            DenseState state = dense_initial(params.to_walk_program(lattice));
            profiles.push_back(marginal_position(state));
            for (int t = 1; t <= T; ++t) {
                state = dense_step_memory(state);
                profiles.push_back(marginal_position(state));
            }
            return profiles;
        }
        case EngineKind::analytic: {
            for (int t = 0; t <= T; ++t) {
                std::map<int, double> values;
                for (int x = -t; x <= t; x += 2) values[x] = density(x, t, params);
                profiles.push_back(DensityProfile::from_values(t, std::move(values)));
            }
            return profiles;
        }
    }
    throw validation_error("config: unknown engine");
}

inline std::filesystem::path out_dir(const RunConfig& cfg) {
    const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw validation_error("cannot create output directory '" + dir.string() +
                               "': " + ec.message());
    return dir;
}

inline void write_file(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path);
    if (!out)
        throw validation_error("cannot open '" + path.string() + "' for writing");
    body(out);
    if (!out)
        throw consistency_error("write failed for '" + path.string() + "'");
    std::cout << "wrote " << path.string() << "\n";
}

} // namespace detail

inline int cmd_simulate(const RunConfig& cfg) {
    const detail::ScenarioBuild build = detail::build_scenario(cfg);
    const std::vector<DensityProfile> profiles =
        detail::evolve_profiles(build.params, cfg, build.T);
    const std::filesystem::path dir = detail::out_dir(cfg);
    detail::write_file(dir / "density.csv",
                       [&](std::ostream& o) { write_density_csv(o, profiles); });
    detail::write_file(dir / "moments.csv",
                       [&](std::ostream& o) { write_moments_csv(o, profiles); });
    detail::write_file(dir / "program.csv",
                       [&](std::ostream& o) { write_program_csv(o, build.params); });
    std::cout << "simulate: scenario=" << cfg.scenario
              << " engine=" << engine_name(cfg.engine) << " T=" << build.T << "\n";
    return 0;
}

inline int cmd_design(const RunConfig& cfg) {
    if (cfg.f.empty())
        throw validation_error("config: design requires a target (f = ...)");
    const TargetDensity target(cfg.f);
    const ClosedFormParams params = design(target);
    const int T = target.horizon();
    const std::vector<DensityProfile> profiles =
        detail::evolve_profiles(params, cfg, T);

    RoundtripReport report;
    for (const DensityProfile& profile : profiles)
        memwalk::detail::fold_deviation(report, target, profile);

    const std::filesystem::path dir = detail::out_dir(cfg);
    detail::write_file(dir / "program.csv",
                       [&](std::ostream& o) { write_program_csv(o, params); });
    detail::write_file(dir / "roundtrip.csv", [&](std::ostream& o) {
        write_roundtrip_csv(o, target, profiles);
    });
    std::cout << "design: engine=" << engine_name(cfg.engine) << " T=" << T
              << " max |delta| = " << format_double(report.max_deviation)
              << " (worst at t=" << report.worst_t << ", x=" << report.worst_x
              << ")\n";
    return report.within(norm_tolerance) ? 0 : 1;
}

inline int cmd_compare(const RunConfig& cfg, bool corrupt_qtable = false) {
    const detail::ScenarioBuild build = detail::build_scenario(cfg);
    const LatticeConfig lattice = detail::pick_lattice(cfg, build.T);
    if (lattice.site_count > 11)
        throw validation_error("compare: N = " + std::to_string(lattice.site_count) +
                               " exceeds the dense-reference cap of 11 sites");
    StepOptions options;
    if (corrupt_qtable) options.table = corrupted_q_table();
    const FourWayReport report =
        four_way_check(build.params, lattice, build.T, options);
    for (const auto& [pair, dev] : report.pair_deviation)
        std::cout << "compare: " << pair << " max deviation = " << format_double(dev)
                  << "\n";
    std::cout << "compare: overall max deviation = "
              << format_double(report.max_deviation);
    if (!report.worst_pair.empty())
        std::cout << " (" << report.worst_pair << " at t=" << report.worst_t << ")";
    std::cout << "\n";
    return report.within(1e-10) ? 0 : 1;
}

namespace detail {

struct ScenarioCurves {
    std::string label;
    std::vector<double> times;
    std::vector<double> mean_sim, mean_theory, sigma_sim, sigma_theory;
};

inline ScenarioCurves scenario_curves(const ScenarioParams& s, int T,
                                      const std::string& label) {
    ScenarioCurves curves;
    curves.label = label;
    const ClosedFormParams params = scenario_params(s, T);
    const LatticeConfig lattice(std::max(5, 2 * T + 3));
    const std::vector<DensityProfile> profiles =
        run(params.to_walk_program(lattice), T);
    for (int t = 0; t <= T; ++t) {
        curves.times.push_back(t);
        curves.mean_sim.push_back(profiles[t].mean);
        curves.mean_theory.push_back(mean(t, params));
        curves.sigma_sim.push_back(profiles[t].sigma);
        curves.sigma_theory.push_back(scenario_sigma(s, t));
    }
    return curves;
}

inline std::vector<std::pair<double, double>> zip_points(
    const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<std::pair<double, double>> points;
    points.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) points.emplace_back(xs[i], ys[i]);
    return points;
}

} // namespace detail

// Mean-trajectory figure for a grid of drift velocities v (linear scenario,
// B1^2 = (v+1)/2) and mean/sigma figures for a grid of parabolic z values.
// Scenario evolutions run in parallel; files are written in order by this
// thread only.
inline int cmd_figures(const RunConfig& cfg) {
    if (cfg.v_values.empty() && cfg.z_values.empty())
        throw validation_error(
            "config: figures needs a scenario grid (v_values and/or z_values)");
    const std::filesystem::path dir = detail::out_dir(cfg);

    if (!cfg.v_values.empty()) {
        const int T = cfg.T < 0 ? 50 : cfg.T;
        std::vector<std::future<detail::ScenarioCurves>> futures;
        for (double v : cfg.v_values) {
            if (!(v >= -1.0 && v <= 1.0))
                throw validation_error("config: v_values entries must lie in [-1, 1]");
            const double b1 = std::sqrt((v + 1.0) / 2.0);
            std::ostringstream label;
            label << "v = " << v;
            futures.push_back(std::async(
                std::launch::async, detail::scenario_curves,
                ScenarioParams::linear(b1), T, label.str()));
        }
        std::vector<detail::ScenarioCurves> all;
        all.reserve(futures.size());
        for (auto& f : futures) all.push_back(f.get());

        detail::write_file(dir / "fig3.csv", [&](std::ostream& o) {
            o << "v,t,mean_sim,mean_theory\n";
            for (std::size_t i = 0; i < all.size(); ++i)
                for (std::size_t j = 0; j < all[i].times.size(); ++j)
                    o << format_double(cfg.v_values[i]) << ','
                      << static_cast<int>(all[i].times[j]) << ','
                      << format_double(all[i].mean_sim[j]) << ','
                      << format_double(all[i].mean_theory[j]) << '\n';
        });
        detail::write_file(dir / "fig3.svg", [&](std::ostream& o) {
            std::vector<PlotSeries> series;
            for (const auto& c : all) {
                series.push_back({c.label + " (sim)",
                                  detail::zip_points(c.times, c.mean_sim),
                                  PlotStyle::dashed});
                series.push_back({c.label + " (theory)",
                                  detail::zip_points(c.times, c.mean_theory),
                                  PlotStyle::markers});
            }
            write_svg_plot(o, "Mean trajectory, linear programs", "t", "mean",
                           series);
        });
    }

    if (!cfg.z_values.empty()) {
        std::vector<std::future<detail::ScenarioCurves>> futures;
        std::vector<int> horizons;
        for (double z : cfg.z_values) {
            const ScenarioParams s = ScenarioParams::parabolic(z);
            int T = s.max_horizon();
            if (cfg.T >= 0) T = std::min(T, cfg.T);
            horizons.push_back(T);
            std::ostringstream label;
            label << "z = " << z;
            futures.push_back(std::async(std::launch::async,
                                         detail::scenario_curves, s, T,
                                         label.str()));
        }
        std::vector<detail::ScenarioCurves> all;
        all.reserve(futures.size());
        for (auto& f : futures) all.push_back(f.get());

        detail::write_file(dir / "fig4.csv", [&](std::ostream& o) {
            o << "z,t,mean_sim,mean_theory,sigma_sim,sigma_theory\n";
            for (std::size_t i = 0; i < all.size(); ++i)
                for (std::size_t j = 0; j < all[i].times.size(); ++j)
                    o << format_double(cfg.z_values[i]) << ','
                      << static_cast<int>(all[i].times[j]) << ','
                      << format_double(all[i].mean_sim[j]) << ','
                      << format_double(all[i].mean_theory[j]) << ','
                      << format_double(all[i].sigma_sim[j]) << ','
                      << format_double(all[i].sigma_theory[j]) << '\n';
        });
        detail::write_file(dir / "fig4_mean.svg", [&](std::ostream& o) {
            std::vector<PlotSeries> series;
            for (const auto& c : all) {
                series.push_back({c.label + " (sim)",
                                  detail::zip_points(c.times, c.mean_sim),
                                  PlotStyle::dashed});
                series.push_back({c.label + " (theory)",
                                  detail::zip_points(c.times, c.mean_theory),
                                  PlotStyle::markers});
            }
            write_svg_plot(o, "Mean trajectory, parabolic programs", "t", "mean",
                           series);
        });
        detail::write_file(dir / "fig4_sigma.svg", [&](std::ostream& o) {
            std::vector<PlotSeries> series;
            for (const auto& c : all) {
                series.push_back({c.label + " (sim)",
                                  detail::zip_points(c.times, c.sigma_sim),
                                  PlotStyle::dashed});
                series.push_back({c.label + " (theory)",
                                  detail::zip_points(c.times, c.sigma_theory),
                                  PlotStyle::markers});
            }
            write_svg_plot(o, "Standard deviation, parabolic programs", "t",
                           "sigma", series);
        });
    }
    return 0;
}

inline int cmd_selftest(unsigned seed) {
    return run_selftest(std::cout, seed) ? 0 : 1;
}

// Map the error taxonomy onto the exit-code contract.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const validation_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace memwalk::cli
