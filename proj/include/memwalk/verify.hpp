// verify.hpp
// Cross-checks between the four density routes: sparse engine, dense
// reference, closed-form evaluation, and the amplitude recurrence.

#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "memwalk/analytics.hpp"
#include "memwalk/core.hpp"
#include "memwalk/dense.hpp"
#include "memwalk/sparse.hpp"

namespace memwalk {

// Largest pointwise difference over the union of supports. Profiles must
// describe the same time slice.
inline double max_profile_deviation(const DensityProfile& a, const DensityProfile& b) {
    if (a.t != b.t)
        throw validation_error("max_profile_deviation: comparing t = " +
                               std::to_string(a.t) + " against t = " +
                               std::to_string(b.t));
    double worst = 0.0;
    for (const auto& [x, v] : a.values) worst = std::max(worst, std::abs(v - b.at(x)));
    for (const auto& [x, v] : b.values) worst = std::max(worst, std::abs(v - a.at(x)));
    return worst;
}

struct FourWayReport {
    double max_deviation = 0.0;
    std::string worst_pair;
    int worst_t = 0;
    std::map<std::string, double> pair_deviation; // per route pair

    bool within(double tol) const { return max_deviation <= tol; }
};

namespace detail {

inline void fold_pairwise(FourWayReport& report, const char* label_a,
                          const DensityProfile& a, const char* label_b,
                          const DensityProfile& b) {
    const double dev = max_profile_deviation(a, b);
    double& entry = report.pair_deviation[std::string(label_a) + "/" + label_b];
    entry = std::max(entry, dev);
    if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst_pair = std::string(label_a) + "/" + label_b;
        report.worst_t = a.t;
    }
}

} // namespace detail

// Evolve the same coefficients through all four routes and report the worst
// pairwise disagreement across t = 0..T. sparse_options exists so tests can
// inject a corrupted coin table and watch the agreement break.
inline FourWayReport four_way_check(const ClosedFormParams& params,
                                    const LatticeConfig& lattice, int T,
                                    const StepOptions& sparse_options = {}) {
    if (T > params.horizon())
        throw validation_error("four_way_check: T exceeds the parameter horizon");
    if (T > lattice.half())
        throw validation_error(
            "four_way_check: T = " + std::to_string(T) +
            " would wrap the light cone; need T <= floor(N/2) = " +
            std::to_string(lattice.half()));
    const WalkProgram program = params.to_walk_program(lattice);

    const std::vector<DensityProfile> sparse_profiles = run(program, T, sparse_options);

    std::vector<DensityProfile> dense_profiles;
    dense_profiles.reserve(static_cast<std::size_t>(T) + 1);
    DenseState state = dense_initial(program);
    dense_profiles.push_back(marginal_position(state));
    for (int t = 1; t <= T; ++t) {
        state = dense_step_memory(state);
        dense_profiles.push_back(marginal_position(state));
    }

    const AmplitudeTable table = recurrence_evolve(params, T);

    FourWayReport report;
    for (int t = 0; t <= T; ++t) {
        std::map<int, double> closed_values, recur_values;
        for (int x = -t; x <= t; x += 2) {
            closed_values[x] = density(x, t, params);
            recur_values[x] = table.density(x, t);
        }
        const DensityProfile closed = DensityProfile::from_values(t, std::move(closed_values));
        const DensityProfile recur = DensityProfile::from_values(t, std::move(recur_values));

        detail::fold_pairwise(report, "sparse", sparse_profiles[t], "dense", dense_profiles[t]);
        detail::fold_pairwise(report, "sparse", sparse_profiles[t], "closed", closed);
        detail::fold_pairwise(report, "sparse", sparse_profiles[t], "recurrence", recur);
        detail::fold_pairwise(report, "dense", dense_profiles[t], "closed", closed);
        detail::fold_pairwise(report, "dense", dense_profiles[t], "recurrence", recur);
        detail::fold_pairwise(report, "closed", closed, "recurrence", recur);
    }
    return report;
}

} // namespace memwalk
