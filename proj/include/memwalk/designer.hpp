// designer.hpp
// Inverse problem: compile a target interior density sequence f_0..f_{T-1}
// into memory-qubit coefficients whose walk reproduces that density, plus
// the predicted profile and a simulate-and-compare roundtrip check.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "memwalk/analytics.hpp"
#include "memwalk/core.hpp"
#include "memwalk/dense.hpp"
#include "memwalk/sparse.hpp"

namespace memwalk {

// Interior density targets. f_i is the density deposited at x = t - 2i for
// every t > i; the left edge x = -t keeps whatever mass remains. Feasible
// iff every partial sum stays <= 1.
class TargetDensity {
public:
    explicit TargetDensity(std::vector<double> f) : f_(std::move(f)) {
        constexpr double slack = 1e-12;
        double cumulative = 0.0;
        for (std::size_t i = 0; i < f_.size(); ++i) {
            if (!(f_[i] >= -slack && f_[i] <= 1.0 + slack) || !std::isfinite(f_[i]))
                throw validation_error("TargetDensity: f[" + std::to_string(i) +
                                       "] = " + std::to_string(f_[i]) +
                                       " outside [0, 1]");
            f_[i] = std::clamp(f_[i], 0.0, 1.0);
            cumulative += f_[i];
            if (cumulative > 1.0 + slack)
                throw infeasibility_error(
                    "TargetDensity: cumulative mass exceeds 1 at index " +
                    std::to_string(i) + " (sum = " + std::to_string(cumulative) + ")");
        }
    }

    int horizon() const { return static_cast<int>(f_.size()); }
    const std::vector<double>& values() const { return f_; }

    double f(int i) const {
        if (i < 0 || i >= horizon()) return 0.0;
        return f_[i];
    }

    // sum_{i < count} f_i
    double cumulative(int count) const {
        double s = 0.0;
        for (int i = 0; i < count && i < horizon(); ++i) s += f_[i];
        return s;
    }

private:
    std::vector<double> f_;
};

// B_k^2 = f_{k-1} / (1 - sum_{i <= k-2} f_i); once the remaining mass is
// exhausted the denominator vanishes and the pair degenerates to (1, 0).
inline ClosedFormParams design(const TargetDensity& target) {
    const int T = target.horizon();
    std::vector<std::pair<double, double>> coeffs;
    coeffs.reserve(T);
    double remaining = 1.0;
    for (int k = 1; k <= T; ++k) {
        if (remaining <= 1e-12) {
            coeffs.emplace_back(1.0, 0.0);
            continue;
        }
        double b2 = target.f(k - 1) / remaining;
        b2 = std::clamp(b2, 0.0, 1.0);
        coeffs.emplace_back(std::sqrt(1.0 - b2), std::sqrt(b2));
        remaining -= target.f(k - 1);
    }
    return ClosedFormParams(std::move(coeffs), T);
}

// Density the designed walk should produce at (x, t).
inline double predicted_density(const TargetDensity& target, int x, int t) {
    if (t < 0 || t > target.horizon())
        throw validation_error("predicted_density: t = " + std::to_string(t) +
                               " outside [0, " + std::to_string(target.horizon()) + "]");
    if (std::abs(x) > t) return 0.0;
    if (x == -t) return std::max(0.0, 1.0 - target.cumulative(t));
    if (((x - t) % 2 + 2) % 2 == 1) return 0.0;
    return target.f((t - x) / 2);
}

inline DensityProfile predicted_profile(const TargetDensity& target, int t) {
    std::map<int, double> values;
    for (int x = -t; x <= t; x += 2) values[x] = predicted_density(target, x, t);
    return DensityProfile::from_values(t, std::move(values));
}

struct RoundtripReport {
    double max_deviation = 0.0; // over all t <= horizon and all on-grid x
    int worst_t = 0;
    int worst_x = 0;

    bool within(double tol) const { return max_deviation <= tol; }
};

namespace detail {

inline void fold_deviation(RoundtripReport& report, const TargetDensity& target,
                           const DensityProfile& profile) {
    for (int x = -profile.t; x <= profile.t; x += 2) {
        const double want = predicted_density(target, x, profile.t);
        const double got = profile.at(x);
        const double dev = std::abs(want - got);
        if (dev > report.max_deviation) {
            report.max_deviation = dev;
            report.worst_t = profile.t;
            report.worst_x = x;
        }
    }
    // stray mass off the expected grid counts against the roundtrip too
    for (const auto& [x, p] : profile.values) {
        if (std::abs(x) <= profile.t && ((x - profile.t) % 2 + 2) % 2 == 0) continue;
        const double dev = std::abs(p);
        if (dev > report.max_deviation) {
            report.max_deviation = dev;
            report.worst_t = profile.t;
            report.worst_x = x;
        }
    }
}

} // namespace detail

// Compile the target, evolve it with the requested engine, and measure the
// worst disagreement with the prediction. N = 0 picks the smallest odd
// lattice whose half-width exceeds the horizon.
inline RoundtripReport roundtrip_check(const TargetDensity& target,
                                       EngineKind engine = EngineKind::sparse,
                                       int N = 0) {
    const int T = target.horizon();
    if (N == 0) N = std::max(5, 2 * T + 3);
    const LatticeConfig lattice(N);
    if (T >= lattice.half())
        throw validation_error("roundtrip_check: horizon " + std::to_string(T) +
                               " needs N >= " + std::to_string(2 * T + 3));
    const ClosedFormParams params = design(target);
    RoundtripReport report;
    switch (engine) {
        case EngineKind::sparse: {
            const WalkProgram program = params.to_walk_program(lattice);
            for (const DensityProfile& profile : run(program, T))
                detail::fold_deviation(report, target, profile);
            break;
        }
        case EngineKind::dense: {
            const WalkProgram program = params.to_walk_program(lattice);
            DenseState state = dense_initial(program);
            detail::fold_deviation(report, target, marginal_position(state));
            for (int t = 1; t <= T; ++t) {
                state = dense_step_memory(state);
                detail::fold_deviation(report, target, marginal_position(state));
            }
            break;
        }
        case EngineKind::analytic: {
            for (int t = 0; t <= T; ++t) {
                std::map<int, double> values;
                for (int x = -t; x <= t; x += 2) values[x] = density(x, t, params);
                detail::fold_deviation(report, target,
                                       DensityProfile::from_values(t, std::move(values)));
            }
            break;
        }
    }
    return report;
}

} // namespace memwalk
