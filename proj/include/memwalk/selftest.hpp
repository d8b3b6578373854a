// selftest.hpp
// End-to-end sanity battery used by the `selftest` subcommand and reusable
// from the test binaries. Prints one line per check.

#pragma once

#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <vector>

#include "memwalk/analytics.hpp"
#include "memwalk/core.hpp"
#include "memwalk/dense.hpp"
#include "memwalk/designer.hpp"
#include "memwalk/qtable.hpp"
#include "memwalk/sparse.hpp"
#include "memwalk/verify.hpp"

namespace memwalk {

// count unit pairs (cos r, sin r), r uniform in [0, pi/2].
inline std::vector<std::pair<double, double>> random_unit_pairs(std::mt19937& rng,
                                                               int count) {
    std::uniform_real_distribution<double> angle(0.0, std::asin(1.0));
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double r = angle(rng);
        pairs.emplace_back(std::cos(r), std::sin(r));
    }
    return pairs;
}

// Feasible target: count draws scaled so the total interior mass is `mass`.
inline TargetDensity random_target(std::mt19937& rng, int count, double mass = 0.9) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> f(count);
    double total = 0.0;
    for (double& v : f) {
        v = unit(rng) + 1e-3;
        total += v;
    }
    for (double& v : f) v *= mass / total;
    return TargetDensity(std::move(f));
}

namespace detail {

template <typename Fn>
bool selftest_step(std::ostream& out, const char* name, Fn&& fn) {
    try {
        if (fn()) {
            out << "ok   " << name << "\n";
            return true;
        }
        out << "FAIL " << name << "\n";
    } catch (const std::exception& e) {
        out << "FAIL " << name << " (" << e.what() << ")\n";
    }
    return false;
}

} // namespace detail

// Returns true iff every check passed.
inline bool run_selftest(std::ostream& out, unsigned seed = 20260823u) {
    std::mt19937 rng(seed);
    bool ok = true;

    ok &= detail::selftest_step(out, "memory coin is a permutation", [] {
        return q_table().is_permutation();
    });

    ok &= detail::selftest_step(out, "dense step is reversible", [&] {
        const LatticeConfig lattice(9);
        ClosedFormParams params(random_unit_pairs(rng, 3));
        DenseState state = dense_initial(params.to_walk_program(lattice));
        const std::vector<Complex> before = state.amplitudes;
        for (int t = 0; t < 4; ++t) state = dense_step_memory(state);
        for (int t = 0; t < 4; ++t) state = dense_step_memory_adjoint(state);
        double dev = 0.0;
        for (std::size_t i = 0; i < before.size(); ++i)
            dev = std::max(dev, std::abs(state.amplitudes[i] - before[i]));
        return dev <= norm_tolerance;
    });

    ok &= detail::selftest_step(out, "sparse/dense/closed/recurrence agree", [&] {
        const LatticeConfig lattice(9);
        ClosedFormParams params(random_unit_pairs(rng, 4));
        return four_way_check(params, lattice, 4).within(norm_tolerance);
    });

    ok &= detail::selftest_step(out, "density is normalized with consistent moments", [&] {
        ClosedFormParams params(random_unit_pairs(rng, 10));
        const int t = 10;
        double total = 0.0, m1 = 0.0, m2 = 0.0;
        for (int x = -t; x <= t; x += 2) {
            const double p = density(x, t, params);
            total += p;
            m1 += x * p;
            m2 += static_cast<double>(x) * x * p;
        }
        return std::abs(total - 1.0) <= mass_tolerance &&
               std::abs(m1 - mean(t, params)) <= 1e-10 &&
               std::abs((m2 - m1 * m1) - variance(t, params)) <= 1e-8;
    });

    ok &= detail::selftest_step(out, "designer roundtrip is exact", [&] {
        return roundtrip_check(random_target(rng, 8)).within(norm_tolerance);
    });

    ok &= detail::selftest_step(out, "linear left-edge density is 1 - B1^2", [] {
        const double b1 = 0.6;
        ClosedFormParams params = scenario_params(ScenarioParams::linear(b1), 12);
        return std::abs(density(-12, 12, params) - (1.0 - b1 * b1)) <= 1e-12;
    });

    ok &= detail::selftest_step(out, "design divides by the remaining mass", [] {
        // f = (1/2, 1/4): second pair must satisfy B^2 = f_1 / (1 - f_0).
        ClosedFormParams params = design(TargetDensity({0.5, 0.25}));
        const double b2 = params.b(2);
        return std::abs(b2 * b2 - 0.5) <= 1e-12;
    });

    ok &= detail::selftest_step(out, "parabolic horizon is enforced", [] {
        const ScenarioParams s = ScenarioParams::parabolic(0.5);
        if (s.max_horizon() != 5) return false;
        try {
            scenario_params(s, 6);
            return false;
        } catch (const infeasibility_error&) {
            return true;
        }
    });

    out << (ok ? "selftest: all checks passed" : "selftest: FAILURES above") << "\n";
    return ok;
}

} // namespace memwalk
