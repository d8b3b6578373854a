// analytics.hpp
// Closed-form amplitudes and densities for localized programs, the
// amplitude recurrence evaluator, and the linear / parabolic scenario
// generators with their feasibility horizons.

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "memwalk/core.hpp"

namespace memwalk {

// Coefficient sequences (A_k, B_k), 1-based, real in [0, 1] with
// A_k^2 + B_k^2 = 1 per pair; (1, 0) beyond the stored range. The horizon
// caps the times at which closed forms may be evaluated.
class ClosedFormParams {
public:
    static constexpr int unbounded = std::numeric_limits<int>::max();

    explicit ClosedFormParams(std::vector<std::pair<double, double>> coeffs,
                              int horizon = unbounded)
        : coeffs_(std::move(coeffs)), horizon_(horizon) {
        if (horizon_ < 0)
            throw validation_error("ClosedFormParams: horizon must be >= 0");
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            detail::check_qubit_pair(coeffs_[i].first, coeffs_[i].second,
                                     "ClosedFormParams: pair k=" + std::to_string(i + 1));
    }

    int horizon() const { return horizon_; }
    const std::vector<std::pair<double, double>>& coefficients() const { return coeffs_; }

    double a(int k) const {
        if (k < 1 || k > static_cast<int>(coeffs_.size())) return 1.0;
        return coeffs_[k - 1].first;
    }

    double b(int k) const {
        if (k < 1 || k > static_cast<int>(coeffs_.size())) return 0.0;
        return coeffs_[k - 1].second;
    }

    // prod_{i=1..count} A_i (empty product = 1).
    double a_product(int count) const {
        double p = 1.0;
        for (int i = 1; i <= count; ++i) p *= a(i);
        return p;
    }

    WalkProgram to_walk_program(const LatticeConfig& lattice) const {
        const int half = lattice.half();
        if (static_cast<int>(coeffs_.size()) > half)
            for (std::size_t i = half; i < coeffs_.size(); ++i)
                if (coeffs_[i] != std::pair<double, double>{1.0, 0.0})
                    throw validation_error(
                        "ClosedFormParams: pair k=" + std::to_string(i + 1) +
                        " does not fit a lattice with floor(N/2) = " + std::to_string(half));
        std::vector<std::pair<double, double>> inside(
            coeffs_.begin(),
            coeffs_.begin() + std::min<std::size_t>(coeffs_.size(), half));
        return WalkProgram(lattice, std::move(inside));
    }

private:
    std::vector<std::pair<double, double>> coeffs_;
    int horizon_;
};

namespace detail {

inline void check_time(int t, const ClosedFormParams& params, const char* what) {
    if (t < 0)
        throw validation_error(std::string(what) + ": time must be >= 0");
    if (t > params.horizon())
        throw validation_error(std::string(what) + ": t = " + std::to_string(t) +
                               " exceeds the horizon " + std::to_string(params.horizon()));
}

} // namespace detail

// Left-moving amplitude: prod A_i on the left light-cone edge, 0 elsewhere.
inline double amplitude_minus(int x, int t, const ClosedFormParams& params) {
    detail::check_time(t, params, "amplitude_minus");
    if (x != -t) return 0.0;
    return params.a_product(t);
}

// Right-moving amplitude: B_{(t-x)/2+1} prod_{j<=(t-x)/2} A_j inside the
// cone on even parity, excluding the left edge.
inline double amplitude_plus(int x, int t, const ClosedFormParams& params) {
    detail::check_time(t, params, "amplitude_plus");
    if (std::abs(x) > t || x == -t) return 0.0;
    if (((x - t) % 2 + 2) % 2 == 1) return 0.0;
    const int k = (t - x) / 2;
    return params.b(k + 1) * params.a_product(k);
}

// Amplitude table built by stepping the recurrences
//   psi-_x(t+1) = A_{-x} psi-_{x+1}(t)
//   psi+_x(t+1) = psi+_{x-1}(t) + B_{-x+2} psi-_{x-1}(t)
// from psi-_0(0) = 1. Subscripts outside the stored coefficient range use
// the (1, 0) defaults.
class AmplitudeTable {
public:
    AmplitudeTable(int T, std::vector<double> minus, std::vector<double> plus)
        : T_(T), minus_(std::move(minus)), plus_(std::move(plus)) {}

    int horizon() const { return T_; }

    double minus(int x, int t) const { return at(minus_, x, t); }
    double plus(int x, int t) const { return at(plus_, x, t); }

    double density(int x, int t) const {
        const double m = minus(x, t);
        const double p = plus(x, t);
        return m * m + p * p;
    }

private:
    double at(const std::vector<double>& table, int x, int t) const {
        if (t < 0 || t > T_ || std::abs(x) > t) return 0.0;
        return table[static_cast<std::size_t>(t) * (2 * T_ + 1) + (x + T_)];
    }

    int T_;
    std::vector<double> minus_;
    std::vector<double> plus_;
};

inline AmplitudeTable recurrence_evolve(const ClosedFormParams& params, int T) {
    detail::check_time(T, params, "recurrence_evolve");
    const int width = 2 * T + 1;
    std::vector<double> minus(static_cast<std::size_t>(T + 1) * width, 0.0);
    std::vector<double> plus(static_cast<std::size_t>(T + 1) * width, 0.0);
    const auto idx = [&](int x, int t) {
        return static_cast<std::size_t>(t) * width + (x + T);
    };
    minus[idx(0, 0)] = 1.0;
    for (int t = 0; t < T; ++t) {
        for (int x = -(t + 1); x <= t + 1; ++x) {
            if (x + 1 <= t && x + 1 >= -t)
                minus[idx(x, t + 1)] = params.a(-x) * minus[idx(x + 1, t)];
            if (x - 1 >= -t && x - 1 <= t)
                plus[idx(x, t + 1)] =
                    plus[idx(x - 1, t)] + params.b(-x + 2) * minus[idx(x - 1, t)];
        }
    }
    return AmplitudeTable(T, std::move(minus), std::move(plus));
}

// Probability density: prod A_i^2 on the left edge, B^2 prod A^2 on the
// even-parity interior, 0 elsewhere.
inline double density(int x, int t, const ClosedFormParams& params) {
    detail::check_time(t, params, "density");
    if (std::abs(x) > t) return 0.0;
    if (x == -t) {
        const double m = params.a_product(t);
        return m * m;
    }
    if (((x - t) % 2 + 2) % 2 == 1) return 0.0;
    const int k = (t - x) / 2;
    const double p = params.b(k + 1) * params.a_product(k);
    return p * p;
}

// Mean trajectory: -t prod A_i^2 + sum_k (t-2k) B_{k+1}^2 prod_{j<=k} A_j^2.
inline double mean(int t, const ClosedFormParams& params) {
    detail::check_time(t, params, "mean");
    double prod = 1.0;
    double m = 0.0;
    for (int k = 0; k < t; ++k) {
        const double bk = params.b(k + 1);
        m += (t - 2 * k) * bk * bk * prod;
        const double ak = params.a(k + 1);
        prod *= ak * ak;
    }
    return -t * prod + m;
}

// Variance from the density itself (E[X^2] - E[X]^2). The closed-form
// variance display is algebraically identical; tests pin that equivalence.
inline double variance(int t, const ClosedFormParams& params) {
    detail::check_time(t, params, "variance");
    double m1 = 0.0, m2 = 0.0;
    for (int x = -t; x <= t; x += 2) {
        const double p = density(x, t, params);
        m1 += x * p;
        m2 += static_cast<double>(x) * x * p;
    }
    return std::max(0.0, m2 - m1 * m1);
}

// ---------------------------------------------------------------------------
// Scenarios

// linear: one nontrivial pair (A_1, B_1); the mean moves at constant
//   velocity 2 B_1^2 - 1 and the variance is ballistic.
// parabolic: constant interior density f = z/(z+2); feasible only while the
//   left-edge mass 1 - t f stays non-negative, i.e. t <= floor((z+2)/z).
struct ScenarioParams {
    enum class Kind { linear, parabolic };

    Kind kind;
    double b1 = 0.0; // linear
    double z = 0.0;  // parabolic

    static ScenarioParams linear(double b1) {
        if (!(b1 >= 0.0 && b1 <= 1.0))
            throw validation_error("ScenarioParams: linear B1 must lie in [0, 1]");
        ScenarioParams s{Kind::linear};
        s.b1 = b1;
        return s;
    }

    static ScenarioParams parabolic(double z) {
        if (!(z > 0.0) || !std::isfinite(z))
            throw validation_error("ScenarioParams: parabolic z must be positive");
        ScenarioParams s{Kind::parabolic};
        s.z = z;
        return s;
    }

    double mean_velocity() const { return 2.0 * b1 * b1 - 1.0; }

    int max_horizon() const {
        if (kind == Kind::linear) return ClosedFormParams::unbounded;
        return static_cast<int>(std::floor((z + 2.0) / z + 1e-9));
    }
};

// Coefficient sequences realizing a scenario up to horizon T.
inline ClosedFormParams scenario_params(const ScenarioParams& s, int T) {
    if (T < 0) throw validation_error("scenario_params: horizon must be >= 0");
    if (s.kind == ScenarioParams::Kind::linear) {
        const double a1 = std::sqrt(std::max(0.0, 1.0 - s.b1 * s.b1));
        return ClosedFormParams({{a1, s.b1}}, T);
    }
    const int max_t = s.max_horizon();
    if (T > max_t)
        throw infeasibility_error(
            "scenario_params: parabolic z=" + std::to_string(s.z) +
            " becomes infeasible at k=" + std::to_string(max_t + 1) +
            "; max feasible horizon T=" + std::to_string(max_t));
    const double f = s.z / (s.z + 2.0);
    std::vector<std::pair<double, double>> coeffs;
    coeffs.reserve(T);
    for (int k = 1; k <= T; ++k) {
        const double remaining = 1.0 - (k - 1) * f;
        if (remaining <= norm_tolerance) {
            coeffs.emplace_back(1.0, 0.0); // mass exhausted
            continue;
        }
        double b2 = f / remaining;
        if (b2 > 1.0 + 1e-9)
            throw infeasibility_error(
                "scenario_params: parabolic z=" + std::to_string(s.z) +
                " becomes infeasible at k=" + std::to_string(k) +
                "; max feasible horizon T=" + std::to_string(max_t));
        b2 = std::min(b2, 1.0); // singular index: limit value B = 1
        coeffs.emplace_back(std::sqrt(1.0 - b2), std::sqrt(b2));
    }
    return ClosedFormParams(std::move(coeffs), T);
}

// Standard deviation in closed form.
inline double scenario_sigma(const ScenarioParams& s, int t) {
    if (t < 0) throw validation_error("scenario_sigma: time must be >= 0");
    if (s.kind == ScenarioParams::Kind::linear)
        return 2.0 * std::abs(s.b1) * std::sqrt(std::max(0.0, 1.0 - s.b1 * s.b1)) * t;
    if (t > s.max_horizon())
        throw infeasibility_error("scenario_sigma: t = " + std::to_string(t) +
                                  " beyond the feasible horizon " +
                                  std::to_string(s.max_horizon()));
    const double z = s.z;
    const double td = t;
    const double num =
        td * (-3.0 * td * (td * z - 2.0) * (td * z - 2.0) +
              (z + 2.0) * (-2.0 * td * td * z + 3.0 * td * z + 6.0 * td + 2.0 * z));
    const double den = 3.0 * (z + 2.0) * (z + 2.0);
    return std::sqrt(std::max(0.0, num / den));
}

} // namespace memwalk
