// core.hpp
// Lattice geometry, per-site memory amplitudes, walk programs and
// position distributions shared by every engine in this library.

#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace memwalk {

// Bad configuration or parameters supplied by the caller.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested target/scenario cannot be realized (mass budget, horizon, ...).
class infeasibility_error : public validation_error {
public:
    using validation_error::validation_error;
};

// Problem size exceeds a hard engine cap.
class capacity_error : public validation_error {
public:
    using validation_error::validation_error;
};

// Internal invariant broke mid-computation (norm drift, mass leak).
class consistency_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Absolute tolerance for unit-norm checks on amplitudes.
inline constexpr double norm_tolerance = 1e-12;
// Absolute tolerance for total probability mass of a distribution.
inline constexpr double mass_tolerance = 1e-10;

// Internal coin state: |v-> moves the walker left, |v+> moves it right.
enum class Velocity : unsigned char { minus = 0, plus = 1 };

inline const char* to_string(Velocity v) {
    return v == Velocity::minus ? "v-" : "v+";
}

// A ring of N sites labeled -floor(N/2) .. +floor(N/2).
// N must be odd so the labeling is symmetric around 0.
struct LatticeConfig {
    int site_count;

    explicit LatticeConfig(int n) : site_count(n) {
        if (n < 5)
            throw validation_error("LatticeConfig: site count must be >= 5, got " +
                                   std::to_string(n));
        if (n % 2 == 0)
            throw validation_error("LatticeConfig: site count must be odd, got " +
                                   std::to_string(n));
    }

    int half() const { return site_count / 2; }

    // Signed label -> internal index in [0, N). Rejects out-of-range labels.
    int signed_to_index(int x) const {
        if (x < -half() || x > half())
            throw validation_error("LatticeConfig: position " + std::to_string(x) +
                                   " outside [" + std::to_string(-half()) + ", " +
                                   std::to_string(half()) + "]");
        return x + half();
    }

    int index_to_signed(int i) const {
        if (i < 0 || i >= site_count)
            throw validation_error("LatticeConfig: index " + std::to_string(i) +
                                   " outside [0, " + std::to_string(site_count) + ")");
        return i - half();
    }

    // Periodic wrap of an arbitrary signed label back into [-half, half].
    int wrap(int x) const {
        int i = (x + half()) % site_count;
        if (i < 0) i += site_count;
        return i - half();
    }

    bool operator==(const LatticeConfig& o) const = default;
};

namespace detail {

inline void check_qubit_pair(double a, double b, const std::string& what) {
    if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
        throw validation_error(what + ": amplitudes must lie in [0, 1], got (" +
                               std::to_string(a) + ", " + std::to_string(b) + ")");
    const double n = a * a + b * b;
    if (std::abs(n - 1.0) > norm_tolerance)
        throw validation_error(what + ": a^2 + b^2 = " + std::to_string(n) +
                               " deviates from 1 beyond tolerance");
}

} // namespace detail

// One qubit a|0> + b|1> per lattice site, amplitudes real non-negative.
// Pairs are validated, never renormalized.
class MemorySpec {
public:
    MemorySpec(LatticeConfig lattice, std::vector<std::pair<double, double>> qubits)
        : lattice_(lattice), qubits_(std::move(qubits)) {
        if (static_cast<int>(qubits_.size()) != lattice_.site_count)
            throw validation_error("MemorySpec: expected " +
                                   std::to_string(lattice_.site_count) +
                                   " qubit pairs, got " + std::to_string(qubits_.size()));
        for (int i = 0; i < lattice_.site_count; ++i)
            detail::check_qubit_pair(qubits_[i].first, qubits_[i].second,
                                     "MemorySpec: site " +
                                         std::to_string(lattice_.index_to_signed(i)));
    }

    const LatticeConfig& lattice() const { return lattice_; }

    const std::pair<double, double>& at_index(int i) const { return qubits_[i]; }

    const std::pair<double, double>& at_signed(int x) const {
        return qubits_[lattice_.signed_to_index(x)];
    }

private:
    LatticeConfig lattice_;
    std::vector<std::pair<double, double>> qubits_;
};

// Control coefficients (A_k, B_k), k = 1..floor(N/2), defining the initial
// memory layout: site x < 0 carries A_{-x}|0> + B_{-x}|1>, sites x >= 0
// carry |0>. Pairs beyond the supplied list default to (1, 0).
// The walker always starts at position 0 with velocity v-.
class WalkProgram {
public:
    WalkProgram(LatticeConfig lattice, std::vector<std::pair<double, double>> coefficients)
        : lattice_(lattice), coefficients_(std::move(coefficients)) {
        if (static_cast<int>(coefficients_.size()) > lattice_.half())
            throw validation_error("WalkProgram: " + std::to_string(coefficients_.size()) +
                                   " coefficient pairs exceed floor(N/2) = " +
                                   std::to_string(lattice_.half()));
        for (std::size_t i = 0; i < coefficients_.size(); ++i)
            detail::check_qubit_pair(coefficients_[i].first, coefficients_[i].second,
                                     "WalkProgram: coefficient pair k=" +
                                         std::to_string(i + 1));
    }

    const LatticeConfig& lattice() const { return lattice_; }
    const std::vector<std::pair<double, double>>& coefficients() const {
        return coefficients_;
    }

    // (A_k, B_k) for k >= 1; (1, 0) beyond the supplied list.
    std::pair<double, double> coefficient(int k) const {
        if (k < 1 || k > static_cast<int>(coefficients_.size())) return {1.0, 0.0};
        return coefficients_[k - 1];
    }

private:
    LatticeConfig lattice_;
    std::vector<std::pair<double, double>> coefficients_;
};

// Expands a program into the per-site memory layout described above.
inline MemorySpec build_initial_memory(const WalkProgram& program) {
    const auto& lat = program.lattice();
    std::vector<std::pair<double, double>> qubits(lat.site_count, {1.0, 0.0});
    for (int x = -lat.half(); x < 0; ++x)
        qubits[lat.signed_to_index(x)] = program.coefficient(-x);
    return MemorySpec(lat, std::move(qubits));
}

// Position distribution P_x(t) with its first two moments.
struct DensityProfile {
    int t = 0;
    std::map<int, double> values; // signed position -> probability
    double mean = 0.0;
    double variance = 0.0;
    double sigma = 0.0;

    // Validates mass and range, clamps rounding noise, computes moments.
    static DensityProfile from_values(int t, std::map<int, double> values,
                                      double mass_tol = mass_tolerance) {
        DensityProfile p;
        p.t = t;
        double mass = 0.0;
        for (auto& [x, v] : values) {
            if (v < 0.0) {
                if (v < -norm_tolerance)
                    throw consistency_error("DensityProfile: negative probability " +
                                            std::to_string(v) + " at x=" +
                                            std::to_string(x));
                v = 0.0;
            }
            if (v > 1.0 + norm_tolerance)
                throw consistency_error("DensityProfile: probability " + std::to_string(v) +
                                        " > 1 at x=" + std::to_string(x));
            mass += v;
        }
        if (std::abs(mass - 1.0) > mass_tol)
            throw consistency_error("DensityProfile: total mass " + std::to_string(mass) +
                                    " deviates from 1 beyond tolerance at t=" +
                                    std::to_string(t));
        double m1 = 0.0, m2 = 0.0;
        for (const auto& [x, v] : values) {
            m1 += x * v;
            m2 += static_cast<double>(x) * x * v;
        }
        p.values = std::move(values);
        p.mean = m1;
        p.variance = std::max(0.0, m2 - m1 * m1);
        p.sigma = std::sqrt(p.variance);
        return p;
    }

    double at(int x) const {
        auto it = values.find(x);
        return it == values.end() ? 0.0 : it->second;
    }
};

// Support checks. Both hold for any profile produced from a
// position-0-localized start while the light cone fits the lattice.
inline bool obeys_light_cone(const DensityProfile& p, double tol = 0.0) {
    for (const auto& [x, v] : p.values)
        if (std::abs(x) > p.t && std::abs(v) > tol) return false;
    return true;
}

inline bool obeys_parity(const DensityProfile& p, double tol = 0.0) {
    for (const auto& [x, v] : p.values)
        if (((x - p.t) % 2 + 2) % 2 == 1 && std::abs(v) > tol) return false;
    return true;
}

// Which evolution backend produces a density profile.
enum class EngineKind { sparse, dense, analytic };

inline const char* engine_name(EngineKind e) {
    switch (e) {
        case EngineKind::sparse: return "sparse";
        case EngineKind::dense: return "dense";
        case EngineKind::analytic: return "analytic";
    }
    return "?";
}

} // namespace memwalk
