// dense.hpp
// Brute-force state vectors over position x velocity x one memory qubit
// per site. Exponential in N; usable as a correctness oracle for small
// lattices only. Also hosts the memoryless baseline walk, which ignores
// the memory factor and therefore works on a reduced vector at any N.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "memwalk/core.hpp"
#include "memwalk/qtable.hpp"

namespace memwalk {

using Complex = std::complex<double>;

// Full-space state. Layout (frozen; fixtures depend on it):
//   index = ((p * 2 + v) << N) | mask
// with p the internal position index, v the velocity bit (0 = v-, 1 = v+),
// and mask bit i the memory qubit of internal site index i.
struct DenseState {
    static constexpr int max_sites = 14;

    LatticeConfig lattice;
    int t = 0;
    std::vector<Complex> amplitudes;

    explicit DenseState(LatticeConfig lat)
        : lattice(lat), amplitudes(dimension(lat.site_count)) {
        if (lat.site_count > max_sites)
            throw capacity_error("DenseState: N = " + std::to_string(lat.site_count) +
                                 " exceeds the dense cap of " + std::to_string(max_sites));
    }

    static std::size_t dimension(int n) {
        return static_cast<std::size_t>(n) * 2u * (std::size_t{1} << n);
    }

    std::size_t index(int p, int v, std::uint32_t mask) const {
        return (static_cast<std::size_t>(p * 2 + v) << lattice.site_count) | mask;
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return s;
    }
};

// Product state of walker |0>|v-> with the program's memory layout.
inline DenseState dense_initial(const WalkProgram& program) {
    DenseState state(program.lattice());
    const MemorySpec spec = build_initial_memory(program);
    const int n = state.lattice.site_count;
    const int p0 = state.lattice.signed_to_index(0);
    const std::uint32_t masks = 1u << n;
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        double w = 1.0;
        for (int i = 0; i < n && w != 0.0; ++i) {
            const auto& [a, b] = spec.at_index(i);
            w *= (mask >> i) & 1u ? b : a;
        }
        if (w != 0.0)
            state.amplitudes[state.index(p0, static_cast<int>(Velocity::minus), mask)] = w;
    }
    return state;
}

namespace detail {

// One memory-coin step is a permutation of basis states: the coin rewrites
// (v, bit[p-1], bit[p+1]) through the table, then the shift moves p by the
// new velocity.
inline DenseState dense_permuted(const DenseState& in, const QTable& table, bool adjoint) {
    DenseState out(in.lattice);
    out.t = in.t + (adjoint ? -1 : 1);
    const int n = in.lattice.site_count;
    const QTable tab = adjoint ? table.inverse() : table;
    const std::uint32_t masks = 1u << n;
    for (int p = 0; p < n; ++p) {
        const int left = (p + n - 1) % n;
        const int right = (p + 1) % n;
        for (int v = 0; v < 2; ++v) {
            for (std::uint32_t mask = 0; mask < masks; ++mask) {
                const Complex a = in.amplitudes[in.index(p, v, mask)];
                if (a == 0.0) continue;
                if (!adjoint) {
                    const auto in_label = QTable::pack(static_cast<Velocity>(v),
                                                      (mask >> left) & 1u,
                                                      (mask >> right) & 1u);
                    const auto [nv, nl, nr] = QTable::unpack(tab.apply(in_label));
                    std::uint32_t nmask = mask;
                    nmask = (nmask & ~(1u << left)) | (static_cast<std::uint32_t>(nl) << left);
                    nmask = (nmask & ~(1u << right)) | (static_cast<std::uint32_t>(nr) << right);
                    const int np = nv == Velocity::plus ? (p + 1) % n : (p + n - 1) % n;
                    out.amplitudes[out.index(np, static_cast<int>(nv), nmask)] += a;
                } else {
                    // undo the shift first, then the coin
                    const int pp = v == static_cast<int>(Velocity::plus) ? (p + n - 1) % n
                                                                         : (p + 1) % n;
                    const int l2 = (pp + n - 1) % n;
                    const int r2 = (pp + 1) % n;
                    const auto in_label = QTable::pack(static_cast<Velocity>(v),
                                                      (mask >> l2) & 1u, (mask >> r2) & 1u);
                    const auto [nv, nl, nr] = QTable::unpack(tab.apply(in_label));
                    std::uint32_t nmask = mask;
                    nmask = (nmask & ~(1u << l2)) | (static_cast<std::uint32_t>(nl) << l2);
                    nmask = (nmask & ~(1u << r2)) | (static_cast<std::uint32_t>(nr) << r2);
                    out.amplitudes[out.index(pp, static_cast<int>(nv), nmask)] += a;
                }
            }
        }
    }
    return out;
}

} // namespace detail

[[nodiscard]] inline DenseState dense_step_memory(const DenseState& state,
                                                  const QTable& table = q_table()) {
    return detail::dense_permuted(state, table, false);
}

// Exact inverse of dense_step_memory (inverse shift composed with the
// inverse coin permutation).
[[nodiscard]] inline DenseState dense_step_memory_adjoint(const DenseState& state,
                                                          const QTable& table = q_table()) {
    return detail::dense_permuted(state, table, true);
}

inline DensityProfile marginal_position(const DenseState& state) {
    const int n = state.lattice.site_count;
    const std::uint32_t masks = 1u << n;
    std::map<int, double> values;
    for (int p = 0; p < n; ++p) {
        double s = 0.0;
        for (int v = 0; v < 2; ++v)
            for (std::uint32_t mask = 0; mask < masks; ++mask)
                s += std::norm(state.amplitudes[state.index(p, v, mask)]);
        if (s != 0.0) values[state.lattice.index_to_signed(p)] = s;
    }
    return DensityProfile::from_values(state.t, std::move(values));
}

// ---------------------------------------------------------------------------
// Memoryless baseline: coin C(theta) = [[cos, i sin], [i sin, cos]] followed
// by the shift. The memory factor is untouched, so states restricted to the
// memory-free subspace stay there; the reduced vector below drops the 2^N
// factor and scales to any lattice size.

struct StandardCoinParams {
    double theta = 0.0;

    explicit StandardCoinParams(double th) : theta(th) {
        if (!std::isfinite(th))
            throw validation_error("StandardCoinParams: theta must be finite");
    }
};

// Position x velocity amplitudes: index = p * 2 + velocity bit.
struct StandardState {
    LatticeConfig lattice;
    int t = 0;
    std::vector<Complex> amplitudes;

    explicit StandardState(LatticeConfig lat)
        : lattice(lat), amplitudes(static_cast<std::size_t>(lat.site_count) * 2) {}

    std::size_t index(int p, int v) const { return static_cast<std::size_t>(p) * 2 + v; }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return s;
    }
};

inline StandardState standard_initial(const LatticeConfig& lattice,
                                      Velocity v = Velocity::minus) {
    StandardState state(lattice);
    state.amplitudes[state.index(lattice.signed_to_index(0), static_cast<int>(v))] = 1.0;
    return state;
}

inline StandardState dense_step_standard(const StandardState& state,
                                         const StandardCoinParams& params) {
    StandardState out(state.lattice);
    out.t = state.t + 1;
    const int n = state.lattice.site_count;
    const Complex c{std::cos(params.theta), 0.0};
    const Complex is{0.0, std::sin(params.theta)};
    for (int p = 0; p < n; ++p) {
        const Complex up = state.amplitudes[state.index(p, static_cast<int>(Velocity::plus))];
        const Complex um = state.amplitudes[state.index(p, static_cast<int>(Velocity::minus))];
        out.amplitudes[out.index((p + 1) % n, static_cast<int>(Velocity::plus))] +=
            c * up + is * um;
        out.amplitudes[out.index((p + n - 1) % n, static_cast<int>(Velocity::minus))] +=
            is * up + c * um;
    }
    return out;
}

// Same baseline step on a full-space state; acts as identity on memory.
inline DenseState dense_step_standard(const DenseState& state,
                                      const StandardCoinParams& params) {
    DenseState out(state.lattice);
    out.t = state.t + 1;
    const int n = state.lattice.site_count;
    const std::uint32_t masks = 1u << n;
    const Complex c{std::cos(params.theta), 0.0};
    const Complex is{0.0, std::sin(params.theta)};
    for (int p = 0; p < n; ++p) {
        for (std::uint32_t mask = 0; mask < masks; ++mask) {
            const Complex up =
                state.amplitudes[state.index(p, static_cast<int>(Velocity::plus), mask)];
            const Complex um =
                state.amplitudes[state.index(p, static_cast<int>(Velocity::minus), mask)];
            if (up == 0.0 && um == 0.0) continue;
            out.amplitudes[out.index((p + 1) % n, static_cast<int>(Velocity::plus), mask)] +=
                c * up + is * um;
            out.amplitudes[out.index((p + n - 1) % n, static_cast<int>(Velocity::minus),
                                     mask)] += is * up + c * um;
        }
    }
    return out;
}

inline DensityProfile marginal_position(const StandardState& state) {
    const int n = state.lattice.site_count;
    std::map<int, double> values;
    for (int p = 0; p < n; ++p) {
        const double s =
            std::norm(state.amplitudes[state.index(p, 0)]) +
            std::norm(state.amplitudes[state.index(p, 1)]);
        if (s != 0.0) values[state.lattice.index_to_signed(p)] = s;
    }
    return DensityProfile::from_values(state.t, std::move(values));
}

} // namespace memwalk
