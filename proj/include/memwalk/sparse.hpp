// sparse.hpp
// Exact sparse evolution engine. The state is a sum of branches, one per
// computational-basis component of walker position and velocity plus the
// memory bits a coin application has actually touched. A site's memory
// qubit stays symbolic (its MemorySpec pair) until the walker's coin first
// reads it; only then does the branch split. Since the coin is a basis
// permutation, superposition enters through these splits alone, which keeps
// branch counts linear in time for localized programs.
//
// Branches with different touched-site sets are generally non-orthogonal
// in the memory factor. Probabilities are therefore computed as a Gram
// quadratic form with per-site overlap products, which is exact and cheap
// at the branch counts this engine produces.

#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "memwalk/core.hpp"
#include "memwalk/qtable.hpp"

namespace memwalk {

// One basis component: walker position and velocity, the memory bits fixed
// so far (sorted by site label), and the complex amplitude.
struct Branch {
    int position = 0;
    Velocity velocity = Velocity::minus;
    std::vector<std::pair<int, std::uint8_t>> materialized; // sorted by site
    std::complex<double> amplitude{1.0, 0.0};

    int bit_at(int site, int fallback = -1) const {
        auto it = std::lower_bound(materialized.begin(), materialized.end(), site,
                                   [](const auto& e, int s) { return e.first < s; });
        if (it != materialized.end() && it->first == site) return it->second;
        return fallback;
    }

    void set_bit(int site, std::uint8_t bit) {
        auto it = std::lower_bound(materialized.begin(), materialized.end(), site,
                                   [](const auto& e, int s) { return e.first < s; });
        if (it != materialized.end() && it->first == site)
            it->second = bit;
        else
            materialized.insert(it, {site, bit});
    }
};

namespace detail {

// Orders branches by (position, velocity, materialized map); equal keys are
// the merge criterion. Positions differ for almost all pairs, so the map
// comparison rarely runs.
inline int compare_key(const Branch& a, const Branch& b) {
    if (a.position != b.position) return a.position < b.position ? -1 : 1;
    if (a.velocity != b.velocity) return static_cast<int>(a.velocity) < static_cast<int>(b.velocity) ? -1 : 1;
    if (a.materialized != b.materialized)
        return a.materialized < b.materialized ? -1 : 1;
    return 0;
}

// <memory_i | memory_j> as a product of per-site inner products. Amplitudes
// are real, so the overlap is real and symmetric.
inline double memory_overlap(const Branch& a, const Branch& b, const MemorySpec& spec) {
    double w = 1.0;
    auto ia = a.materialized.begin();
    auto ib = b.materialized.begin();
    while (ia != a.materialized.end() || ib != b.materialized.end()) {
        if (ib == b.materialized.end() ||
            (ia != a.materialized.end() && ia->first < ib->first)) {
            const auto& [qa, qb] = spec.at_signed(ia->first);
            w *= ia->second ? qb : qa;
            ++ia;
        } else if (ia == a.materialized.end() || ib->first < ia->first) {
            const auto& [qa, qb] = spec.at_signed(ib->first);
            w *= ib->second ? qb : qa;
            ++ib;
        } else {
            if (ia->second != ib->second) return 0.0;
            ++ia;
            ++ib;
        }
        if (w == 0.0) return 0.0;
    }
    return w;
}

} // namespace detail

struct StepOptions {
    QTable table = q_table();
    // Children with |amplitude| <= prune_epsilon are dropped at merge time.
    // The default keeps everything except exact zeros; the dynamics are
    // exact and silent pruning would corrupt closed-form comparisons.
    double prune_epsilon = 0.0;
};

// Coin application at the branch's position. Each unmaterialized neighbor
// splits the branch by its (a, b) pair, zero-weight children are skipped,
// then the table rewrites (velocity, left bit, right bit). Children leave
// with both neighbors materialized.
inline std::vector<Branch> apply_coin(const Branch& branch, const MemorySpec& spec,
                                      const QTable& table = q_table()) {
    const auto& lat = spec.lattice();
    const int left = lat.wrap(branch.position - 1);
    const int right = lat.wrap(branch.position + 1);

    struct Option {
        std::uint8_t bit;
        double weight;
    };
    const auto options_for = [&](int site) {
        std::vector<Option> opts;
        const int fixed = branch.bit_at(site);
        if (fixed >= 0) {
            opts.push_back({static_cast<std::uint8_t>(fixed), 1.0});
        } else {
            const auto& [a, b] = spec.at_signed(site);
            if (a != 0.0) opts.push_back({0, a});
            if (b != 0.0) opts.push_back({1, b});
        }
        return opts;
    };

    std::vector<Branch> children;
    for (const Option& lo : options_for(left)) {
        for (const Option& ro : options_for(right)) {
            Branch child = branch;
            const auto [nv, nl, nr] =
                table.apply(branch.velocity, lo.bit, ro.bit);
            child.velocity = nv;
            child.set_bit(left, static_cast<std::uint8_t>(nl));
            child.set_bit(right, static_cast<std::uint8_t>(nr));
            child.amplitude = branch.amplitude * (lo.weight * ro.weight);
            children.push_back(std::move(child));
        }
    }
    return children;
}

// v+ moves one site right, v- one site left; periodic wrap.
inline Branch apply_shift(Branch branch, const LatticeConfig& lattice) {
    branch.position = lattice.wrap(branch.position +
                                   (branch.velocity == Velocity::plus ? 1 : -1));
    return branch;
}

// Canonical branch collection at a fixed time, over an immutable memory spec.
class SparseState {
public:
    static SparseState initial(const WalkProgram& program) {
        SparseState s(build_initial_memory(program));
        s.branches_.push_back(Branch{});
        return s;
    }

    // Arbitrary branch sets (superposed starts, test states). Branches are
    // canonicalized; the total norm must be 1 unless validation is skipped.
    static SparseState from_branches(MemorySpec spec, int t, std::vector<Branch> branches,
                                     bool validate_norm = true) {
        SparseState s(std::move(spec));
        s.t_ = t;
        s.branches_ = std::move(branches);
        s.canonicalize(0.0);
        if (validate_norm) {
            const double n = s.norm();
            if (std::abs(n - 1.0) > norm_tolerance)
                throw validation_error("SparseState: norm " + std::to_string(n) +
                                       " deviates from 1 beyond tolerance");
        }
        return s;
    }

    int t() const { return t_; }
    const MemorySpec& memory_spec() const { return spec_; }
    const std::vector<Branch>& branches() const { return branches_; }

    // Total probability mass including cross terms of co-located branches.
    double norm() const {
        double total = 0.0;
        for_each_position_group([&](std::size_t lo, std::size_t hi) {
            total += group_mass(lo, hi);
        });
        return total;
    }

    friend SparseState step(const SparseState&, const StepOptions&);
    friend DensityProfile position_distribution(const SparseState&);

private:
    explicit SparseState(MemorySpec spec) : spec_(std::move(spec)) {}

    void canonicalize(double prune_epsilon) {
        std::sort(branches_.begin(), branches_.end(), [](const Branch& a, const Branch& b) {
            return detail::compare_key(a, b) < 0;
        });
        std::vector<Branch> merged;
        merged.reserve(branches_.size());
        for (auto& br : branches_) {
            if (!merged.empty() && detail::compare_key(merged.back(), br) == 0)
                merged.back().amplitude += br.amplitude;
            else
                merged.push_back(std::move(br));
        }
        std::erase_if(merged, [&](const Branch& b) {
            return std::abs(b.amplitude) <= prune_epsilon;
        });
        branches_ = std::move(merged);
    }

    // Branches are sorted, so (position, velocity) groups are contiguous.
    template <typename F>
    void for_each_position_group(F&& f) const {
        std::size_t lo = 0;
        while (lo < branches_.size()) {
            std::size_t hi = lo + 1;
            while (hi < branches_.size() &&
                   branches_[hi].position == branches_[lo].position &&
                   branches_[hi].velocity == branches_[lo].velocity)
                ++hi;
            f(lo, hi);
            lo = hi;
        }
    }

    double group_mass(std::size_t lo, std::size_t hi) const {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            s += std::norm(branches_[i].amplitude);
            for (std::size_t j = i + 1; j < hi; ++j) {
                const double ov = detail::memory_overlap(branches_[i], branches_[j], spec_);
                if (ov != 0.0)
                    s += 2.0 * ov *
                         std::real(branches_[i].amplitude *
                                   std::conj(branches_[j].amplitude));
            }
        }
        return s;
    }

    int t_ = 0;
    std::vector<Branch> branches_;
    MemorySpec spec_;
};

// One full evolution step: coin every branch, shift every child, merge.
inline SparseState step(const SparseState& state, const StepOptions& options = {}) {
    SparseState next(state.spec_);
    next.t_ = state.t_ + 1;
    next.branches_.reserve(state.branches_.size() + 2);
    for (const Branch& br : state.branches_)
        for (Branch& child : apply_coin(br, state.spec_, options.table))
            next.branches_.push_back(apply_shift(std::move(child), state.spec_.lattice()));
    next.canonicalize(options.prune_epsilon);
    return next;
}

inline DensityProfile position_distribution(const SparseState& state) {
    std::map<int, double> values;
    state.for_each_position_group([&](std::size_t lo, std::size_t hi) {
        values[state.branches()[lo].position] += state.group_mass(lo, hi);
    });
    return DensityProfile::from_values(state.t(), std::move(values));
}

// Position distributions for t = 0..T.
inline std::vector<DensityProfile> run(const WalkProgram& program, int T,
                                       const StepOptions& options = {}) {
    if (T < 0) throw validation_error("run: step count must be >= 0");
    std::vector<DensityProfile> profiles;
    profiles.reserve(static_cast<std::size_t>(T) + 1);
    SparseState state = SparseState::initial(program);
    profiles.push_back(position_distribution(state));
    for (int i = 0; i < T; ++i) {
        state = step(state, options);
        profiles.push_back(position_distribution(state));
    }
    return profiles;
}

} // namespace memwalk
