// qtable.hpp
// The eight-term coin acting on velocity x left-memory x right-memory.
// It is a basis permutation, so it is unitary and mixes no amplitudes.

#pragma once

#include <array>
#include <cstdint>
#include <tuple>

#include "memwalk/core.hpp"

namespace memwalk {

// Basis label packing: (velocity bit << 2) | (left bit << 1) | right bit,
// velocity bit 0 = v-, 1 = v+.
class QTable {
public:
    static constexpr int size = 8;

    explicit QTable(std::array<std::uint8_t, size> out) : out_(out) {}

    std::uint8_t apply(std::uint8_t in) const { return out_[in]; }

    std::tuple<Velocity, int, int> apply(Velocity v, int left_bit, int right_bit) const {
        const std::uint8_t in = pack(v, left_bit, right_bit);
        return unpack(out_[in]);
    }

    bool is_permutation() const {
        std::array<bool, size> seen{};
        for (auto o : out_) {
            if (o >= size || seen[o]) return false;
            seen[o] = true;
        }
        return true;
    }

    QTable inverse() const {
        std::array<std::uint8_t, size> inv{};
        for (std::uint8_t i = 0; i < size; ++i) inv[out_[i]] = i;
        return QTable(inv);
    }

    static std::uint8_t pack(Velocity v, int left_bit, int right_bit) {
        return static_cast<std::uint8_t>((static_cast<int>(v) << 2) | (left_bit << 1) |
                                         right_bit);
    }

    static std::tuple<Velocity, int, int> unpack(std::uint8_t s) {
        return {static_cast<Velocity>((s >> 2) & 1), (s >> 1) & 1, s & 1};
    }

    bool operator==(const QTable& o) const = default;

private:
    std::array<std::uint8_t, size> out_; // out_[input] = output
};

// The coin table, entry per ket-bra term:
//   (v+,0,0)->(v+,1,1)   (v-,0,0)->(v-,0,0)
//   (v+,0,1)->(v-,0,1)   (v-,1,0)->(v+,0,1)
//   (v+,1,0)->(v+,1,0)   (v-,0,1)->(v-,1,0)
//   (v+,1,1)->(v+,0,0)   (v-,1,1)->(v-,1,1)
inline const QTable& q_table() {
    static const QTable table(std::array<std::uint8_t, QTable::size>{
        0b000, // (v-,0,0) -> (v-,0,0)
        0b010, // (v-,0,1) -> (v-,1,0)
        0b101, // (v-,1,0) -> (v+,0,1)
        0b011, // (v-,1,1) -> (v-,1,1)
        0b111, // (v+,0,0) -> (v+,1,1)
        0b001, // (v+,0,1) -> (v-,0,1)
        0b110, // (v+,1,0) -> (v+,1,0)
        0b100, // (v+,1,1) -> (v+,0,0)
    });
    return table;
}

// Test hook: a valid permutation that is not the coin above. Comparing
// engines driven by this table against correct ones must report deviations.
inline QTable corrupted_q_table() {
    std::array<std::uint8_t, QTable::size> out{};
    for (std::uint8_t i = 0; i < QTable::size; ++i) out[i] = q_table().apply(i);
    std::swap(out[QTable::pack(Velocity::minus, 1, 0)],
              out[QTable::pack(Velocity::minus, 0, 0)]);
    return QTable(out);
}

} // namespace memwalk
