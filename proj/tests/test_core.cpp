#include <catch2/catch_amalgamated.hpp>

#include "memwalk/core.hpp"

using namespace memwalk;

TEST_CASE("lattice validates shape", "[core]") {
    CHECK_NOTHROW(LatticeConfig(5));
    CHECK_NOTHROW(LatticeConfig(2001));
    CHECK_THROWS_AS(LatticeConfig(4), validation_error);
    CHECK_THROWS_AS(LatticeConfig(8), validation_error);
    CHECK_THROWS_AS(LatticeConfig(3), validation_error);
    CHECK_THROWS_AS(LatticeConfig(-9), validation_error);
}

TEST_CASE("lattice index mapping is a bijection", "[core]") {
    const LatticeConfig lat(9);
    REQUIRE(lat.half() == 4);
    for (int x = -4; x <= 4; ++x) {
        const int idx = lat.signed_to_index(x);
        CHECK(idx >= 0);
        CHECK(idx < 9);
        CHECK(lat.index_to_signed(idx) == x);
    }
    CHECK(lat.signed_to_index(-4) == 0);
    CHECK(lat.signed_to_index(0) == 4);
    CHECK(lat.signed_to_index(4) == 8);
    CHECK_THROWS_AS(lat.signed_to_index(5), validation_error);
    CHECK_THROWS_AS(lat.signed_to_index(-5), validation_error);
}

TEST_CASE("lattice wrap is periodic", "[core]") {
    const LatticeConfig lat(9);
    CHECK(lat.wrap(5) == -4);
    CHECK(lat.wrap(-5) == 4);
    CHECK(lat.wrap(4) == 4);
    CHECK(lat.wrap(13) == 4);
    CHECK(lat.wrap(-13) == -4);
}

TEST_CASE("memory spec rejects non-normalized pairs", "[core]") {
    const LatticeConfig lat(5);
    std::vector<std::pair<double, double>> qubits(5, {1.0, 0.0});
    CHECK_NOTHROW(MemorySpec(lat, qubits));

    qubits[1] = {0.5, 0.5}; // 0.25 + 0.25 != 1
    try {
        MemorySpec bad(lat, qubits);
        FAIL("expected validation_error");
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("-1") != std::string::npos); // names site x = -1
    }

    qubits[1] = {0.6, 0.8};
    const MemorySpec spec(lat, qubits);
    CHECK(spec.at_signed(-1).first == 0.6);
    CHECK(spec.at_index(lat.signed_to_index(-1)).second == 0.8);
}

TEST_CASE("walk program defaults to (1, 0) coefficients", "[core]") {
    const LatticeConfig lat(9);
    const WalkProgram program(lat, {{0.6, 0.8}, {0.8, 0.6}});
    CHECK(program.coefficient(1) == std::pair<double, double>{0.6, 0.8});
    CHECK(program.coefficient(2) == std::pair<double, double>{0.8, 0.6});
    CHECK(program.coefficient(3) == std::pair<double, double>{1.0, 0.0});
    CHECK(program.coefficient(0) == std::pair<double, double>{1.0, 0.0});
    CHECK(program.coefficient(99) == std::pair<double, double>{1.0, 0.0});
}

TEST_CASE("walk program caps the coefficient count at half the lattice", "[core]") {
    const LatticeConfig lat(9);
    std::vector<std::pair<double, double>> four(4, {1.0, 0.0});
    CHECK_NOTHROW(WalkProgram(lat, four));
    std::vector<std::pair<double, double>> five(5, {1.0, 0.0});
    CHECK_THROWS_AS(WalkProgram(lat, five), validation_error);
}

TEST_CASE("initial memory layout: programmed left sites, empty right half", "[core]") {
    const LatticeConfig lat(9);
    const WalkProgram program(lat, {{0.6, 0.8}, {0.8, 0.6}});
    const MemorySpec spec = build_initial_memory(program);
    // site -k carries pair k
    CHECK(spec.at_signed(-1) == std::pair<double, double>{0.6, 0.8});
    CHECK(spec.at_signed(-2) == std::pair<double, double>{0.8, 0.6});
    CHECK(spec.at_signed(-3) == std::pair<double, double>{1.0, 0.0});
    CHECK(spec.at_signed(-4) == std::pair<double, double>{1.0, 0.0});
    for (int x = 0; x <= 4; ++x)
        CHECK(spec.at_signed(x) == std::pair<double, double>{1.0, 0.0});
}

TEST_CASE("density profile computes moments and polices mass", "[core]") {
    // hand-checked: mean = 0.5, E[X^2] = 1, var = 0.75
    auto p = DensityProfile::from_values(1, {{-1, 0.25}, {1, 0.75}});
    CHECK(p.mean == Catch::Approx(0.5).margin(1e-15));
    CHECK(p.variance == Catch::Approx(0.75).margin(1e-15));
    CHECK(p.sigma == Catch::Approx(std::sqrt(0.75)).margin(1e-15));
    CHECK(p.at(-1) == 0.25);
    CHECK(p.at(7) == 0.0);

    // tiny negative noise is clamped, real negatives are an engine bug
    auto q = DensityProfile::from_values(0, {{0, 1.0}, {2, -1e-13}});
    CHECK(q.at(2) == 0.0);
    CHECK_THROWS_AS(DensityProfile::from_values(0, {{0, 1.0}, {2, -1e-9}}),
                    consistency_error);
    CHECK_THROWS_AS(DensityProfile::from_values(0, {{0, 0.9}}), consistency_error);
    CHECK_THROWS_AS(DensityProfile::from_values(0, {{0, 1.5}}), consistency_error);
}

TEST_CASE("support predicates", "[core]") {
    auto p = DensityProfile::from_values(2, {{-2, 0.5}, {0, 0.25}, {2, 0.25}});
    CHECK(obeys_light_cone(p));
    CHECK(obeys_parity(p));

    auto far = DensityProfile::from_values(1, {{-1, 0.5}, {3, 0.5}});
    CHECK_FALSE(obeys_light_cone(far));
    CHECK(obeys_parity(far));

    auto odd = DensityProfile::from_values(2, {{-2, 0.5}, {1, 0.5}});
    CHECK(obeys_light_cone(odd));
    CHECK_FALSE(obeys_parity(odd));
}

TEST_CASE("error taxonomy nests under the standard hierarchy", "[core]") {
    CHECK_THROWS_AS(throw infeasibility_error("x"), validation_error);
    CHECK_THROWS_AS(throw capacity_error("x"), validation_error);
    CHECK_THROWS_AS(throw validation_error("x"), std::invalid_argument);
    CHECK_THROWS_AS(throw consistency_error("x"), std::runtime_error);
}
