#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "memwalk/designer.hpp"
#include "memwalk/selftest.hpp"

using namespace memwalk;

TEST_CASE("target validation names the offending index", "[designer]") {
    CHECK_NOTHROW(TargetDensity({0.5, 0.25}));
    CHECK_NOTHROW(TargetDensity({0.5, -1e-13})); // rounding slack
    try {
        TargetDensity({0.5, 1.2});
        FAIL("expected validation_error");
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("f[1]") != std::string::npos);
    }
    try {
        TargetDensity({0.6, 0.3, 0.2});
        FAIL("expected infeasibility_error");
    } catch (const infeasibility_error& e) {
        CHECK(std::string(e.what()).find("index 2") != std::string::npos);
    }
}

TEST_CASE("geometric target compiles to balanced pairs", "[designer]") {
    std::vector<double> f;
    for (int i = 1; i <= 8; ++i) f.push_back(std::pow(2.0, -i));
    const ClosedFormParams params = design(TargetDensity(f));
    for (int k = 1; k <= 8; ++k) {
        CHECK(std::abs(params.b(k) * params.b(k) - 0.5) < 1e-14);
        CHECK(std::abs(params.a(k) * params.a(k) - 0.5) < 1e-14);
    }
}

TEST_CASE("single-bang target flips everything at the first site", "[designer]") {
    const ClosedFormParams params = design(TargetDensity({1.0}));
    CHECK(params.b(1) == 1.0);
    CHECK(params.a(1) == 0.0);
}

TEST_CASE("denominator uses the mass remaining before k-1", "[designer]") {
    // f = (1/2, 1/4): B_2^2 = f_1 / (1 - f_0) = 0.5. A lagged-sum reading
    // would give 0.25 and break the density identity below.
    const ClosedFormParams params = design(TargetDensity({0.5, 0.25}));
    CHECK(std::abs(params.b(2) * params.b(2) - 0.5) < 1e-15);
    CHECK(std::abs(predicted_density(TargetDensity({0.5, 0.25}), 0, 2) - 0.25) <
          1e-15);
}

TEST_CASE("exhausted mass degenerates to identity pairs", "[designer]") {
    const ClosedFormParams params = design(TargetDensity({0.25, 0.75, 0.0}));
    CHECK(params.b(2) == 1.0);
    CHECK(params.a(3) == 1.0);
    CHECK(params.b(3) == 0.0);
    CHECK(roundtrip_check(TargetDensity({0.25, 0.75, 0.0})).within(1e-12));
}

TEST_CASE("design identities hold for random feasible targets", "[designer]") {
    std::mt19937 rng(555);
    for (int rep = 0; rep < 20; ++rep) {
        const TargetDensity target = random_target(rng, 12);
        const ClosedFormParams params = design(target);
        double prod = 1.0;
        for (int k = 1; k <= target.horizon(); ++k) {
            // B_k^2 prod_{j<k} A_j^2 = f_{k-1}
            CHECK(std::abs(params.b(k) * params.b(k) * prod - target.f(k - 1)) <
                  1e-12);
            prod *= params.a(k) * params.a(k);
            // prod_{j<=k} A_j^2 = 1 - sum_{i<k} f_i
            CHECK(std::abs(prod - (1.0 - target.cumulative(k))) < 1e-12);
        }
    }
}

TEST_CASE("predicted density is the designed piecewise form", "[designer]") {
    const TargetDensity target({0.5, 0.25});
    CHECK(predicted_density(target, 0, 0) == 1.0);
    CHECK(predicted_density(target, -1, 1) == Catch::Approx(0.5).margin(1e-15));
    CHECK(predicted_density(target, 1, 1) == Catch::Approx(0.5).margin(1e-15));
    CHECK(predicted_density(target, -2, 2) == Catch::Approx(0.25).margin(1e-15));
    CHECK(predicted_density(target, 0, 2) == Catch::Approx(0.25).margin(1e-15));
    CHECK(predicted_density(target, 2, 2) == Catch::Approx(0.5).margin(1e-15));
    CHECK(predicted_density(target, 1, 2) == 0.0);
    CHECK(predicted_density(target, 5, 2) == 0.0);
    CHECK_THROWS_AS(predicted_density(target, 0, 3), validation_error);
}

TEST_CASE("roundtrip agrees across engines", "[designer]") {
    std::mt19937 rng(777);
    const TargetDensity target = random_target(rng, 5);
    CHECK(roundtrip_check(target, EngineKind::sparse).max_deviation < 1e-12);
    CHECK(roundtrip_check(target, EngineKind::dense).max_deviation < 1e-12);
    CHECK(roundtrip_check(target, EngineKind::analytic).max_deviation < 1e-13);
}

TEST_CASE("roundtrip requires headroom beyond the horizon", "[designer]") {
    const TargetDensity target({0.2, 0.2, 0.2, 0.2});
    CHECK_THROWS_AS(roundtrip_check(target, EngineKind::sparse, 9),
                    validation_error);
    CHECK_NOTHROW(roundtrip_check(target, EngineKind::sparse, 11));
}

TEST_CASE("remaining edge mass is monotone and stays in [0, 1]", "[designer]") {
    std::mt19937 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const TargetDensity target = random_target(rng, 12);
        double prev = 1.0;
        for (int t = 0; t <= target.horizon(); ++t) {
            const double edge = predicted_density(target, -t, t);
            CHECK(edge >= 0.0);
            CHECK(edge <= prev + 1e-15);
            prev = edge;
        }
    }
}
