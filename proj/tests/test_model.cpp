#include <cmath>

#include "doctest.h"
#include "shelldecay/errors.hpp"
#include "shelldecay/model.hpp"
#include "shelldecay/quadrature.hpp"

using namespace shelldecay;

TEST_CASE("potential validation") {
    CHECK_THROWS_WITH_AS(DeltaShellPotential::make(-1.0, 1.0), "intensity must be positive", DomainError);
    CHECK_THROWS_WITH_AS(DeltaShellPotential::make(1.0, 0.0), "radius must be positive", DomainError);
    const auto p = DeltaShellPotential::make(2.0, 3.0);
    CHECK(p.intensity == 2.0);
    CHECK(p.radius == 3.0);
}

TEST_CASE("initial states are normalized") {
    for (double kc : {1.0, 2.5, 9.0 * kPi / 2.0, 30.0}) {
        for (double a : {0.5, 1.0, 2.5}) {
            const auto s = SineInitialState::make(kc, a);
            auto f = [&](double r) { return initial_state_eval(s, r) * initial_state_eval(s, r); };
            CHECK(std::abs(quad::adaptive(f, 0.0, a).value - 1.0) < 1e-10);
        }
    }
    // k_c = 1, a = 1: N_c^2 = 2 / (1 - sin 2 / 2), frozen from quadrature
    CHECK(SineInitialState::make(1.0, 1.0).normalization == doctest::Approx(1.9150354898).epsilon(1e-9));
}

TEST_CASE("box states") {
    for (int q : {1, 2, 6}) {
        const auto box = box_state(q, 1.0);
        const auto gen = SineInitialState::make(q * kPi, 1.0);
        CHECK(box.normalization == doctest::Approx(std::sqrt(2.0)));
        CHECK(std::abs(box.normalization - gen.normalization) < 1e-12);
        CHECK(initial_state_eval(box, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    }
    CHECK(initial_state_eval(box_state(1, 1.0), 1.5) == 0.0);
    CHECK(initial_state_eval(box_state(1, 1.0), -0.1) == 0.0);
    CHECK_THROWS_AS(box_state(0, 1.0), DomainError);
    CHECK_THROWS_AS(SineInitialState::make(0.0, 1.0), DomainError);
}
