#include <chrono>
#include <cmath>

#include "doctest.h"
#include "shelldecay/errors.hpp"
#include "shelldecay/singularity.hpp"

using namespace shelldecay;

namespace {
const double kStar = 9.0 * kPi / 2.0;
}

TEST_CASE("family -5 crosses the real axis at b = 9 pi / 2") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = find_singularity(-5, 13.0, 15.0, 1.0);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(std::abs(s.b_star - kStar) < 1e-6);
    CHECK(std::abs(s.k_star.real() + kStar) < 1e-6);
    CHECK(std::abs(s.k_star.imag()) < 1e-10);
    CHECK(s.residual < 1e-10);
    CHECK(s.jost < 1e-9);
    CHECK(secs < 10.0);

    // the full pole solver at b* sees the same root
    const auto set = find_poles(DeltaShellPotential::make(s.b_star, 1.0), 5, 5);
    CHECK(std::abs(set.improper[4].k - s.k_star) < 1e-8);
}

TEST_CASE("crossing does not depend on scan direction") {
    const auto up = find_singularity(-5, 13.0, 15.0, 1.0);
    const auto down = find_singularity(-5, 13.0, 15.0, 1.0, {41, true});
    CHECK(std::abs(up.b_star - down.b_star) < 1e-9);
}

TEST_CASE("crossing is transversal") {
    const auto s = find_singularity(-5, 13.0, 15.0, 1.0);
    const auto set = find_poles(DeltaShellPotential::make(s.b_star + 0.1, 1.0), 5, 5);
    CHECK(std::abs(set.improper[4].k.imag()) > 1e-4);
}

TEST_CASE("trajectory samples stay on the pole equation") {
    const auto pot = DeltaShellPotential::make(13.0, 1.0);
    const auto set = find_poles(pot, 5, 5);
    const auto traj = track_pole(pot, set.improper[4], 13.0, 15.0, 21);
    CHECK(traj.samples.size() >= 21);
    CHECK(traj.crossing.has_value());
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& x = traj.samples[i];
        CHECK(std::abs(pole_equation_residual(x.k, DeltaShellPotential::make(x.b, 1.0))) < 1e-10);
        if (i > 0) CHECK(std::abs(x.k - traj.samples[i - 1].k) <= kPi / 2.0);
    }
    CHECK(traj.samples.back().b == 15.0);

    const auto proper = track_pole(pot, set.proper[0], 13.0, 15.0, 21);
    CHECK_FALSE(proper.crossing.has_value());
    for (const auto& x : proper.samples) CHECK(x.k.imag() < 0.0);
}

TEST_CASE("degenerate and invalid scans") {
    const auto pot = DeltaShellPotential::make(14.0, 1.0);
    const auto set = find_poles(pot, 5, 5);
    const auto single = track_pole(pot, set.improper[4], 14.0, 14.0, 10);
    CHECK(single.samples.size() == 1);
    CHECK_FALSE(single.crossing.has_value());
    CHECK_THROWS_AS(track_pole(pot, set.improper[4], 14.0, 15.0, 1), DomainError);
    CHECK_THROWS_AS(find_singularity(1, 13.0, 15.0, 1.0), NoSingularityError);
    CHECK_THROWS_AS(find_singularity(-5, 15.0, 13.0, 1.0), DomainError);
    CHECK_THROWS_AS(find_singularity(0, 13.0, 15.0, 1.0), DomainError);
    CHECK_THROWS_AS(find_singularity(-5, -1.0, 15.0, 1.0), DomainError);
}
