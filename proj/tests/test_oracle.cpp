#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "shelldecay/errors.hpp"
#include "shelldecay/expansion.hpp"
#include "shelldecay/oracle.hpp"

using namespace shelldecay;

namespace {
const cplx I(0.0, 1.0);
const std::array<cplx, 5> kProbe{cplx(2.0, 0.0), cplx(0.5, 0.3), cplx(7.0, -0.1), cplx(-4.0, -1.0), cplx(20.0, 2.0)};
}

TEST_CASE("Jost zeros are the poles") {
    const auto& basis = reference_basis();
    for (const auto& s : basis.proper) CHECK(std::abs(oracle::jost_function(s.pole.k, reference_shell())) < 1e-10);
    for (const auto& s : basis.improper) CHECK(std::abs(oracle::jost_function(s.pole.k, reference_shell())) < 1e-10);
    CHECK(std::abs(oracle::jost_function(0.0, reference_shell()) - cplx(1.0, -reference_shell().intensity)) < 1e-15);
}

TEST_CASE("Jost function limits") {
    const auto weak = DeltaShellPotential::make(1e-14, 1.0);
    for (cplx k : kProbe) CHECK(std::abs(oracle::jost_function(k, weak) - 1.0) < 1e-12);
    const double b = reference_shell().intensity;
    CHECK(std::abs(oracle::jost_function(100.0, reference_shell()) - 1.0) <= b / 100.0);
}

TEST_CASE("Green's function symmetry and boundary conditions") {
    const auto& pot = reference_shell();
    for (cplx k : kProbe) {
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                const double r = 0.05 + 0.1 * i, rp = 0.1 * j + 0.02;
                CHECK(std::abs(oracle::green_function(r, rp, k, pot) - oracle::green_function(rp, r, k, pot)) < 1e-12);
            }
        }
        CHECK(oracle::green_function(0.0, 0.4, k, pot) == cplx(0.0));
        // outgoing: dG/dr = ik G just outside the shell
        const double h = 1e-6, r0 = 1.5;
        const cplx d = (oracle::green_function(r0 + h, 0.4, k, pot) - oracle::green_function(r0 - h, 0.4, k, pot)) / (2 * h);
        CHECK(std::abs(d - I * k * oracle::green_function(r0, 0.4, k, pot)) < 1e-6 * std::abs(k) * std::abs(d) + 1e-9);
    }
}

TEST_CASE("Green's function solves the radial equation away from the source") {
    const auto& pot = reference_shell();
    const cplx k(3.0, 0.4);
    auto residual = [&](double r, double h) {
        auto g = [&](double x) { return oracle::green_function(x, 0.4, k, pot); };
        const cplx d2 = (g(r + h) - 2.0 * g(r) + g(r - h)) / (h * h);
        return std::abs(d2 + k * k * g(r));
    };
    for (double r : {0.2, 0.7, 1.3}) {
        const double coarse = residual(r, 1e-2), fine = residual(r, 1e-3);
        CHECK(fine < coarse / 50.0);
        CHECK(fine < 1e-3);
    }
    CHECK_THROWS_AS(oracle::green_function(0.3, 0.6, reference_basis().proper[0].pole.k, pot), NearPoleError);
}

TEST_CASE("residues of G reproduce the resonant states") {
    const auto& basis = reference_basis();
    for (int p = 0; p < 5; ++p) {
        const auto& s = basis.proper[p];
        const cplx res = oracle::green_residue(0.3, 0.6, s.pole.k, 0.05, reference_shell());
        const cplx expect = eval_state(s, 0.3) * eval_state(s, 0.6) / (2.0 * s.pole.k);
        CHECK(std::abs(res - expect) < 1e-8);
    }
}

TEST_CASE("propagator saturates in the number of residues") {
    const auto& big = reference_basis();
    ResonantBasis small = big;
    small.proper.resize(10);
    small.improper.resize(10);
    const double tau = lifetime(big.poles);
    const cplx g40 = oracle::propagator(0.3, 0.6, 5 * tau, big);
    const cplx g10 = oracle::propagator(0.3, 0.6, 5 * tau, small);
    CHECK(std::abs(g40 - g10) < 1e-6);
    CHECK_THROWS_AS(oracle::propagator(0.3, 0.6, 0.01, big), DomainError);
    CHECK_THROWS_AS(oracle::propagator(1.3, 0.6, 1.0, big), DomainError);
}

namespace {
// Leading long-time expansion of g(0.3, 0.6; t) plus, optionally, the next t^{-5/2} term
// that comes from the k^3 coefficient of G+ near k = 0.
cplx long_time_propagator(const ResonantBasis& basis, double t, bool next_order) {
    cplx expo = 0.0, tail = 0.0, tail5 = 0.0;
    for (int p = 0; p < basis.size(); ++p) {
        for (const auto* s : {&basis.improper[p], &basis.proper[p]}) {
            const cplx uu = eval_state(*s, 0.3) * eval_state(*s, 0.6);
            const cplx k = s->pole.k;
            tail += uu / (2.0 * k * k * k);
            tail5 += uu / (2.0 * std::pow(k, 5));
            if (s->pole.index > 0) expo += uu * std::exp(-I * k * k * t);
        }
    }
    cplx g = expo - eta() * tail * std::pow(t, -1.5);
    if (next_order) {
        const cplx gamma3 = std::exp(cplx(0.0, -3.0 * kPi / 4.0));
        g -= gamma3 * tail5 * (3.0 / (4.0 * std::sqrt(kPi))) * std::pow(t, -2.5);
    }
    return g;
}
}  // namespace

TEST_CASE("propagator agrees with the long-time expansion at 30 tau") {
    const auto& basis = reference_basis();
    const double t = 30 * lifetime(basis.poles);
    const cplx g = oracle::propagator(0.3, 0.6, t, basis);
    CHECK(std::abs(long_time_propagator(basis, t, false) - g) / std::abs(g) < 1e-2);
}

TEST_CASE("long-time mismatch is the next asymptotic order") {
    const auto& basis = reference_basis();
    const double tau = lifetime(basis.poles);
    double prev = 1.0;
    for (double x : {10.0, 30.0, 60.0, 100.0}) {
        const cplx g = oracle::propagator(0.3, 0.6, x * tau, basis);
        const double lead = std::abs(long_time_propagator(basis, x * tau, false) - g) / std::abs(g);
        const double corrected = std::abs(long_time_propagator(basis, x * tau, true) - g) / std::abs(g);
        CAPTURE(x);
        CHECK(corrected < 2e-3);
        if (x >= 30.0) CHECK(corrected < lead / 10.0);  // at 10 tau the exponentials still dominate
        if (x >= 30.0) CHECK(lead < prev);
        if (x >= 30.0) prev = lead;
    }
}

TEST_CASE("exact survival amplitude matches the expansion") {
    const auto& basis = reference_basis();
    const auto init = box_state(1, 1.0);
    const auto model = DecayModel::build(reference_shell(), init, 40);
    for (double x : {0.5, 3.0}) {
        const double t = x * model.tau;
        const double s_exact = std::norm(oracle::survival_amplitude_exact(init, t, basis));
        const double s_exp = std::norm(survival_amplitude(model.overlaps, model.basis, t, 40).total);
        CHECK(std::abs(s_exact - s_exp) / s_exact < 1e-2);
    }
}

TEST_CASE("closed-form double integral matches quadrature") {
    const auto& pot = reference_shell();
    const cplx ray = std::exp(cplx(0.0, -kPi / 4.0));
    double worst = 0.0;
    for (const auto& init : {box_state(1, 1.0), box_state(6, 1.0), SineInitialState::make(9.0 * kPi / 2.0, 1.0)}) {
        for (int i = 0; i < 400; ++i) {
            // along the rotated ray, off it, and in the upper half plane
            for (const cplx k : {ray * (0.02 + 0.07 * i), ray * (0.02 + 0.07 * i) + 0.5, cplx(0.05 * i + 0.1, 0.02 * i)}) {
                const cplx x = oracle::green_initial_state_overlap(k, init, pot);
                const cplx y = oracle::green_initial_state_overlap_quadrature(k, init, pot);
                worst = std::max(worst, std::abs(x - y) / std::abs(y));
            }
        }
        // the guarded neighbourhood of k = k_c
        const cplx near(init.wavenumber + 1e-4, -1e-4);
        CHECK(std::abs(oracle::green_initial_state_overlap(near, init, pot) -
                       oracle::green_initial_state_overlap_quadrature(near, init, pot)) < 1e-12);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("cached oracle equals the one-shot call") {
    const auto& basis = reference_basis();
    const auto init = box_state(2, 1.0);
    const oracle::SurvivalOracle exact(init, basis);
    for (double t : {0.05, 0.3, 2.0}) CHECK(exact.amplitude(t) == oracle::survival_amplitude_exact(init, t, basis));
    CHECK_THROWS_AS(exact.amplitude(0.01), DomainError);
}
