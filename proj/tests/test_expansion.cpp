#include <cmath>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "shelldecay/diagnostics.hpp"
#include "shelldecay/errors.hpp"
#include "shelldecay/expansion.hpp"
#include "shelldecay/quadrature.hpp"
#include "table_values.hpp"

using namespace shelldecay;

namespace {

const DecayModel& model_for(int q) {
    static const DecayModel kc = DecayModel::build(reference_basis(), SineInitialState::make(9.0 * kPi / 2.0, 1.0), 40);
    static const DecayModel q1 = DecayModel::build(reference_basis(), box_state(1, 1.0), 40);
    static const DecayModel q2 = DecayModel::build(reference_basis(), box_state(2, 1.0), 40);
    static const DecayModel q6 = DecayModel::build(reference_basis(), box_state(6, 1.0), 40);
    switch (q) {
        case 1: return q1;
        case 2: return q2;
        case 6: return q6;
        default: return kc;
    }
}

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = lo + (hi - lo) * i / (n - 1);
    return t;
}

std::vector<double> probabilities(const DecayModel& m, const std::vector<double>& t) {
    std::vector<double> s;
    for (const auto& x : survival_series(m, t).samples) s.push_back(x.probability);
    return s;
}

}  // namespace

TEST_CASE("tabulated squared overlaps") {
    const auto& m = model_for(0);
    for (std::size_t i = 0; i < table2::rows.size(); ++i) {
        const auto& row = table2::rows[i];
        const cplx cm = m.overlaps.improper[i].product(), cp = m.overlaps.proper[i].product();
        CAPTURE(i + 1);
        CHECK(std::abs(cm.real() - row.re_m) < 2e-4);
        CHECK(std::abs(cm.imag() - row.im_m) < 2e-4);
        CHECK(std::abs(cp.real() - row.re_p) < 2e-4);
        CHECK(std::abs(cp.imag() - row.im_p) < 2e-4);
    }
}

TEST_CASE("closed-form overlaps agree with quadrature") {
    const auto& m = model_for(0);
    for (int p = 0; p < 10; ++p) {
        for (const auto* s : {&m.basis.proper[p], &m.basis.improper[p]}) {
            auto f = [&](double r) { return initial_state_eval(m.initial, r) * eval_state(*s, r); };
            const cplx q = quad::adaptive(f, 0.0, 1.0, {1e-15, 1e-14, 1e-10, 2000}).value;
            CHECK(std::abs(overlap_coefficient(*s, m.initial).value - q) < 1e-9);
        }
    }
    // k_{-5}^2 = k_c^2 here, so that overlap is routed to quadrature
    CHECK(m.overlaps.improper[4].provenance == OverlapProvenance::quadrature);
    CHECK(m.overlaps.proper[4].provenance == OverlapProvenance::closed_form);
}

TEST_CASE("conjugate overlaps of a real state") {
    for (int q : {0, 1, 2, 6}) {
        const auto& m = model_for(q);
        for (const auto* fam : {&m.overlaps.proper, &m.overlaps.improper})
            for (const auto& term : *fam) CHECK(std::abs(term.c - term.c_bar) < 1e-12);
    }
}

TEST_CASE("closure of the k_c state within 0.05 at N = 10") {
    CHECK(std::abs(closure_sum(model_for(0).overlaps, 10) - 1.0) < 0.05);
}

TEST_CASE("closure sums") {
    // psi(a) != 0 for k_c = 9 pi / 2; the sum settles near 1 + i psi(a)^2 / (2b) instead of 1
    const auto& kc = model_for(0).overlaps;
    const double psi_a2 = std::pow(initial_state_eval(model_for(0).initial, 1.0), 2);
    CHECK(std::abs(closure_sum(kc, 40).real() - 1.0) < 0.01);
    CHECK(closure_sum(kc, 40).imag() == doctest::Approx(psi_a2 / (2.0 * reference_shell().intensity)).epsilon(0.01));
    CHECK(std::abs(closure_sum(model_for(1).overlaps, 10).real() - 1.0) < 0.05);
    CHECK(model_for(1).overlaps.proper[0].product().real() == doctest::Approx(1.0129).epsilon(1e-3));
    for (int q : {0, 1, 2, 6}) {
        const auto& o = model_for(q).overlaps;
        for (int n1 : {10, 20, 30})
            for (int n2 : {n1 + 10, 40})
                CHECK(std::abs(closure_sum(o, n2) - 1.0) <= std::abs(closure_sum(o, n1) - 1.0) + 0.01);
    }
    CHECK_THROWS_AS(closure_sum(model_for(1).overlaps, 41), DomainError);
}

TEST_CASE("survival amplitude regimes") {
    const auto& kc = model_for(0);
    CHECK_THROWS_AS(survival_amplitude(kc.overlaps, kc.basis, 0.0, 40), DomainError);
    CHECK_THROWS_AS(survival_amplitude(kc.overlaps, kc.basis, -1.0, 40), DomainError);
    const auto at_tau = survival_amplitude(kc.overlaps, kc.basis, kc.tau, 40);
    CHECK(std::abs(at_tau.tail) / std::abs(at_tau.exponential) < 1e-3);
    CHECK(std::abs(at_tau.total - at_tau.exponential - at_tau.tail) < 1e-15);

    const auto& q1 = model_for(1);
    const auto late = survival_amplitude(q1.overlaps, q1.basis, 100 * q1.tau, 40);
    CHECK(std::abs(late.tail) > 1e3 * std::abs(late.exponential));
    const auto t = grid(50 * q1.tau, 100 * q1.tau, 200);
    CHECK(diag::loglog_slope(t, probabilities(q1, t)) == doctest::Approx(-3.0).epsilon(0.05 / 3.0));
}

TEST_CASE("sign flip of resonant states leaves survival unchanged") {
    const auto& m = model_for(0);
    ResonantBasis flipped = m.basis;
    for (auto* fam : {&flipped.proper, &flipped.improper})
        for (auto& s : *fam) s.amplitude = -s.amplitude, s.exterior_amplitude = -s.exterior_amplitude;
    const auto o2 = compute_overlaps(flipped, m.initial);
    for (double x : {0.3, 1.0, 5.0, 40.0}) {
        const double a = std::norm(survival_amplitude(m.overlaps, m.basis, x * m.tau, 40).total);
        const double b = std::norm(survival_amplitude(o2, flipped, x * m.tau, 40).total);
        CHECK(std::abs(a - b) < 1e-12);
    }
}

TEST_CASE("wavefunction") {
    const auto& m = model_for(1);
    CHECK(wavefunction(m, 0.0, m.tau) == cplx(0.0));
    CHECK_THROWS_AS(wavefunction(m, 1.1, m.tau), DomainError);
    CHECK_THROWS_AS(wavefunction(m, 0.5, 0.0), DomainError);
    for (int q : {0, 1}) {
        const auto& mm = model_for(q);
        for (double x : {0.5, 2.0, 30.0}) {
            const double t = x * mm.tau;
            auto f = [&](double r) { return initial_state_eval(mm.initial, r) * wavefunction(mm, r, t); };
            const cplx overlap = quad::adaptive(f, 0.0, 1.0, {1e-14, 1e-13, 1e-9, 4000}).value;
            const cplx a = survival_amplitude(mm.overlaps, mm.basis, t, 40).total;
            CHECK(std::abs(overlap - a) < 1e-8);
        }
    }
    // late exponential regime: the profile follows |u_1|^2
    const double t = 3 * m.tau;
    const auto& u1 = m.basis.proper[0];
    double worst = 0.0;
    const double scale = std::norm(wavefunction(m, 0.5, t)) / std::norm(eval_state(u1, 0.5));
    for (double r : {0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9}) {
        const double ratio = std::norm(wavefunction(m, r, t)) / (scale * std::norm(eval_state(u1, r)));
        worst = std::max(worst, std::abs(ratio - 1.0));
    }
    CHECK(worst < 0.05);
}

TEST_CASE("two-pole interference") {
    const auto& m = model_for(0);
    const auto& e4 = m.basis.proper[3].pole, &e5 = m.basis.proper[4].pole;
    const double period = 2 * kPi / (e5.resonance_position - e4.resonance_position);
    const auto t = grid(0.01 * m.tau, 3 * m.tau, 20000);
    std::vector<double> s2;
    for (double x : t) s2.push_back(std::norm(two_pole_amplitude(m.overlaps, m.basis, x)));
    const auto peaks = diag::local_maxima(s2);
    REQUIRE(peaks.size() >= 3);
    const double measured = (t[peaks.back()] - t[peaks.front()]) / (peaks.size() - 1);
    CHECK(measured == doctest::Approx(period).epsilon(0.01));

    double prev_peak = 1e300;
    for (auto i : peaks) {
        CHECK(s2[i] < prev_peak);
        prev_peak = s2[i];
    }
}

TEST_CASE("two-pole maxima count matches the full survival from 0.2 to 1.5 tau") {
    const auto& m = model_for(0);
    const auto w = grid(0.2 * m.tau, 1.5 * m.tau, 4000);
    std::vector<double> s2w;
    for (double x : w) s2w.push_back(std::norm(two_pole_amplitude(m.overlaps, m.basis, x)));
    CHECK(diag::count_local_maxima(s2w) == diag::count_local_maxima(probabilities(m, w)));
}

TEST_CASE("two-pole approximation holds while p = 4, 5 dominate") {
    const auto& m = model_for(0);
    const auto w = grid(0.2 * m.tau, 0.6 * m.tau, 2000);
    std::vector<double> s2w;
    for (double x : w) s2w.push_back(std::norm(two_pole_amplitude(m.overlaps, m.basis, x)));
    const auto full = probabilities(m, w);
    const auto a = diag::local_maxima(s2w), b = diag::local_maxima(full);
    REQUIRE(a.size() >= 2);
    REQUIRE(b.size() >= 2);
    // first two beats line up to within a few percent of the beat period
    for (int i = 0; i < 2; ++i) CHECK(std::abs(w[a[i]] - w[b[i]]) < 0.15 * m.tau);
}

TEST_CASE("lifetime") {
    const auto& poles = reference_basis().poles;
    const double tau = lifetime(poles);
    CHECK(tau == doctest::Approx(1.0 / 2.2993).epsilon(1e-3));
    CHECK(tau * poles.proper[0].width == doctest::Approx(1.0).epsilon(1e-15));
    for (const auto& p : poles.proper) CHECK(p.width >= poles.proper[0].width);
    CHECK_THROWS_AS(lifetime(std::span<const Pole>{}), DomainError);
}

TEST_CASE("transition time") {
    const auto& kc = model_for(0);
    const double t_kc = transition_time(kc.overlaps, kc.basis, 40);
    CHECK(t_kc / kc.tau >= 24.0);
    CHECK(t_kc / kc.tau <= 30.0);

    OverlapSet doubled = kc.overlaps;
    for (auto* fam : {&doubled.proper, &doubled.improper})
        for (auto& term : *fam) term.c *= std::sqrt(2.0), term.c_bar *= std::sqrt(2.0);
    CHECK(transition_time(doubled, kc.basis, 40) == doctest::Approx(t_kc).epsilon(1e-12));

    const auto& q1 = model_for(1);
    const double t_q1 = transition_time(q1.overlaps, q1.basis, 40) / q1.tau;
    CHECK(t_q1 >= 20.0);
    CHECK(t_q1 <= 40.0);
}

TEST_CASE("series grid validation") {
    const auto& m = model_for(1);
    const std::vector<double> bad{1.0, 0.5};
    CHECK_THROWS_AS(survival_series(m, bad), DomainError);
    CHECK_THROWS_AS(survival_series(m, std::vector<double>{}), DomainError);
    const auto s = survival_series(m, grid(0.1, 1.0, 5));
    for (const auto& x : s.samples) {
        CHECK(x.probability == doctest::Approx(std::norm(x.amplitude.total)));
        CHECK(x.probability >= 0.0);
    }
}
