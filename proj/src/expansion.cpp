#include "shelldecay/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "shelldecay/errors.hpp"
#include "shelldecay/quadrature.hpp"

namespace shelldecay {

namespace {

Overlap overlap_with(const ResonantState& state, const SineInitialState& init, double nc) {
    const cplx k = state.pole.k;
    const double kc = init.wavenumber, a = init.radius;
    if (std::abs(k * k - kc * kc) < 1e-6 * kc * kc) {
        auto f = [&](double r) { return nc * std::sin(kc * r) * eval_state(state, r); };
        const auto q = quad::adaptive(f, 0.0, a, {1e-15, 1e-14, 1e-10, 2000});
        return {q.value, OverlapProvenance::quadrature};
    }
    const cplx num = -k * std::sin(kc * a) * std::cos(k * a) + kc * std::sin(k * a) * std::cos(kc * a);
    return {nc * state.amplitude * num / (k * k - kc * kc), OverlapProvenance::closed_form};
}

const OverlapTerm& term_for(const OverlapSet& coeffs, int index) {
    const auto& family = index > 0 ? coeffs.proper : coeffs.improper;
    const int i = std::abs(index) - 1;
    if (i < 0 || i >= static_cast<int>(family.size())) throw DomainError("overlap coefficient not available");
    return family[i];
}

void check_truncation(const OverlapSet& coeffs, const ResonantBasis& basis, int n) {
    if (n < 1 || n > coeffs.size() || n > basis.size())
        throw DomainError("truncation exceeds the available pole pairs");
}

}  // namespace

cplx eta() { return std::exp(cplx(0.0, -kPi / 4.0)) / (2.0 * std::sqrt(kPi)); }

Overlap overlap_coefficient(const ResonantState& state, const SineInitialState& init) {
    return overlap_with(state, init, init.normalization);
}

Overlap overlap_coefficient_bar(const ResonantState& state, const SineInitialState& init) {
    // the sine state is real, so psi* = psi
    return overlap_with(state, init, init.normalization);
}

OverlapSet compute_overlaps(const ResonantBasis& basis, const SineInitialState& init) {
    OverlapSet set;
    auto fill = [&](const std::vector<ResonantState>& states, std::vector<OverlapTerm>& out) {
        for (const auto& s : states) {
            const Overlap c = overlap_coefficient(s, init);
            const Overlap cb = overlap_coefficient_bar(s, init);
            out.push_back({s.pole.index, c.value, cb.value, c.provenance});
        }
    };
    fill(basis.proper, set.proper);
    fill(basis.improper, set.improper);
    return set;
}

cplx closure_sum(const OverlapSet& coeffs, int n) {
    if (n < 1 || n > coeffs.size()) throw DomainError("closure truncation exceeds available coefficients");
    cplx sum = 0.0;
    for (int p = 0; p < n; ++p) sum += coeffs.improper[p].product() + coeffs.proper[p].product();
    return 0.5 * sum;
}

cplx tail_coefficient(const OverlapSet& coeffs, const ResonantBasis& basis, int n) {
    check_truncation(coeffs, basis, n);
    cplx sum = 0.0;
    for (int p = 0; p < n; ++p) {
        const cplx km = basis.improper[p].pole.k, kp = basis.proper[p].pole.k;
        sum += coeffs.improper[p].product() / (2.0 * km * km * km);
        sum += coeffs.proper[p].product() / (2.0 * kp * kp * kp);
    }
    return -eta() * sum;
}

SurvivalTerms survival_amplitude(const OverlapSet& coeffs, const ResonantBasis& basis, double t, int n) {
    if (!(t > 0.0)) throw DomainError("survival amplitude expansion requires t > 0");
    check_truncation(coeffs, basis, n);
    SurvivalTerms out;
    for (int p = 0; p < n; ++p) {
        const Pole& pole = basis.proper[p].pole;
        out.exponential += coeffs.proper[p].product() * std::exp(cplx(-pole.width * t / 2.0, -pole.resonance_position * t));
    }
    out.tail = tail_coefficient(coeffs, basis, n) * std::pow(t, -1.5);
    out.total = out.exponential + out.tail;
    return out;
}

DecayModel DecayModel::build(const ResonantBasis& basis, const SineInitialState& init, int n) {
    const auto& pot = basis.potential();
    if (std::abs(init.radius - pot.radius) > 1e-15 * pot.radius)
        throw DomainError("initial state and potential must share the same radius");
    if (n < 1 || n > basis.size()) throw DomainError("truncation exceeds the available pole pairs");
    DecayModel m;
    m.potential = pot;
    m.initial = init;
    m.basis = basis;
    m.overlaps = compute_overlaps(basis, init);
    m.tau = lifetime(basis.poles);
    m.truncation = n;
    return m;
}

DecayModel DecayModel::build(const DeltaShellPotential& pot, const SineInitialState& init, int n) {
    if (n < 1) throw DomainError("truncation must be positive");
    return build(make_basis(pot, n), init, n);
}

SurvivalSeries survival_series(const DecayModel& model, std::span<const double> t_grid) {
    if (t_grid.empty()) throw DomainError("time grid is empty");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0)) throw DomainError("time grid must be positive");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("time grid must be strictly increasing");
    }
    SurvivalSeries series;
    series.tau = model.tau;
    series.truncation = model.truncation;
    series.samples.reserve(t_grid.size());
    for (double t : t_grid) {
        SurvivalSample s;
        s.t = t;
        s.t_over_tau = t / model.tau;
        s.amplitude = survival_amplitude(model.overlaps, model.basis, t, model.truncation);
        s.probability = std::norm(s.amplitude.total);
        s.exp_only = std::norm(s.amplitude.exponential);
        s.tail_only = std::norm(s.amplitude.tail);
        series.samples.push_back(s);
    }
    return series;
}

cplx wavefunction(const DecayModel& model, double r, double t) {
    if (r < 0.0 || r > model.potential.radius) throw DomainError("wavefunction expansion holds for 0 <= r <= a");
    if (!(t > 0.0)) throw DomainError("wavefunction expansion requires t > 0");
    const int n = model.truncation;
    cplx exponential = 0.0, tail = 0.0;
    for (int p = 0; p < n; ++p) {
        const ResonantState& sm = model.basis.improper[p];
        const ResonantState& sp = model.basis.proper[p];
        const cplx um = eval_state(sm, r), up = eval_state(sp, r);
        const cplx km = sm.pole.k, kp = sp.pole.k;
        tail += model.overlaps.improper[p].c * um / (2.0 * km * km * km);
        tail += model.overlaps.proper[p].c * up / (2.0 * kp * kp * kp);
        exponential += model.overlaps.proper[p].c * up *
                       std::exp(cplx(-sp.pole.width * t / 2.0, -sp.pole.resonance_position * t));
    }
    return exponential - eta() * tail * std::pow(t, -1.5);
}

cplx two_pole_amplitude(const OverlapSet& coeffs, const ResonantBasis& basis, double t) {
    if (basis.proper.size() < 5) throw DomainError("two-pole approximation needs proper poles 4 and 5");
    cplx sum = 0.0;
    for (int index : {4, 5}) {
        const Pole& pole = basis.proper[index - 1].pole;
        sum += term_for(coeffs, index).product() *
               std::exp(cplx(-pole.width * t / 2.0, -pole.resonance_position * t));
    }
    return sum;
}

double lifetime(std::span<const Pole> proper) {
    if (proper.empty()) throw DomainError("lifetime needs at least one proper pole");
    double gmin = std::numeric_limits<double>::infinity();
    for (const Pole& p : proper) gmin = std::min(gmin, p.width);
    return 1.0 / gmin;
}

double lifetime(const PoleSet& poles) { return lifetime(std::span<const Pole>(poles.proper)); }

double transition_time(const OverlapSet& coeffs, const ResonantBasis& basis, int n) {
    check_truncation(coeffs, basis, n);
    const auto slowest = std::min_element(basis.proper.begin(), basis.proper.begin() + n,
                                          [](const ResonantState& x, const ResonantState& y) {
                                              return x.pole.width < y.pole.width;
                                          });
    const double gamma = slowest->pole.width;
    const double tau = 1.0 / gamma;
    const double strength = std::abs(term_for(coeffs, slowest->pole.index).product());
    const double tail = std::abs(tail_coefficient(coeffs, basis, n));
    if (!(strength > 0.0) || !(tail > 0.0)) throw NoTransitionError("exponential or tail term vanishes");
    // log of exponential term minus log of tail term; decreasing through the crossing.
    auto gap = [&](double t) { return std::log(strength) - gamma * t / 2.0 - std::log(tail) + 1.5 * std::log(t); };
    const double lo = tau, hi = 200.0 * tau;
    if (!(gap(lo) > 0.0 && gap(hi) < 0.0))
        throw NoTransitionError("exponential and t^{-3/2} terms do not cross within [tau, 200 tau]");
    boost::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(gap, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (a + b);
}

}  // namespace shelldecay
