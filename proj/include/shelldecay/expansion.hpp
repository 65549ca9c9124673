#pragma once

#include <span>
#include <vector>

#include "shelldecay/model.hpp"
#include "shelldecay/resonant_basis.hpp"

namespace shelldecay {

/// eta = (4 pi i)^{-1/2} on the principal branch, e^{-i pi/4} / (2 sqrt(pi)).
cplx eta();

enum class OverlapProvenance { closed_form, quadrature };

struct Overlap {
    cplx value{};
    OverlapProvenance provenance = OverlapProvenance::closed_form;
};

/// C_p = int_0^a psi(r,0) u_p(r) dr. Uses the closed form unless k_p^2 is within
/// 1e-6 k_c^2 of k_c^2, where it cancels catastrophically and quadrature is used.
Overlap overlap_coefficient(const ResonantState& state, const SineInitialState& init);

/// C_bar_p = int_0^a psi*(r,0) u_p(r) dr, same routing as overlap_coefficient.
Overlap overlap_coefficient_bar(const ResonantState& state, const SineInitialState& init);

struct OverlapTerm {
    int index = 0;
    cplx c{};
    cplx c_bar{};
    OverlapProvenance provenance = OverlapProvenance::closed_form;

    cplx product() const { return c * c_bar; }
};

struct OverlapSet {
    std::vector<OverlapTerm> proper;    // p = 1..N
    std::vector<OverlapTerm> improper;  // p = -1..-N

    int size() const { return static_cast<int>(std::min(proper.size(), improper.size())); }
};

OverlapSet compute_overlaps(const ResonantBasis& basis, const SineInitialState& init);

/// (1/2) sum_{p=1..N} [C_p C_bar_p + C_{-p} C_bar_{-p}]; tends to 1 for states with psi(a) = 0.
cplx closure_sum(const OverlapSet& coeffs, int n);

struct SurvivalTerms {
    cplx total{};
    cplx exponential{};
    cplx tail{};  // the t^{-3/2} part
};

/// Long-time resonant expansion of the survival amplitude truncated at N pairs.
/// DomainError for t <= 0.
SurvivalTerms survival_amplitude(const OverlapSet& coeffs, const ResonantBasis& basis, double t, int n);

/// Coefficient multiplying t^{-3/2} in the survival amplitude.
cplx tail_coefficient(const OverlapSet& coeffs, const ResonantBasis& basis, int n);

/// Everything needed to evaluate the expansion for one potential and initial state.
struct DecayModel {
    DeltaShellPotential potential;
    SineInitialState initial;
    ResonantBasis basis;
    OverlapSet overlaps;
    double tau = 0.0;
    int truncation = 0;

    static DecayModel build(const DeltaShellPotential& pot, const SineInitialState& init, int n);
    /// Reuses an existing basis; n may be smaller than the basis.
    static DecayModel build(const ResonantBasis& basis, const SineInitialState& init, int n);
};

struct SurvivalSample {
    double t = 0.0;
    double t_over_tau = 0.0;
    SurvivalTerms amplitude;
    double probability = 0.0;
    double exp_only = 0.0;
    double tail_only = 0.0;
};

struct SurvivalSeries {
    double tau = 0.0;
    int truncation = 0;
    std::vector<SurvivalSample> samples;
};

/// S(t) = |A(t)|^2 on a strictly increasing, positive grid.
SurvivalSeries survival_series(const DecayModel& model, std::span<const double> t_grid);

/// psi(r, t) inside the shell (DomainError for r > a or t <= 0).
cplx wavefunction(const DecayModel& model, double r, double t);

/// Interference of the p = 4 and p = 5 exponentials only.
cplx two_pole_amplitude(const OverlapSet& coeffs, const ResonantBasis& basis, double t);

/// 1 / min Gamma_p over the proper poles.
double lifetime(const PoleSet& poles);
double lifetime(std::span<const Pole> proper);

/// Time where the slowest exponential |C C_bar| e^{-Gamma t/2} meets the t^{-3/2}
/// term, searched on [tau, 200 tau]. NoTransitionError if they do not cross there.
double transition_time(const OverlapSet& coeffs, const ResonantBasis& basis, int n);

}  // namespace shelldecay
