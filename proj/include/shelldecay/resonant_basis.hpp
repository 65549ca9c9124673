#pragma once

#include <vector>

#include "shelldecay/poles.hpp"

namespace shelldecay {

/// Outgoing resonant state of the delta shell:
/// u(r) = A sin(k r) for r <= a, u(r) = B e^{ikr} for r >= a.
struct ResonantState {
    Pole pole;
    cplx amplitude{};           // A_p
    cplx exterior_amplitude{};  // B_p = A_p sin(k_p a) e^{-i k_p a}
    double radius = 1.0;
};

/// A_p from the closed form, principal square-root branch. Every observable uses
/// products u_p(r) u_p(r'), so the branch choice does not matter downstream.
cplx normalization_coefficient(const Pole& pole, const DeltaShellPotential& pot);

ResonantState make_resonant_state(const Pole& pole, const DeltaShellPotential& pot);

cplx eval_state(const ResonantState& state, double r);

/// |int_0^a u^2 dr + i u(a)^2 / (2k) - 1| with the interior integral in closed form.
double normalization_residual(const ResonantState& state);

/// States for both pole families, in the same order as the PoleSet.
struct ResonantBasis {
    PoleSet poles;
    std::vector<ResonantState> proper;
    std::vector<ResonantState> improper;

    const DeltaShellPotential& potential() const { return poles.potential; }
    /// Pairs p = 1..size() available in both families.
    int size() const;
};

ResonantBasis make_basis(const PoleSet& poles);
ResonantBasis make_basis(const DeltaShellPotential& pot, int pairs);

/// Partial sum over p = +-1..+-N of u_p(r) u_p(r') k_p^order, order in {-1, 0, 1}.
/// Summation order: ascending p, improper before proper. For order 0 the exact
/// limit is 2 delta(r - r'). Both points must lie in [0, a] and not both at a.
cplx sum_rule_defect(const ResonantBasis& basis, double r, double r_prime, int order, int n);

/// Same sum with every term damped by exp(-eps k_p^2), summed over the whole basis.
/// The partial sums of orders 0 and +1 oscillate with growing amplitude; this
/// Gaussian summation converges, to 0 for orders -1 and +1 and for order 0 off the
/// diagonal. The basis must be large enough that the damping has cut off.
cplx sum_rule_regularized(const ResonantBasis& basis, double r, double r_prime, int order, double eps);

/// Truncated resonant expansion of G+(r, r'; k) over p = +-1..+-N.
cplx green_expansion(const ResonantBasis& basis, double r, double r_prime, cplx k, int n);

}  // namespace shelldecay
