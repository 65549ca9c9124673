#pragma once

#include <vector>

#include "shelldecay/model.hpp"
#include "shelldecay/resonant_basis.hpp"

namespace shelldecay::oracle {

// Expansion-free reference quantities for the delta shell, built from the
// closed-form outgoing Green's function and contour quadrature.

/// F(k) = 1 - (b/2k)(e^{2ika} - 1): the outgoing solution's value at the origin.
/// Returns the analytic continuation F(0) = 1 - iba at k = 0.
cplx jost_function(cplx k, const DeltaShellPotential& pot);

/// sin(kr)/k inside the shell, continued across the delta jump outside.
cplx regular_solution(cplx k, double r, const DeltaShellPotential& pot);

/// e^{ikr} outside the shell, continued inward through the delta jump.
cplx jost_solution(cplx k, double r, const DeltaShellPotential& pot);

/// G+(r, r'; k) = -phi(k, r<) f(k, r>) / F(k). NearPoleError when |F(k)| < 1e-13.
cplx green_function(double r, double r_prime, cplx k, const DeltaShellPotential& pot);

/// (1 / 2 pi i) times the contour integral of G+ around a circle, trapezoidal rule.
cplx green_residue(double r, double r_prime, cplx center, double radius, const DeltaShellPotential& pot,
                   int samples = 256);

struct PropagatorOptions {
    double t_min = 0.05;      // absolute time units
    double cutoff = 40.0;     // |z| <= sqrt(cutoff / t)
    double abs_tol = 1e-12;   // quadrature target
    double fail_above = 1e-9; // estimated error that is reported as a QuadratureError
    int max_intervals = 4000;
};

/// Retarded propagator g(r, r'; t) for r, r' <= a: residue sum over the proper
/// poles in `basis` plus the integral along the rotated ray k = e^{-i pi/4} z.
cplx propagator(double r, double r_prime, double t, const ResonantBasis& basis,
                const PropagatorOptions& opt = {});

/// int int psi(r, 0) G+(r, r'; k) psi(r', 0) dr dr' for the sine initial state, in closed
/// form. Within 1e-3 k_c of k = 0 or +-k_c it switches to the quadrature version below.
cplx green_initial_state_overlap(cplx k, const SineInitialState& init, const DeltaShellPotential& pot);

/// Same double integral with the inner integral closed and the outer by Gauss-Legendre.
cplx green_initial_state_overlap_quadrature(cplx k, const SineInitialState& init, const DeltaShellPotential& pot);

/// Exact survival amplitude at many times for one initial state. Residue weights are
/// overlaps computed here by quadrature, independent of the expansion engine's closed form.
class SurvivalOracle {
public:
    SurvivalOracle(const SineInitialState& init, const ResonantBasis& basis, const PropagatorOptions& opt = {});
    cplx amplitude(double t) const;
    const PropagatorOptions& options() const { return opt_; }

private:
    SineInitialState init_;
    const ResonantBasis& basis_;
    PropagatorOptions opt_;
    std::vector<cplx> products_;
};

/// Survival amplitude from the propagator folded with the initial state on both sides.
/// The residue terms use overlaps computed here by quadrature, independent of the
/// closed form used by the expansion engine.
cplx survival_amplitude_exact(const SineInitialState& init, double t, const ResonantBasis& basis,
                              const PropagatorOptions& opt = {});

}  // namespace shelldecay::oracle
