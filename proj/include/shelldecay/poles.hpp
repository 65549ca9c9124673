#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "shelldecay/model.hpp"

namespace shelldecay {

enum class Quadrant { second, third, fourth, real_axis };

std::string_view to_string(Quadrant q);

/// One zero of the delta-shell pole equation, k = alpha - i beta.
///
/// Positive `index` marks the fourth-quadrant (proper) family, negative the
/// second/third-quadrant (improper) family. `resonance_position` and `width`
/// are alpha^2 - beta^2 and 4 alpha beta; they are physically meaningful only
/// for proper poles but are filled in for every pole so serialized tables are
/// uniform.
struct Pole {
    int index = 0;
    cplx k{};
    Quadrant quadrant = Quadrant::fourth;
    cplx energy{};
    double resonance_position = 0.0;
    double width = 0.0;

    double alpha() const { return k.real(); }
    double beta() const { return -k.imag(); }
};

Pole make_pole(int index, cplx k);

struct PoleSet {
    DeltaShellPotential potential;
    std::vector<Pole> proper;    // index 1..N, increasing Re k
    std::vector<Pole> improper;  // index -1..-M, increasing |Re k|
};

/// Closed axis-aligned rectangle in the complex k plane.
struct Rect {
    double re_lo, re_hi, im_lo, im_hi;
};

/// 2k - b (e^{2ika} - 1). Throws DomainError at k = 0 (removable zero, not a pole).
cplx pole_equation_residual(cplx k, const DeltaShellPotential& pot);

/// residual / 2k continued through k = 0, i.e. 1 - (b/2k)(e^{2ika} - 1) with value
/// 1 - iba at the origin. Entire, with exactly the poles as zeros.
cplx reduced_residual(cplx k, const DeltaShellPotential& pot);

/// Number of poles inside `rect`, from the winding number of the reduced residual
/// along an adaptively sampled boundary. Boundaries that graze a root are jittered
/// outward and retried; RetryExhaustedError if that keeps happening.
int count_roots_in_rectangle(const Rect& rect, const DeltaShellPotential& pot);

/// Damped Newton on the pole equation. Throws SolverError (carrying the seed) if
/// the iteration does not settle on a root.
cplx polish_root(cplx seed, const DeltaShellPotential& pot);

/// The first n_proper fourth-quadrant and first n_improper left-half-plane poles.
/// Completeness is certified by comparing the roots found against the winding count
/// of the covering region.
PoleSet find_poles(const DeltaShellPotential& pot, int n_proper, int n_improper);

/// (resonance position, width) of a proper pole; DomainError for improper ones.
std::pair<double, double> resonance_parameters(const Pole& pole);

}  // namespace shelldecay
