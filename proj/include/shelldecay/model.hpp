#pragma once

#include <complex>

namespace shelldecay {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Purely absorptive delta shell, V(r) = -i b delta(r - a), in units hbar = 2m = 1.
///
/// `intensity` (b) has units of inverse length and `radius` (a) of length.
/// Both must be strictly positive; use `make` to get a validated instance.
struct DeltaShellPotential {
    double intensity = 0.0;
    double radius = 1.0;

    static DeltaShellPotential make(double intensity, double radius);
};

/// psi(r, 0) = N_c sin(k_c r) on [0, a], identically zero outside.
struct SineInitialState {
    double wavenumber = 0.0;     // k_c
    double normalization = 0.0;  // N_c
    double radius = 1.0;         // a

    static SineInitialState make(double wavenumber, double radius);
};

/// Infinite box mode q: k_c = q pi / a, N_c = sqrt(2/a).
SineInitialState box_state(int q, double radius);

/// N_c such that the interior part of N_c sin(k_c r) has unit norm.
double normalization_constant(double wavenumber, double radius);

double initial_state_eval(const SineInitialState& state, double r);

}  // namespace shelldecay
