#include "shelldecay/model.hpp"

#include <cmath>
#include <string>

#include "shelldecay/errors.hpp"

namespace shelldecay {

DeltaShellPotential DeltaShellPotential::make(double intensity, double radius) {
    if (!(intensity > 0.0) || !std::isfinite(intensity))
        throw DomainError("intensity must be positive");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("radius must be positive");
    return {intensity, radius};
}

double normalization_constant(double wavenumber, double radius) {
    if (!(wavenumber > 0.0) || !std::isfinite(wavenumber))
        throw DomainError("initial-state wavenumber must be positive");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("radius must be positive");
    const double x = 2.0 * wavenumber * radius;
    return std::sqrt(2.0 / radius) / std::sqrt(1.0 - std::sin(x) / x);
}

SineInitialState SineInitialState::make(double wavenumber, double radius) {
    return {wavenumber, normalization_constant(wavenumber, radius), radius};
}

SineInitialState box_state(int q, double radius) {
    if (q < 1) throw DomainError("box mode number must be a positive integer");
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
    // sin(2 q pi) vanishes identically; set N_c exactly instead of through rounding.
    return {q * kPi / radius, std::sqrt(2.0 / radius), radius};
}

double initial_state_eval(const SineInitialState& state, double r) {
    if (r < 0.0 || r > state.radius) return 0.0;
    return state.normalization * std::sin(state.wavenumber * r);
}

}  // namespace shelldecay
