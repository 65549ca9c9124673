#pragma once

#include "shelldecay/resonant_basis.hpp"

// Shared b = 9 pi / 2, a = 1 basis; building it is the slow part of most tests.
inline const shelldecay::DeltaShellPotential& reference_shell() {
    static const auto pot = shelldecay::DeltaShellPotential::make(9.0 * shelldecay::kPi / 2.0, 1.0);
    return pot;
}

inline const shelldecay::ResonantBasis& reference_basis(int pairs = 40) {
    static const auto b40 = shelldecay::make_basis(reference_shell(), 40);
    static const auto b80 = shelldecay::make_basis(reference_shell(), 80);
    return pairs <= 40 ? b40 : b80;
}
