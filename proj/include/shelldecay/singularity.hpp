#pragma once

#include <optional>
#include <vector>

#include "shelldecay/poles.hpp"

namespace shelldecay {

struct TrajectorySample {
    double b = 0.0;
    cplx k{};
};

struct Crossing {
    double b_lo = 0.0, b_hi = 0.0;  // consecutive samples where Im k changes sign
};

/// One pole followed through a range of intensities at fixed radius.
struct PoleTrajectory {
    int family = 0;
    double radius = 1.0;
    std::vector<TrajectorySample> samples;
    std::optional<Crossing> crossing;  // first real-axis crossing along the scan
};

/// Continuation of `pole0` (a root at pot0 = (b_from, a)) to b_to in `steps` uniform
/// steps. The previous root seeds Newton at the next b; a step is halved when Newton
/// fails or the root moves by more than pi/(2a), half the spacing between neighbours.
/// TrajectoryLostError once a step would drop below |b_to - b_from| / 2^20.
PoleTrajectory track_pole(const DeltaShellPotential& pot0, const Pole& pole0, double b_from, double b_to, int steps);

struct Singularity {
    int family = 0;
    double b_star = 0.0;
    cplx k_star{};           // Im k_star is the residual distance from the axis
    double residual = 0.0;   // |2k - b(e^{2ika} - 1)| at (b*, k*)
    double jost = 0.0;       // |F(k*)|
};

struct ScanOptions {
    int steps = 41;
    bool downward = false;  // scan from b_hi towards b_lo
};

/// b at which pole `family` (at radius a) reaches the real k axis inside [b_lo, b_hi].
/// The pole is picked by the pole solver at the starting end of the scan, tracked across
/// the bracket, and the crossing refined until |Im k| < 1e-10.
/// NoSingularityError when Im k does not change sign.
Singularity find_singularity(int family, double b_lo, double b_hi, double radius, const ScanOptions& opt = {});

}  // namespace shelldecay
