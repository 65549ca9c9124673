#include "shelldecay/singularity.hpp"

#include <cmath>
#include <cstdlib>

#include <boost/math/tools/roots.hpp>

#include "shelldecay/errors.hpp"
#include "shelldecay/oracle.hpp"

namespace shelldecay {

namespace {

DeltaShellPotential at(double b, double a) { return DeltaShellPotential::make(b, a); }

bool changes_sign(cplx k0, cplx k1) {
    return (k0.imag() <= 0.0 && k1.imag() >= 0.0) || (k0.imag() >= 0.0 && k1.imag() <= 0.0);
}

Pole pick_family(int family, double b, double a) {
    if (family == 0) throw DomainError("pole family index must be nonzero");
    const int n = std::abs(family);
    const PoleSet set = find_poles(at(b, a), family > 0 ? n : 1, family < 0 ? n : 1);
    return family > 0 ? set.proper[n - 1] : set.improper[n - 1];
}

}  // namespace

PoleTrajectory track_pole(const DeltaShellPotential& pot0, const Pole& pole0, double b_from, double b_to, int steps) {
    const double a = pot0.radius;
    if (!(b_from > 0.0) || !(b_to > 0.0)) throw DomainError("intensity must be positive");
    PoleTrajectory traj;
    traj.family = pole0.index;
    traj.radius = a;
    const cplx k0 = polish_root(pole0.k, at(b_from, a));
    traj.samples.push_back({b_from, k0});
    if (b_from == b_to) return traj;
    if (steps < 2) throw DomainError("continuation needs at least two steps");

    const double span = b_to - b_from;
    const double nominal = span / (steps - 1);
    const double min_step = std::abs(span) / std::pow(2.0, 20);
    const double max_jump = kPi / (2.0 * a);
    double b = b_from;
    cplx k = k0;
    for (int i = 1; i < steps; ++i) {
        const double target = (i == steps - 1) ? b_to : b_from + nominal * i;
        while (b != target) {
            double h = target - b;
            for (;;) {
                if (std::abs(h) < min_step) throw TrajectoryLostError("continuation step underflow; trajectory lost");
                try {
                    const cplx next = polish_root(k, at(b + h, a));
                    if (std::abs(next - k) <= max_jump) {
                        const double prev = b;
                        b = (std::abs(target - (b + h)) < 1e-15 * std::abs(target)) ? target : b + h;
                        if (!traj.crossing && changes_sign(k, next)) traj.crossing = Crossing{prev, b};
                        k = next;
                        break;
                    }
                } catch (const SolverError&) {
                }
                h /= 2.0;
            }
            traj.samples.push_back({b, k});
        }
    }
    // bracket recorded in scan order; keep it ascending
    if (traj.crossing && traj.crossing->b_lo > traj.crossing->b_hi) std::swap(traj.crossing->b_lo, traj.crossing->b_hi);
    return traj;
}

Singularity find_singularity(int family, double b_lo, double b_hi, double radius, const ScanOptions& opt) {
    if (!(b_lo > 0.0) || !(b_hi > 0.0)) throw DomainError("intensity must be positive");
    if (!(b_hi > b_lo)) throw DomainError("intensity range must be increasing (lo < hi)");
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
    const double start = opt.downward ? b_hi : b_lo, stop = opt.downward ? b_lo : b_hi;
    const Pole p0 = pick_family(family, start, radius);
    const PoleTrajectory traj = track_pole(at(start, radius), p0, start, stop, opt.steps);
    if (!traj.crossing) throw NoSingularityError("no crossing found");

    // endpoints of the bracket, with the roots there, in ascending b
    const auto& s = traj.samples;
    std::size_t i = 0;
    while (!(std::min(s[i].b, s[i + 1].b) == traj.crossing->b_lo && std::max(s[i].b, s[i + 1].b) == traj.crossing->b_hi)) ++i;
    TrajectorySample lo = s[i], hi = s[i + 1];
    if (lo.b > hi.b) std::swap(lo, hi);

    Singularity out;
    out.family = family;
    if (lo.k.imag() == 0.0 || hi.k.imag() == 0.0) {
        const auto& hit = lo.k.imag() == 0.0 ? lo : hi;
        out.b_star = hit.b;
        out.k_star = hit.k;
    } else {
        // Im k(b) with Newton seeded by linear interpolation between the bracket roots,
        // so the refined value does not depend on the scan direction.
        auto root_at = [&](double b) {
            const double w = (b - lo.b) / (hi.b - lo.b);
            return polish_root(lo.k + w * (hi.k - lo.k), at(b, radius));
        };
        auto im = [&](double b) { return root_at(b).imag(); };
        boost::uintmax_t iters = 200;
        const auto tol = [](double x, double y) { return std::abs(x - y) <= 1e-14 * std::max(1.0, std::abs(x)); };
        const auto [x0, x1] = boost::math::tools::toms748_solve(im, lo.b, hi.b, lo.k.imag(), hi.k.imag(), tol, iters);
        const cplx k0 = root_at(x0), k1 = root_at(x1);
        const bool first = std::abs(k0.imag()) <= std::abs(k1.imag());
        out.b_star = first ? x0 : x1;
        out.k_star = first ? k0 : k1;
    }
    if (!(std::abs(out.k_star.imag()) < 1e-10))
        throw NumericalError("crossing refinement stalled above |Im k| = 1e-10");
    const auto pot = at(out.b_star, radius);
    out.residual = std::abs(pole_equation_residual(out.k_star, pot));
    out.jost = std::abs(oracle::jost_function(cplx(out.k_star.real(), 0.0), pot));
    return out;
}

}  // namespace shelldecay
