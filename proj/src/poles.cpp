#include "shelldecay/poles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>

#include "shelldecay/errors.hpp"

namespace shelldecay {

namespace {

constexpr double kRealAxisTol = 1e-10;
constexpr double kDuplicateTol = 1e-8;
constexpr double kJitter = 1e-6;
constexpr int kMaxRetries = 8;
constexpr double kPolishTarget = 1e-12;
constexpr double kAcceptResidual = 1e-10;

// (e^x - 1)/x, accurate through x = 0.
cplx expm1_over_x(cplx x) {
    if (std::abs(x) < 1e-4) return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
    return (std::exp(x) - 1.0) / x;
}

cplx residual_unchecked(cplx k, const DeltaShellPotential& pot) {
    const cplx i(0.0, 1.0);
    return 2.0 * k - pot.intensity * (std::exp(2.0 * i * k * pot.radius) - 1.0);
}

cplx residual_derivative(cplx k, const DeltaShellPotential& pot) {
    const cplx i(0.0, 1.0);
    return 2.0 - 2.0 * i * pot.radius * pot.intensity * std::exp(2.0 * i * k * pot.radius);
}

struct BoundaryHit {};

// Distance-to-root estimate |R|/|R'|; only meaningful away from the removable zero.
bool grazes_root(cplx k, const DeltaShellPotential& pot) {
    if (std::abs(k) < 1e-6) return false;
    const double d = std::abs(residual_unchecked(k, pot)) / std::abs(residual_derivative(k, pot));
    return d < 1e-12;
}

double segment_arg_change(cplx z0, cplx f0, cplx z1, cplx f1, const DeltaShellPotential& pot) {
    const double d = std::arg(f1 / f0);
    if (std::abs(d) < kPi / 6.0) return d;
    if (std::abs(z1 - z0) < 1e-11) throw BoundaryHit{};
    const cplx zm = 0.5 * (z0 + z1);
    if (grazes_root(zm, pot)) throw BoundaryHit{};
    const cplx fm = reduced_residual(zm, pot);
    return segment_arg_change(z0, f0, zm, fm, pot) + segment_arg_change(zm, fm, z1, f1, pot);
}

double edge_arg_change(cplx z0, cplx z1, const DeltaShellPotential& pot) {
    // e^{2ika} turns by 2a per unit of Re k; start near 0.1 rad per step.
    const double step = 0.05 / pot.radius;
    const int n = std::max(8, static_cast<int>(std::ceil(std::abs(z1 - z0) / step)));
    double total = 0.0;
    cplx za = z0;
    if (grazes_root(za, pot)) throw BoundaryHit{};
    cplx fa = reduced_residual(za, pot);
    for (int j = 1; j <= n; ++j) {
        const cplx zb = z0 + (z1 - z0) * (static_cast<double>(j) / n);
        if (grazes_root(zb, pot)) throw BoundaryHit{};
        const cplx fb = reduced_residual(zb, pot);
        total += segment_arg_change(za, fa, zb, fb, pot);
        za = zb;
        fa = fb;
    }
    return total;
}

std::optional<int> try_count(const Rect& r, const DeltaShellPotential& pot) {
    const cplx c0(r.re_lo, r.im_lo), c1(r.re_hi, r.im_lo), c2(r.re_hi, r.im_hi), c3(r.re_lo, r.im_hi);
    try {
        const double total = edge_arg_change(c0, c1, pot) + edge_arg_change(c1, c2, pot) +
                             edge_arg_change(c2, c3, pot) + edge_arg_change(c3, c0, pot);
        const double w = total / (2.0 * kPi);
        const double rounded = std::round(w);
        if (std::abs(w - rounded) > 0.05) return std::nullopt;
        return static_cast<int>(rounded);
    } catch (const BoundaryHit&) {
        return std::nullopt;
    }
}

bool inside(cplx k, const Rect& r) {
    const double tol = 1e-12 * std::max({1.0, std::abs(r.re_lo), std::abs(r.re_hi)});
    return k.real() >= r.re_lo - tol && k.real() <= r.re_hi + tol && k.imag() >= r.im_lo - tol &&
           k.imag() <= r.im_hi + tol;
}

void collect_roots(const Rect& r, int expected, const DeltaShellPotential& pot, int depth,
                   std::vector<cplx>& out) {
    if (expected <= 0) return;
    if (depth > 80) throw SolverError("rectangle subdivision did not isolate a root", {r.re_lo, r.im_lo});
    if (expected == 1) {
        const cplx seed(0.5 * (r.re_lo + r.re_hi), 0.5 * (r.im_lo + r.im_hi));
        try {
            const cplx k = polish_root(seed, pot);
            if (inside(k, r)) {
                out.push_back(k);
                return;
            }
        } catch (const SolverError&) {
            // Newton wandered off; shrink the box and retry.
        }
    }
    const bool split_re = (r.re_hi - r.re_lo) >= (r.im_hi - r.im_lo);
    static constexpr std::array<double, 9> fractions{0.5, 0.4625, 0.5375, 0.425, 0.575, 0.3875, 0.6125, 0.35, 0.65};
    for (double f : fractions) {
        Rect a = r, b = r;
        if (split_re) {
            const double line = r.re_lo + f * (r.re_hi - r.re_lo);
            a.re_hi = line;
            b.re_lo = line;
        } else {
            const double line = r.im_lo + f * (r.im_hi - r.im_lo);
            a.im_hi = line;
            b.im_lo = line;
        }
        const auto ca = try_count(a, pot);
        if (!ca) continue;
        const auto cb = try_count(b, pot);
        if (!cb || *ca + *cb != expected) continue;
        collect_roots(a, *ca, pot, depth + 1, out);
        collect_roots(b, *cb, pot, depth + 1, out);
        return;
    }
    throw RetryExhaustedError("no clean split line for rectangle subdivision");
}

std::vector<cplx> dedupe(std::vector<cplx> roots) {
    std::vector<cplx> unique;
    for (const cplx& k : roots) {
        const bool dup = std::any_of(unique.begin(), unique.end(),
                                     [&](const cplx& u) { return std::abs(u - k) < kDuplicateTol; });
        if (!dup) unique.push_back(k);
    }
    return unique;
}

// Depth of the search strip: |e^{2ika}| ~ 2|k|/b fixes |Im k| asymptotically.
double search_depth(double re_extent, const DeltaShellPotential& pot) {
    const double a = pot.radius;
    const double asymptotic = std::log(std::max(2.0 * re_extent / pot.intensity, 1.0)) / (2.0 * a) + 2.0 / a;
    return std::max(5.0 / a, asymptotic);
}

}  // namespace

std::string_view to_string(Quadrant q) {
    switch (q) {
        case Quadrant::second: return "second";
        case Quadrant::third: return "third";
        case Quadrant::fourth: return "fourth";
        case Quadrant::real_axis: return "real_axis";
    }
    return "unknown";
}

Pole make_pole(int index, cplx k) {
    Pole p;
    p.index = index;
    p.k = k;
    if (std::abs(k.imag()) <= kRealAxisTol)
        p.quadrant = Quadrant::real_axis;
    else if (k.real() > 0.0)
        p.quadrant = Quadrant::fourth;  // first-quadrant roots do not exist
    else
        p.quadrant = k.imag() > 0.0 ? Quadrant::second : Quadrant::third;
    p.energy = k * k;
    const double alpha = k.real(), beta = -k.imag();
    p.resonance_position = alpha * alpha - beta * beta;
    p.width = 4.0 * alpha * beta;
    return p;
}

cplx pole_equation_residual(cplx k, const DeltaShellPotential& pot) {
    if (k == cplx(0.0, 0.0)) throw DomainError("k = 0 is a removable zero of the pole equation, not a pole");
    return residual_unchecked(k, pot);
}

cplx reduced_residual(cplx k, const DeltaShellPotential& pot) {
    const cplx i(0.0, 1.0);
    const cplx x = 2.0 * i * k * pot.radius;
    return 1.0 - i * pot.intensity * pot.radius * expm1_over_x(x);
}

int count_roots_in_rectangle(const Rect& rect, const DeltaShellPotential& pot) {
    if (!(rect.re_hi > rect.re_lo) || !(rect.im_hi > rect.im_lo))
        throw DomainError("rectangle must have positive width and height");
    const double scale = std::max({1.0, std::abs(rect.re_lo), std::abs(rect.re_hi), std::abs(rect.im_lo),
                                   std::abs(rect.im_hi)});
    for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
        Rect r = rect;
        if (attempt > 0) {
            const double j = kJitter * attempt * scale;
            r.re_lo -= j;
            r.re_hi += 1.3 * j;
            r.im_lo -= 0.7 * j;
            r.im_hi += 1.1 * j;
        }
        if (auto n = try_count(r, pot)) return *n;
    }
    throw RetryExhaustedError("rectangle boundary keeps passing through a root");
}

cplx polish_root(cplx seed, const DeltaShellPotential& pot) {
    cplx k = seed;
    cplx f = residual_unchecked(k, pot);
    for (int it = 0; it < 100; ++it) {
        if (std::abs(f) < kPolishTarget) break;
        const cplx step = f / residual_derivative(k, pot);
        double lambda = 1.0;
        cplx trial = k - step;
        cplx ft = residual_unchecked(trial, pot);
        for (int h = 0; h < 30 && std::abs(ft) > std::abs(f); ++h) {
            lambda *= 0.5;
            trial = k - lambda * step;
            ft = residual_unchecked(trial, pot);
        }
        const bool stalled = std::abs(trial - k) <= 4e-16 * std::max(1.0, std::abs(k));
        k = trial;
        f = ft;
        if (stalled) break;
    }
    if (!(std::abs(f) < kAcceptResidual) || std::abs(k) < 1e-8 || !std::isfinite(k.real()) ||
        !std::isfinite(k.imag())) {
        std::ostringstream os;
        os << "Newton iteration on the pole equation did not converge from seed " << seed.real()
           << (seed.imag() < 0 ? " - " : " + ") << std::abs(seed.imag()) << "i";
        throw SolverError(os.str(), seed);
    }
    return k;
}

PoleSet find_poles(const DeltaShellPotential& pot, int n_proper, int n_improper) {
    if (n_proper < 1 || n_improper < 1) throw DomainError("pole counts must be at least 1");
    const double a = pot.radius;

    auto search = [&](bool proper_family, int n) {
        for (int extra = 0; extra <= 16; ++extra) {
            const double extent = (n + 1 + extra) * kPi / a;
            const double depth = search_depth(extent, pot);
            const Rect region = proper_family
                                    ? Rect{0.0, extent, -depth, 0.0}
                                    : Rect{-extent, 0.0, -depth, std::max(5.0 / a, pot.intensity + 1.0)};
            const int certified = count_roots_in_rectangle(region, pot);
            std::vector<cplx> roots;
            collect_roots(region, certified, pot, 0, roots);
            roots = dedupe(std::move(roots));
            if (static_cast<int>(roots.size()) != certified)
                throw CompletenessError("root count in search region does not match winding number", certified,
                                        static_cast<int>(roots.size()));
            std::sort(roots.begin(), roots.end(), [](const cplx& x, const cplx& y) {
                return std::abs(x.real()) < std::abs(y.real());
            });
            if (static_cast<int>(roots.size()) >= n) {
                roots.resize(n);
                return roots;
            }
        }
        throw CompletenessError("could not enclose the requested number of poles", n, 0);
    };

    PoleSet set;
    set.potential = pot;
    const auto proper = search(true, n_proper);
    const auto improper = search(false, n_improper);
    for (int p = 0; p < n_proper; ++p) set.proper.push_back(make_pole(p + 1, proper[p]));
    for (int p = 0; p < n_improper; ++p) set.improper.push_back(make_pole(-(p + 1), improper[p]));
    return set;
}

std::pair<double, double> resonance_parameters(const Pole& pole) {
    if (pole.index <= 0) throw DomainError("resonance parameters are defined for proper poles only");
    const double alpha = pole.alpha(), beta = pole.beta();
    return {alpha * alpha - beta * beta, 4.0 * alpha * beta};
}

}  // namespace shelldecay
