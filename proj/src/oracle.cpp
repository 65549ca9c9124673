#include "shelldecay/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "shelldecay/errors.hpp"
#include "shelldecay/quadrature.hpp"

namespace shelldecay::oracle {

namespace {

const cplx I(0.0, 1.0);
const cplx kRay = std::exp(cplx(0.0, -kPi / 4.0));  // sqrt(-i)

// sin(k x) / k, finite at k = 0.
cplx sin_over(cplx k, double x) {
    const cplx kx = k * x;
    if (std::abs(kx) < 1e-4) return x * (1.0 - kx * kx / 6.0);
    return std::sin(kx) / k;
}

void check_interior(double r, double r_prime, double a) {
    if (r < 0.0 || r_prime < 0.0 || r > a || r_prime > a)
        throw DomainError("propagator oracle is limited to r, r' <= a");
}

cplx ray_integral(const auto& g_of_k, double t, const PropagatorOptions& opt) {
    const double zmax = std::sqrt(opt.cutoff / t);
    auto integrand = [&](double z) -> cplx {
        if (z == 0.0) return 0.0;
        return g_of_k(kRay * z) * std::exp(-z * z * t) * z;
    };
    const quad::Options qo{opt.abs_tol, 1e-12, opt.fail_above, opt.max_intervals};
    const auto lower = quad::adaptive(integrand, -zmax, 0.0, qo);
    const auto upper = quad::adaptive(integrand, 0.0, zmax, qo);
    const double err = lower.error + upper.error;
    if (!(err <= opt.fail_above))
        throw QuadratureError("rotated-ray quadrature did not converge", err, lower.intervals + upper.intervals);
    return (lower.value + upper.value) / kPi;
}

}  // namespace

cplx jost_function(cplx k, const DeltaShellPotential& pot) {
    const double a = pot.radius, b = pot.intensity;
    return 1.0 - I * b * std::exp(I * k * a) * sin_over(k, a);
}

cplx regular_solution(cplx k, double r, const DeltaShellPotential& pot) {
    const double a = pot.radius;
    if (r <= a) return sin_over(k, r);
    const cplx phi_a = sin_over(k, a);
    const cplx slope_out = std::cos(k * a) - I * pot.intensity * phi_a;
    return phi_a * std::cos(k * (r - a)) + slope_out * sin_over(k, r - a);
}

cplx jost_solution(cplx k, double r, const DeltaShellPotential& pot) {
    const double a = pot.radius;
    if (r >= a) return std::exp(I * k * r);
    return std::exp(I * k * r) + I * pot.intensity * std::exp(I * k * a) * sin_over(k, r - a);
}

cplx green_function(double r, double r_prime, cplx k, const DeltaShellPotential& pot) {
    if (r < 0.0 || r_prime < 0.0) throw DomainError("radial coordinates must be non-negative");
    const cplx F = jost_function(k, pot);
    if (std::abs(F) < 1e-13) throw NearPoleError("Green's function evaluated at a pole");
    const double lo = std::min(r, r_prime), hi = std::max(r, r_prime);
    return -regular_solution(k, lo, pot) * jost_solution(k, hi, pot) / F;
}

cplx green_residue(double r, double r_prime, cplx center, double radius, const DeltaShellPotential& pot,
                   int samples) {
    cplx sum = 0.0;
    for (int j = 0; j < samples; ++j) {
        const cplx e = std::exp(I * (2.0 * kPi * j / samples));
        sum += green_function(r, r_prime, center + radius * e, pot) * e;
    }
    return sum * radius / static_cast<double>(samples);
}

cplx propagator(double r, double r_prime, double t, const ResonantBasis& basis, const PropagatorOptions& opt) {
    const auto& pot = basis.potential();
    check_interior(r, r_prime, pot.radius);
    if (!(t >= opt.t_min)) throw DomainError("propagator oracle requires t >= t_min");
    cplx residues = 0.0;
    for (const auto& s : basis.proper)
        residues += eval_state(s, r) * eval_state(s, r_prime) * std::exp(-I * s.pole.energy * t);
    const auto g = [&](cplx k) { return green_function(r, r_prime, k, pot); };
    return residues + ray_integral(g, t, opt);
}

cplx green_initial_state_overlap_quadrature(cplx k, const SineInitialState& init, const DeltaShellPotential& pot) {
    const double a = pot.radius, kc = init.wavenumber, nc = init.normalization;
    const cplx F = jost_function(k, pot);
    // J(r') = int_0^r' psi(r) sin(kr)/k dr in closed form.
    auto inner = [&](double rp) {
        return nc * (sin_over(k - kc, rp) - sin_over(k + kc, rp)) / (2.0 * k);
    };
    auto outer = [&](double rp) -> cplx {
        return nc * std::sin(kc * rp) * jost_solution(k, rp, pot) * inner(rp);
    };
    const int panels = 1 + static_cast<int>(std::ceil((std::abs(k) + kc) * a / 8.0));
    cplx sum = 0.0;
    for (int j = 0; j < panels; ++j)
        sum += quad::gauss_legendre<32>(outer, a * j / panels, a * (j + 1) / panels);
    return -2.0 * sum / F;
}

cplx green_initial_state_overlap(cplx k, const SineInitialState& init, const DeltaShellPotential& pot) {
    const double a = pot.radius, b = pot.intensity, kc = init.wavenumber, nc = init.normalization;
    // 1/(k -+ k_c) prefactors cancel badly close to +-k_c and the origin
    const double guard = 1e-3 * std::max(1.0, kc);
    if (std::abs(k - kc) < guard || std::abs(k + kc) < guard || std::abs(k) < guard)
        return green_initial_state_overlap_quadrature(k, init, pot);

    // Inside the shell f = alpha e^{ikr} + beta e^{-ikr} with F = alpha + beta, so
    //   G+ = -sin(k r<) e^{+ik r>}/k + (2i beta /(kF)) sin(kr) sin(kr')   (bounded for Im k >= 0)
    //   G+ = -sin(k r<) e^{-ik r>}/k - (2i alpha/(kF)) sin(kr) sin(kr')   (bounded for Im k < 0)
    // and both pieces integrate against sin(k_c r) exactly.
    const double sgn = k.imag() >= 0.0 ? 1.0 : -1.0;
    auto E = [&](cplx mu) {  // int_0^a e^{i mu r} dr
        const cplx x = I * mu * a;
        if (std::abs(x) < 1e-5) return a * (1.0 + x / 2.0 + x * x / 6.0);
        return (std::exp(x) - 1.0) / (I * mu);
    };
    // int_0^a sin(k_c r) e^{i sgn k r} sin(qr)/q dr
    auto H = [&](cplx q) {
        cplx sum = 0.0;
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0}) sum += s1 * s2 * E(sgn * k + s1 * kc + s2 * q);
        return -sum / (4.0 * q);
    };
    const cplx free_part = -(nc * nc / k) * (H(k - kc) - H(k + kc));
    const cplx S = 0.5 * nc * (sin_over(k - kc, a) - sin_over(k + kc, a));
    const cplx coeff = sgn > 0.0 ? -(b / (2.0 * k)) * std::exp(2.0 * I * k * a)  // beta
                                 : -(1.0 + b / (2.0 * k));                        // -alpha
    return free_part + 2.0 * I * coeff / (k * jost_function(k, pot)) * S * S;
}

SurvivalOracle::SurvivalOracle(const SineInitialState& init, const ResonantBasis& basis, const PropagatorOptions& opt)
    : init_(init), basis_(basis), opt_(opt) {
    const quad::Options tight{1e-14, 1e-12, 1e-10, 2000};
    for (const auto& s : basis_.proper) {
        auto f = [&](double r) { return initial_state_eval(init_, r) * eval_state(s, r); };
        const cplx c = quad::adaptive(f, 0.0, basis_.potential().radius, tight).value;
        products_.push_back(c * c);
    }
}

cplx SurvivalOracle::amplitude(double t) const {
    if (!(t >= opt_.t_min)) throw DomainError("exact survival amplitude requires t >= t_min");
    cplx residues = 0.0;
    for (std::size_t p = 0; p < products_.size(); ++p)
        residues += products_[p] * std::exp(-I * basis_.proper[p].pole.energy * t);
    const auto& pot = basis_.potential();
    const auto g = [&](cplx k) {
        if (k == cplx(0.0, 0.0)) return cplx(0.0);
        return green_initial_state_overlap(k, init_, pot);
    };
    return residues + ray_integral(g, t, opt_);
}

cplx survival_amplitude_exact(const SineInitialState& init, double t, const ResonantBasis& basis,
                              const PropagatorOptions& opt) {
    if (!(t >= opt.t_min)) throw DomainError("exact survival amplitude requires t >= t_min");
    return SurvivalOracle(init, basis, opt).amplitude(t);
}

}  // namespace shelldecay::oracle
