#include "shelldecay/resonant_basis.hpp"

#include <algorithm>
#include <cmath>

#include "shelldecay/errors.hpp"

namespace shelldecay {

namespace {

const cplx I(0.0, 1.0);

void check_points(const ResonantBasis& basis, double r, double r_prime) {
    const double a = basis.potential().radius;
    if (r < 0.0 || r_prime < 0.0 || r > a || r_prime > a)
        throw DomainError("sum rules hold only inside the interaction region");
    if (r == a && r_prime == a) throw DomainError("resonant expansions are invalid at r = r' = a");
}

cplx power(cplx k, int order) {
    switch (order) {
        case -1: return 1.0 / k;
        case 0: return 1.0;
        case 1: return k;
        default: throw DomainError("sum-rule order must be -1, 0 or +1");
    }
}

}  // namespace

cplx normalization_coefficient(const Pole& pole, const DeltaShellPotential& pot) {
    const double a = pot.radius, b = pot.intensity;
    const cplx k = pole.k;
    if (std::abs(reduced_residual(k, pot)) > 1e-8)
        throw DomainError("normalization requested at a point that is not a pole");
    const cplx den = a * (1.0 - I * b * a - 2.0 * I * k * a);
    if (std::abs(den) < 1e-14)
        throw DegenerateNormalizationError("normalization denominator vanishes (exceptional point)");
    return std::sqrt(2.0 * (-I * b * a - 2.0 * I * k * a) / den);
}

ResonantState make_resonant_state(const Pole& pole, const DeltaShellPotential& pot) {
    ResonantState s;
    s.pole = pole;
    s.radius = pot.radius;
    s.amplitude = normalization_coefficient(pole, pot);
    s.exterior_amplitude = s.amplitude * std::sin(pole.k * pot.radius) * std::exp(-I * pole.k * pot.radius);
    return s;
}

cplx eval_state(const ResonantState& state, double r) {
    if (r <= state.radius) return state.amplitude * std::sin(state.pole.k * r);
    return state.exterior_amplitude * std::exp(I * state.pole.k * r);
}

double normalization_residual(const ResonantState& state) {
    const cplx k = state.pole.k;
    const double a = state.radius;
    const cplx a2 = state.amplitude * state.amplitude;
    const cplx interior = a2 * (a / 2.0 - std::sin(2.0 * k * a) / (4.0 * k));
    const cplx ua = eval_state(state, a);
    return std::abs(interior + I * ua * ua / (2.0 * k) - 1.0);
}

int ResonantBasis::size() const {
    return static_cast<int>(std::min(proper.size(), improper.size()));
}

ResonantBasis make_basis(const PoleSet& poles) {
    ResonantBasis basis;
    basis.poles = poles;
    for (const Pole& p : poles.proper) basis.proper.push_back(make_resonant_state(p, poles.potential));
    for (const Pole& p : poles.improper) basis.improper.push_back(make_resonant_state(p, poles.potential));
    return basis;
}

ResonantBasis make_basis(const DeltaShellPotential& pot, int pairs) {
    return make_basis(find_poles(pot, pairs, pairs));
}

cplx sum_rule_defect(const ResonantBasis& basis, double r, double r_prime, int order, int n) {
    check_points(basis, r, r_prime);
    if (order < -1 || order > 1) throw DomainError("sum-rule order must be -1, 0 or +1");
    if (n < 1 || n > basis.size()) throw DomainError("sum-rule truncation exceeds available states");
    cplx sum = 0.0;
    for (int p = 0; p < n; ++p) {
        for (const ResonantState* s : {&basis.improper[p], &basis.proper[p]})
            sum += eval_state(*s, r) * eval_state(*s, r_prime) * power(s->pole.k, order);
    }
    return sum;
}

cplx sum_rule_regularized(const ResonantBasis& basis, double r, double r_prime, int order, double eps) {
    check_points(basis, r, r_prime);
    if (!(eps > 0.0)) throw DomainError("regularization width must be positive");
    cplx sum = 0.0;
    for (int p = 0; p < basis.size(); ++p) {
        for (const ResonantState* s : {&basis.improper[p], &basis.proper[p]}) {
            const cplx k = s->pole.k;
            sum += eval_state(*s, r) * eval_state(*s, r_prime) * power(k, order) * std::exp(-eps * k * k);
        }
    }
    return sum;
}

cplx green_expansion(const ResonantBasis& basis, double r, double r_prime, cplx k, int n) {
    check_points(basis, r, r_prime);
    if (n < 1 || n > basis.size()) throw DomainError("expansion truncation exceeds available states");
    cplx sum = 0.0;
    for (int p = 0; p < n; ++p) {
        for (const ResonantState* s : {&basis.improper[p], &basis.proper[p]}) {
            const cplx kp = s->pole.k;
            sum += eval_state(*s, r) * eval_state(*s, r_prime) / (2.0 * kp * (k - kp));
        }
    }
    return sum;
}

}  // namespace shelldecay
