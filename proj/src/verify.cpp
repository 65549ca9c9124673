#include "shelldecay/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "shelldecay/errors.hpp"
#include "shelldecay/expansion.hpp"
#include "shelldecay/oracle.hpp"

namespace shelldecay {

namespace {

CheckResult bound(std::string name, double value, double threshold, std::string detail = {}) {
    return {std::move(name), value < threshold ? CheckStatus::pass : CheckStatus::fail, value, threshold,
            std::move(detail)};
}

// Trend check: value at N must not exceed value at 10 pairs.
CheckResult trend(std::string name, double at_n, double at_10, int n) {
    if (n < 20)
        return {std::move(name), CheckStatus::inconclusive, at_n, at_10, "trend-inconclusive: fewer than 20 pole pairs"};
    return {std::move(name), at_n <= at_10 ? CheckStatus::pass : CheckStatus::fail, at_n, at_10,
            "defect at N compared with defect at N = 10"};
}

std::string io_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

}  // namespace

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::inconclusive: return "trend-inconclusive";
    }
    return "?";
}

std::vector<CheckResult> run_verification(const VerifyConfig& cfg) {
    const auto pot = DeltaShellPotential::make(cfg.intensity, cfg.radius);
    if (cfg.truncation < 1) throw DomainError("truncation must be positive");
    const int n = cfg.truncation;
    const double a = cfg.radius;
    const auto basis = make_basis(pot, n);
    std::vector<CheckResult> out;

    double jost = 0.0, pole_eq = 0.0;
    for (const auto* fam : {&basis.proper, &basis.improper}) {
        for (const auto& s : *fam) {
            jost = std::max(jost, std::abs(oracle::jost_function(s.pole.k, pot)));
            pole_eq = std::max(pole_eq, std::abs(pole_equation_residual(s.pole.k, pot)));
        }
    }
    out.push_back(bound("jost_zeros", jost, 1e-10));
    out.push_back(bound("pole_equation", pole_eq, 1e-10));

    double norm_worst = 0.0, norm_near_real = 0.0;
    for (const auto* fam : {&basis.proper, &basis.improper}) {
        for (const auto& s : *fam) {
            double& slot = std::abs(s.pole.k.imag()) < 1e-3 ? norm_near_real : norm_worst;
            slot = std::max(slot, normalization_residual(s));
        }
    }
    out.push_back(bound("normalization", norm_worst, 1e-10));
    out.push_back(bound("normalization_near_real", norm_near_real, 1e-8));

    double residue = 0.0;
    const double r1 = 0.3 * a, r2 = 0.6 * a;
    for (int p = 0; p < std::min(5, n); ++p) {
        const auto& s = basis.proper[p];
        // circle well inside the gap to the neighbouring poles
        double gap = 1e300;
        for (const auto* fam : {&basis.proper, &basis.improper})
            for (const auto& o : *fam)
                if (&o != &s) gap = std::min(gap, std::abs(o.pole.k - s.pole.k));
        const double rho = std::min(0.05 / a, 0.25 * gap);
        const cplx num = oracle::green_residue(r1, r2, s.pole.k, rho, pot);
        residue = std::max(residue, std::abs(num - eval_state(s, r1) * eval_state(s, r2) / (2.0 * s.pole.k)));
    }
    out.push_back(bound("residue_identity", residue, 1e-8));

    const int n10 = std::min(10, n);
    out.push_back(trend("sum_rule_order_-1", std::abs(sum_rule_defect(basis, 0.5 * a, 0.5 * a, -1, n)),
                        std::abs(sum_rule_defect(basis, 0.5 * a, 0.5 * a, -1, n10)), n));

    // orders 0 and +1 only converge under summation; Gaussian damping cut off at the last pole
    if (n < 20) {
        out.push_back({"sum_rule_regularized", CheckStatus::inconclusive, 0.0, 1e-6,
                       "trend-inconclusive: fewer than 20 pole pairs"});
    } else {
        double kmax = 0.0;
        for (const auto& s : basis.proper) kmax = std::max(kmax, s.pole.k.real());
        const double eps = 36.0 / (kmax * kmax);
        double worst = 0.0;
        for (int order : {-1, 0, 1})
            worst = std::max(worst, std::abs(sum_rule_regularized(basis, 0.2 * a, 0.8 * a, order, eps)));
        out.push_back(bound("sum_rule_regularized", worst, 1e-6));
    }

    const auto init = box_state(1, a);
    const auto model = DecayModel::build(basis, init, n);
    const double c40 = std::abs(closure_sum(model.overlaps, n) - 1.0);
    const double c10 = std::abs(closure_sum(model.overlaps, n10) - 1.0);
    out.push_back(n < 20 ? CheckResult{"closure_q1", CheckStatus::inconclusive, c40, 0.02,
                                       "trend-inconclusive: fewer than 20 pole pairs"}
                         : bound("closure_q1", c40, c40 <= c10 ? 0.02 : 0.0, "also required: no worse than at N = 10"));

    double conj = 0.0;
    for (const auto& t : model.overlaps.proper) conj = std::max(conj, std::abs(t.c - t.c_bar));
    out.push_back(bound("overlap_conjugate_symmetry", conj, 1e-12));

    if (cfg.with_oracle) {
        const oracle::PropagatorOptions opt;
        const oracle::SurvivalOracle exact(init, basis, opt);
        double worst = 0.0, tail_share = 0.0;
        int used = 0;
        for (double x : {0.5, 1.0, 2.0, 3.0, 5.0}) {
            const double t = x * model.tau;
            if (t < opt.t_min) continue;
            const auto terms = survival_amplitude(model.overlaps, basis, t, n);
            tail_share = std::max(tail_share, std::abs(terms.tail) / std::abs(terms.exponential));
            const double se = std::norm(exact.amplitude(t));
            worst = std::max(worst, std::abs(se - std::norm(terms.total)) / se);
            ++used;
        }
        if (used == 0)
            out.push_back({"oracle_agreement_q1", CheckStatus::inconclusive, 0.0, 1e-2,
                           "lifetime shorter than the oracle's t_min; no sample in [0.5 tau, 5 tau]"});
        else if (tail_share > 1e-2)
            // Broad resonance. The neglected t^{-5/2} and higher terms are of the size of the
            // t^{-3/2} term times O(1), so 1% agreement is not a property of the expansion here.
            out.push_back({"oracle_agreement_q1", CheckStatus::inconclusive, worst, 1e-2,
                           "no clean exponential regime on [0.5 tau, 5 tau] (|A_tail|/|A_exp| up to " +
                               io_number(tail_share) + ")"});
        else
            out.push_back(bound("oracle_agreement_q1", worst, 1e-2, std::to_string(used) + " sample times"));
    }
    return out;
}

}  // namespace shelldecay
