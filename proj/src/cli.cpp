#include "shelldecay/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "shelldecay/errors.hpp"
#include "shelldecay/expansion.hpp"
#include "shelldecay/io.hpp"
#include "shelldecay/oracle.hpp"
#include "shelldecay/singularity.hpp"
#include "shelldecay/verify.hpp"

namespace shelldecay::cli {

namespace {

using io::format_double;

struct Common {
    double b = 9.0 * kPi / 2.0;
    double a = 1.0;
    int n = 40;
    std::string format = "csv";
    std::string output;
};

struct SurvivalArgs {
    std::optional<int> q;
    std::optional<double> kc;
    std::string tmax = "40tau";
    std::string tmin;
    int samples = 2000;
    std::string spacing = "linear";
    bool oracle = false;
};

struct ScanArgs {
    int family = -5;
    std::string range = "13:15";
    int steps = 41;
    bool downward = false;
    std::string trajectory;
};

void add_common(CLI::App* cmd, Common& c, int default_n) {
    c.n = default_n;
    cmd->add_option("--b", c.b, "shell intensity b (inverse length)")->capture_default_str();
    cmd->add_option("--a", c.a, "shell radius a")->capture_default_str();
    cmd->add_option("--n", c.n, "pole pairs")->capture_default_str();
    cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_option("--output,-o", c.output, "output file (default: standard output)");
}

io::Comments config_comments(const std::string& command, const Common& c) {
    return {"shelldecay " + command, "b=" + format_double(c.b) + " a=" + format_double(c.a) + " n=" + std::to_string(c.n)};
}

// Writes into a buffer first so a failing command leaves no partial file behind.
void emit(const std::string& text, const Common& c, std::ostream& out) {
    if (c.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw DomainError("cannot open output file '" + c.output + "'");
    f << text;
}

int cmd_poles(const Common& c, int n_improper, bool with_states, std::ostream& out) {
    const auto pot = DeltaShellPotential::make(c.b, c.a);
    if (c.n < 1 || n_improper < 1) throw DomainError("pole counts must be positive");
    const PoleSet set = find_poles(pot, c.n, n_improper);
    std::optional<ResonantBasis> basis;
    if (with_states) basis = make_basis(set);
    std::ostringstream os;
    auto comments = config_comments("poles", c);
    if (c.format == "json")
        io::write_poles_json(os, set, comments, basis ? &*basis : nullptr);
    else
        io::write_poles_csv(os, set, comments, basis ? &*basis : nullptr);
    emit(os.str(), c, out);
    return kOk;
}

int cmd_survival(const Common& c, const SurvivalArgs& s, std::ostream& out) {
    const auto pot = DeltaShellPotential::make(c.b, c.a);
    if (c.n < 1) throw DomainError("truncation must be positive");
    if (s.samples < 2) throw DomainError("samples must be at least 2");
    if (s.q && s.kc) throw DomainError("give either --q or --kc, not both");
    const SineInitialState init = s.kc ? SineInitialState::make(*s.kc, c.a) : box_state(s.q.value_or(1), c.a);
    const auto model = DecayModel::build(pot, init, c.n);
    const double tmax = parse_time(s.tmax).resolve(model.tau);
    const bool log_grid = s.spacing == "log";
    double tmin = log_grid ? 1e-3 * tmax : tmax / s.samples;
    if (!s.tmin.empty()) tmin = parse_time(s.tmin).resolve(model.tau);
    if (!(tmin > 0.0) || !(tmin < tmax)) throw DomainError("time grid needs 0 < tmin < tmax");
    std::vector<double> grid(s.samples);
    for (int i = 0; i < s.samples; ++i) {
        const double f = static_cast<double>(i) / (s.samples - 1);
        grid[i] = log_grid ? tmin * std::pow(tmax / tmin, f) : tmin + (tmax - tmin) * f;
    }
    const auto series = survival_series(model, grid);

    std::vector<double> oracle_values;
    if (s.oracle) {
        const oracle::SurvivalOracle exact(init, model.basis);
        for (double t : grid)
            oracle_values.push_back(t >= exact.options().t_min ? std::norm(exact.amplitude(t)) : std::nan(""));
    }
    auto comments = config_comments("survival", c);
    comments.push_back("initial state: k_c=" + format_double(init.wavenumber) +
                       (s.kc ? std::string() : " (box mode q=" + std::to_string(s.q.value_or(1)) + ")"));
    comments.push_back("grid: " + s.spacing + " tmin=" + format_double(tmin) + " tmax=" + format_double(tmax) +
                       " samples=" + std::to_string(s.samples));
    if (s.oracle) comments.push_back("S_oracle is blank (nan) below the oracle's t_min = 0.05");
    std::ostringstream os;
    const auto* orc = s.oracle ? &oracle_values : nullptr;
    if (c.format == "json")
        io::write_series_json(os, series, "expansion", comments, orc);
    else
        io::write_series_csv(os, series, "expansion", comments, orc);
    emit(os.str(), c, out);
    return kOk;
}

int cmd_scan(const Common& c, const ScanArgs& s, std::ostream& out) {
    const auto [lo, hi] = parse_range(s.range);
    if (!(c.a > 0.0)) throw DomainError("radius must be positive");
    const auto sing = find_singularity(s.family, lo, hi, c.a, {s.steps, s.downward});
    auto comments = config_comments("scan", c);
    comments.push_back("family=" + std::to_string(s.family) + " range=" + s.range + " steps=" + std::to_string(s.steps));
    if (!s.trajectory.empty()) {
        const double start = s.downward ? hi : lo, stop = s.downward ? lo : hi;
        const auto set = find_poles(DeltaShellPotential::make(start, c.a), std::max(1, s.family), std::max(1, -s.family));
        const Pole p0 = s.family > 0 ? set.proper[s.family - 1] : set.improper[-s.family - 1];
        const auto traj = track_pole(DeltaShellPotential::make(start, c.a), p0, start, stop, s.steps);
        std::ofstream f(s.trajectory, std::ios::binary);
        if (!f) throw DomainError("cannot open trajectory file '" + s.trajectory + "'");
        io::write_trajectory_csv(f, traj, comments);
    }
    std::ostringstream os;
    io::write_singularity_json(os, sing, comments);
    emit(os.str(), c, out);
    return kOk;
}

int cmd_verify(const Common& c, bool no_oracle, std::ostream& out, std::ostream& err) {
    VerifyConfig cfg{c.b, c.a, c.n, !no_oracle};
    const auto checks = run_verification(cfg);
    nlohmann::json j;
    j["schema_version"] = io::kSchemaVersion;
    j["config"] = {{"intensity", c.b}, {"radius", c.a}, {"n", c.n}, {"oracle", !no_oracle}};
    j["checks"] = nlohmann::json::array();
    bool ok = true;
    for (const auto& r : checks) {
        j["checks"].push_back({{"name", r.name}, {"status", std::string(to_string(r.status))},
                               {"value", r.value}, {"threshold", r.threshold}, {"detail", r.detail}});
        if (r.status == CheckStatus::fail) ok = false;
        if (r.status == CheckStatus::inconclusive) err << "warning: " << r.name << ": " << r.detail << '\n';
        if (r.status == CheckStatus::fail) err << "FAIL " << r.name << ": " << r.value << " vs " << r.threshold << '\n';
    }
    j["all_passed"] = ok;
    emit(j.dump(2) + "\n", c, out);
    return ok ? kOk : kNumericalFailure;
}

}  // namespace

TimeArg parse_time(const std::string& text) {
    std::string num = text;
    TimeArg t;
    if (num.size() > 3 && num.compare(num.size() - 3, 3, "tau") == 0) {
        t.in_tau = true;
        num.resize(num.size() - 3);
    }
    std::size_t used = 0;
    try {
        t.value = std::stod(num, &used);
    } catch (const std::exception&) {
        throw DomainError("malformed time '" + text + "'");
    }
    if (used != num.size() || !(t.value > 0.0) || !std::isfinite(t.value))
        throw DomainError("time must be a positive number, optionally suffixed with 'tau': '" + text + "'");
    return t;
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw DomainError("range must look like lo:hi");
    double lo = 0, hi = 0;
    try {
        std::size_t u1 = 0, u2 = 0;
        const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
        lo = std::stod(a, &u1);
        hi = std::stod(b, &u2);
        if (u1 != a.size() || u2 != b.size()) throw DomainError("");
    } catch (const std::exception&) {
        throw DomainError("malformed range '" + text + "'");
    }
    if (!(lo > 0.0)) throw DomainError("intensity must be positive");
    if (!(lo < hi)) throw DomainError("range must satisfy lo < hi: '" + text + "'");
    return {lo, hi};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Resonant-state expansion of decay from an absorptive delta-shell potential"};
    app.require_subcommand(1);

    Common poles_c, surv_c, scan_c, verify_c;
    int n_improper = -1;
    bool with_states = false;
    auto* poles = app.add_subcommand("poles", "proper and improper poles of the S-matrix");
    add_common(poles, poles_c, 10);
    poles->add_option("--n-improper", n_improper, "improper poles (default: same as --n)");
    poles->add_flag("--states", with_states, "add the resonant-state amplitudes A_p");

    SurvivalArgs sa;
    auto* surv = app.add_subcommand("survival", "survival amplitude and probability on a time grid");
    add_common(surv, surv_c, 40);
    auto* qopt = surv->add_option("--q", sa.q, "box mode number of the initial state (default 1)");
    auto* kopt = surv->add_option("--kc", sa.kc, "wavenumber of the sine initial state");
    qopt->excludes(kopt);
    surv->add_option("--tmax", sa.tmax, "end of the grid, absolute or with 'tau' suffix")->capture_default_str();
    surv->add_option("--tmin", sa.tmin, "start of the grid (default tmax/samples, or 1e-3 tmax for log)");
    surv->add_option("--samples", sa.samples, "grid points")->capture_default_str();
    surv->add_option("--spacing", sa.spacing, "linear or log")->check(CLI::IsMember({"linear", "log"}))->capture_default_str();
    surv->add_flag("--oracle", sa.oracle, "add S from the expansion-free oracle");

    ScanArgs sc;
    auto* scan = app.add_subcommand("scan", "intensity at which a pole reaches the real axis");
    add_common(scan, scan_c, 40);
    scan->add_option("--family", sc.family, "pole index (negative: improper)")->capture_default_str();
    scan->add_option("--b-range", sc.range, "intensity bracket lo:hi")->capture_default_str();
    scan->add_option("--steps", sc.steps, "continuation steps")->capture_default_str();
    scan->add_flag("--downward", sc.downward, "continue from hi towards lo");
    scan->add_option("--trajectory", sc.trajectory, "also write the pole trajectory CSV here");

    bool no_oracle = false;
    auto* verify = app.add_subcommand("verify", "run the invariant checks and report pass/fail as JSON");
    add_common(verify, verify_c, 40);
    verify->add_flag("--no-oracle", no_oracle, "skip the oracle comparison");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    try {
        if (poles->parsed()) return cmd_poles(poles_c, n_improper < 0 ? poles_c.n : n_improper, with_states, out);
        if (surv->parsed()) return cmd_survival(surv_c, sa, out);
        if (scan->parsed()) return cmd_scan(scan_c, sc, out);
        if (verify->parsed()) return cmd_verify(verify_c, no_oracle, out, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const NoResultError& e) {
        err << "error: " << e.what() << '\n';
        return kNoResult;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kInvalidInput;
}

}  // namespace shelldecay::cli
