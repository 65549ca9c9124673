#include "shelldecay/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "shelldecay/errors.hpp"

namespace shelldecay::io {

namespace {

using nlohmann::json;

const char* kSignNote =
    "im_k is the imaginary part of k; with k = alpha - i beta, beta = -im_k (positive for proper poles)";

void write_comments(std::ostream& os, const Comments& comments) {
    for (const auto& c : comments) os << "# " << c << '\n';
}

double parse_double(const std::string& s) {
    if (s == "nan") return std::nan("");
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) throw DomainError("malformed number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    return out;
}

json pole_json(const Pole& p, const ResonantBasis* basis) {
    json j{{"index", p.index}, {"re_k", p.k.real()}, {"im_k", p.k.imag()},
           {"resonance_position", p.resonance_position}, {"width", p.width}};
    if (basis) {
        const auto& fam = p.index > 0 ? basis->proper : basis->improper;
        const cplx amp = fam[std::abs(p.index) - 1].amplitude;
        j["re_A"] = amp.real();
        j["im_A"] = amp.imag();
    }
    return j;
}

json nullable(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_poles_csv(std::ostream& os, const PoleSet& poles, const Comments& comments, const ResonantBasis* basis) {
    write_comments(os, comments);
    os << "# intensity=" << format_double(poles.potential.intensity)
       << " radius=" << format_double(poles.potential.radius) << '\n';
    os << "# " << kSignNote << '\n';
    os << "index,re_k,im_k,resonance_position,width" << (basis ? ",re_A,im_A" : "") << '\n';
    auto row = [&](const Pole& p) {
        os << p.index << ',' << format_double(p.k.real()) << ',' << format_double(p.k.imag()) << ','
           << format_double(p.resonance_position) << ',' << format_double(p.width);
        if (basis) {
            const auto& fam = p.index > 0 ? basis->proper : basis->improper;
            const cplx amp = fam[std::abs(p.index) - 1].amplitude;
            os << ',' << format_double(amp.real()) << ',' << format_double(amp.imag());
        }
        os << '\n';
    };
    for (const auto& p : poles.improper) row(p);
    for (const auto& p : poles.proper) row(p);
}

PoleSet read_poles_csv(std::istream& is) {
    PoleSet set;
    bool have_potential = false, have_header = false;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto b = line.find("intensity="), a = line.find(" radius=");
            if (b != std::string::npos && a != std::string::npos) {
                set.potential.intensity = parse_double(line.substr(b + 10, a - b - 10));
                set.potential.radius = parse_double(line.substr(a + 8));
                have_potential = true;
            }
            continue;
        }
        if (!have_header) {
            if (line.rfind("index,re_k,im_k", 0) != 0) throw DomainError("pole CSV header not recognised");
            have_header = true;
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() < 5) throw DomainError("pole CSV row has too few columns");
        const int index = std::stoi(cells[0]);
        Pole p = make_pole(index, {parse_double(cells[1]), parse_double(cells[2])});
        (index > 0 ? set.proper : set.improper).push_back(p);
    }
    if (!have_potential || !have_header) throw DomainError("pole CSV lacks potential or header line");
    return set;
}

void write_poles_json(std::ostream& os, const PoleSet& poles, const Comments& comments, const ResonantBasis* basis) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["comments"] = comments;
    j["sign_convention"] = kSignNote;
    j["potential"] = {{"intensity", poles.potential.intensity}, {"radius", poles.potential.radius}};
    j["proper"] = json::array();
    j["improper"] = json::array();
    for (const auto& p : poles.proper) j["proper"].push_back(pole_json(p, basis));
    for (const auto& p : poles.improper) j["improper"].push_back(pole_json(p, basis));
    os << j.dump(2) << '\n';
}

PoleSet read_poles_json(std::istream& is) {
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw DomainError(std::string("pole JSON does not parse: ") + e.what());
    }
    if (j.value("schema_version", 0) != kSchemaVersion) throw DomainError("unsupported pole JSON schema_version");
    PoleSet set;
    set.potential.intensity = j.at("potential").at("intensity").get<double>();
    set.potential.radius = j.at("potential").at("radius").get<double>();
    for (const auto* key : {"proper", "improper"}) {
        for (const auto& e : j.at(key)) {
            Pole p = make_pole(e.at("index").get<int>(), {e.at("re_k").get<double>(), e.at("im_k").get<double>()});
            (p.index > 0 ? set.proper : set.improper).push_back(p);
        }
    }
    return set;
}

void write_series_csv(std::ostream& os, const SurvivalSeries& series, const std::string& source,
                      const Comments& comments, const std::vector<double>* oracle) {
    write_comments(os, comments);
    os << "# source=" << source << (oracle ? "+oracle" : "") << " tau=" << format_double(series.tau)
       << " truncation=" << series.truncation << '\n';
    os << "t,t_over_tau,re_A,im_A,S,S_exp_only,S_tail_only" << (oracle ? ",S_oracle" : "") << '\n';
    for (std::size_t i = 0; i < series.samples.size(); ++i) {
        const auto& s = series.samples[i];
        os << format_double(s.t) << ',' << format_double(s.t_over_tau) << ','
           << format_double(s.amplitude.total.real()) << ',' << format_double(s.amplitude.total.imag()) << ','
           << format_double(s.probability) << ',' << format_double(s.exp_only) << ','
           << format_double(s.tail_only);
        if (oracle) os << ',' << format_double((*oracle)[i]);
        os << '\n';
    }
}

void write_series_json(std::ostream& os, const SurvivalSeries& series, const std::string& source,
                       const Comments& comments, const std::vector<double>* oracle) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["source"] = source;
    j["comments"] = comments;
    j["tau"] = series.tau;
    j["truncation"] = series.truncation;
    json cols = {{"t", json::array()},          {"t_over_tau", json::array()}, {"re_A", json::array()},
                 {"im_A", json::array()},       {"S", json::array()},          {"S_exp_only", json::array()},
                 {"S_tail_only", json::array()}};
    for (const auto& s : series.samples) {
        cols["t"].push_back(s.t);
        cols["t_over_tau"].push_back(s.t_over_tau);
        cols["re_A"].push_back(s.amplitude.total.real());
        cols["im_A"].push_back(s.amplitude.total.imag());
        cols["S"].push_back(s.probability);
        cols["S_exp_only"].push_back(s.exp_only);
        cols["S_tail_only"].push_back(s.tail_only);
    }
    if (oracle) {
        cols["S_oracle"] = json::array();
        for (double v : *oracle) cols["S_oracle"].push_back(nullable(v));
    }
    j["columns"] = {"t", "t_over_tau", "re_A", "im_A", "S", "S_exp_only", "S_tail_only"};
    if (oracle) j["columns"].push_back("S_oracle");
    j["data"] = cols;
    os << j.dump(2) << '\n';
}

void write_trajectory_csv(std::ostream& os, const PoleTrajectory& traj, const Comments& comments) {
    write_comments(os, comments);
    os << "# radius=" << format_double(traj.radius) << '\n';
    os << "b,re_k,im_k,family\n";
    for (const auto& s : traj.samples)
        os << format_double(s.b) << ',' << format_double(s.k.real()) << ',' << format_double(s.k.imag()) << ','
           << traj.family << '\n';
}

void write_singularity_json(std::ostream& os, const Singularity& s, const Comments& comments) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["comments"] = comments;
    j["family"] = s.family;
    j["b_star"] = s.b_star;
    j["k_star"] = {{"re", s.k_star.real()}, {"im", s.k_star.imag()}};
    j["residuals"] = {{"pole_equation", s.residual}, {"jost", s.jost}};
    os << j.dump(2) << '\n';
}

}  // namespace shelldecay::io
