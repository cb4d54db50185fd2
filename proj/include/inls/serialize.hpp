// Config-file parsing and CSV/JSON artifact emission.
//
// Config format: INI-style sections with key = value lines; '#' comments.
// Sections and keys mirror SimulationConfig (model, potential, grid, time,
// initial, detection). CSV output uses %.17g so repeated runs are
// byte-identical.
#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "inls/classifier.hpp"
#include "inls/evolution.hpp"

namespace inls {

inline constexpr int schema_version = 1;

inline std::string fmt(real x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// ---- config files ----------------------------------------------------------

using ConfigMap = std::map<std::string, std::map<std::string, std::string>>;

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline ConfigMap parse_config(std::istream& in) {
    ConfigMap cfg;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        cfg[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return cfg;
}

inline ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return parse_config(in);
}

namespace detail {
inline std::vector<real> parse_real_list(const std::string& s) {
    std::vector<real> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}
} // namespace detail

inline SimulationConfig config_from_map(const ConfigMap& cfg) {
    SimulationConfig sim;
    auto get = [&](const std::string& sec, const std::string& key) -> const std::string* {
        auto si = cfg.find(sec);
        if (si == cfg.end()) return nullptr;
        auto ki = si->second.find(key);
        return ki == si->second.end() ? nullptr : &ki->second;
    };
    auto getd = [&](const char* sec, const char* key, real& dst) {
        if (const auto* v = get(sec, key)) dst = std::stod(*v);
    };
    auto getz = [&](const char* sec, const char* key, std::size_t& dst) {
        if (const auto* v = get(sec, key)) dst = static_cast<std::size_t>(std::stoull(*v));
    };
    getd("model", "alpha", sim.params.alpha);
    getd("model", "b", sim.params.b);
    if (const auto* v = get("model", "sign")) {
        if (*v == "focusing")
            sim.params.kappa = -1;
        else if (*v == "defocusing")
            sim.params.kappa = +1;
        else
            throw std::invalid_argument("config: model.sign must be focusing or defocusing");
    }
    getd("model", "nl_amplitude", sim.nl_amplitude);
    if (const auto* v = get("potential", "name")) sim.potential_name = *v;
    getd("potential", "amplitude", sim.potential_amplitude);
    getd("grid", "r_max", sim.r_max);
    getz("grid", "n", sim.n);
    getd("time", "dt", sim.dt);
    getd("time", "t_end", sim.t_end);
    getz("time", "record_stride", sim.record_stride);
    getz("time", "snapshot_stride", sim.snapshot_stride);
    if (const auto* v = get("initial", "kind")) sim.initial.kind = *v;
    getd("initial", "amplitude", sim.initial.amplitude);
    getd("initial", "width", sim.initial.width);
    getd("initial", "chirp", sim.initial.chirp);
    getd("initial", "c", sim.initial.c);
    getd("detection", "grad_blowup_factor", sim.detection.grad_blowup_factor);
    getd("detection", "dt_floor", sim.detection.dt_floor);
    getd("detection", "decay_factor", sim.detection.decay_factor);
    getd("detection", "decay_window", sim.detection.decay_window);
    if (const auto* v = get("detection", "ball_radii"))
        sim.ball_radii = detail::parse_real_list(*v);
    getd("detection", "virial_R", sim.virial_R);
    return sim;
}

// ---- CSV -------------------------------------------------------------------

inline std::string records_csv_header(const std::vector<real>& ball_radii) {
    std::string h =
        "t,mass,energy,grad_sq,lambda_sq,pot_nl,pot_V,K,H,variance,virial_action,virial_rhs,"
        "rad_sup,lp_norm_a,lp_norm_b,l4_norm4,mora_classical";
    for (real R : ball_radii) h += ",ball_mass_r" + fmt(R);
    for (real R : ball_radii) h += ",ball_pot_nl_r" + fmt(R);
    return h;
}

inline std::string to_csv_row(const FunctionalRecord& r) {
    std::string s = fmt(r.t);
    for (real x : {r.mass, r.energy, r.grad_sq, r.lambda_sq, r.pot_nl, r.pot_V, r.K, r.H,
                   r.variance, r.virial_action, r.virial_rhs, r.rad_sup, r.lp_norm_a, r.lp_norm_b,
                   r.l4_norm4, r.mora_classical})
        s += "," + fmt(x);
    for (real x : r.ball_mass) s += "," + fmt(x);
    for (real x : r.ball_pot_nl) s += "," + fmt(x);
    return s;
}

inline void write_records_csv(std::ostream& out, const TimeSeries& ts) {
    out << records_csv_header(ts.ball_radii) << "\n";
    for (const auto& r : ts.records) out << to_csv_row(r) << "\n";
}

inline void write_profile_csv(std::ostream& out, const RadialField& u) {
    out << "r,re,im\n";
    const auto& g = u.grid();
    for (std::size_t j = 0; j < u.size(); ++j)
        out << fmt(g.node(j)) << "," << fmt(u[j].real()) << "," << fmt(u[j].imag()) << "\n";
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "c,prediction,simulated,consistent\n";
    for (const auto& row : rows)
        out << fmt(row.c) << "," << to_string(row.prediction) << "," << row.simulated << ","
            << (row.consistent ? "true" : "false") << "\n";
}

// ---- JSON ------------------------------------------------------------------

inline nlohmann::json to_json(const PotentialCertificate& c) {
    return {{"schema_version", schema_version},
            {"kato_norm_neg", c.kato_norm_neg},
            {"kato_norm_abs", c.kato_norm_abs},
            {"l32_norm", c.l32_norm},
            {"l32_norm_rV", c.l32_norm_rV},
            {"flags",
             {{"nonnegative", c.nonnegative},
              {"radial_deriv_nonpos", c.radial_deriv_nonpos},
              {"virial_sign_2V_plus_rVp", c.virial_sign},
              {"rV_in_L32", c.rV_in_L32},
              {"kato_below_4pi", c.kato_below_4pi},
              {"truncation_ok", c.truncation_ok}}}};
}

inline nlohmann::json to_json(const GroundState& gs) {
    return {{"schema_version", schema_version},
            {"alpha", gs.alpha},
            {"b", gs.b},
            {"q0", gs.q0},
            {"mass", gs.mass},
            {"grad_sq", gs.grad_sq},
            {"pot_int", gs.pot_int},
            {"c_opt", gs.c_opt},
            {"threshold_grad", gs.threshold_grad},
            {"threshold_energy", gs.threshold_energy},
            {"pohozaev_res", {gs.pohozaev_res[0], gs.pohozaev_res[1]}},
            {"far_field_slope", gs.far_field_slope}};
}

inline nlohmann::json to_json(const OutcomeReport& r) {
    return {{"schema_version", schema_version},
            {"mass", r.mass},
            {"energy", r.energy},
            {"grad_prod", r.grad_prod},
            {"lambda_prod", r.lambda_prod},
            {"energy_prod", r.energy_prod},
            {"threshold_grad", r.threshold_grad},
            {"threshold_energy", r.threshold_energy},
            {"conditions",
             {{"cond_ener", r.cond_ener},
              {"cond_grad_glob", r.cond_grad_glob},
              {"cond_grad_glob_refi", r.cond_grad_glob_refi},
              {"cond_grad_blow", r.cond_grad_blow},
              {"alpha_intercritical", r.alpha_intercritical},
              {"alpha_scattering_range", r.alpha_scattering_range},
              {"potential_scattering_ok", r.potential_scattering_ok},
              {"potential_blowup_ok", r.potential_blowup_ok}}},
            {"potential_certificate", to_json(r.potential_cert)},
            {"prediction", to_string(r.prediction)}};
}

inline nlohmann::json events_json(const TimeSeries& ts) {
    nlohmann::json evs = nlohmann::json::array();
    for (const auto& e : ts.events)
        evs.push_back({{"t", e.t}, {"kind", to_string(e.kind)}, {"detail", e.detail}});
    return {{"schema_version", schema_version}, {"events", evs}};
}

} // namespace inls
