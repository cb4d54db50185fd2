// Command-line front end: exponent tables, potential certification,
// ground-state computation, simulation, classification, threshold sweeps,
// and the built-in invariant check suite.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "inls/inls.hpp"

namespace fs = std::filesystem;
using namespace inls;

namespace {

fs::path output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("INLS_OUT")) return env;
    return ".";
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    if (!out) throw std::invalid_argument("cannot write " + p.string());
    out << content;
}

int cmd_exponents(real alpha, real b) {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["alpha"] = alpha;
    j["b"] = b;
    j["gamma_c"] = gamma_c(alpha, b);
    const auto re = range_exponents(b);
    j["two_star"] = re.two_star;
    j["two_lower_star"] = re.two_lower_star;
    j["intercritical"] = intercritical(alpha, b);
    try {
        j["sigma_c"] = sigma_c(alpha, b);
        const auto rp = remark_pairs(1e-3, alpha, b);
        j["remark_pairs"] = {{"theta", 1e-3},       {"q", rp.q},
                             {"r", rp.r},           {"k", rp.k},
                             {"m", rp.m},           {"qr_in_S0", rp.qr_in_S0},
                             {"kr_in_S_gamma_c", rp.kr_in_S_gamma_c},
                             {"mr_in_S_minus_gamma_c", rp.mr_in_S_minus},
                             {"r_in_[2,3)", rp.r_in_23}};
    } catch (const out_of_range_error& e) {
        j["sigma_c"] = nullptr;
        j["note"] = e.what();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_check_potential(const std::string& name, real amp, real r_max, std::size_t n) {
    auto grid = build_grid(r_max, n);
    const auto V = builtin(name, amp);
    const auto cert = certify(V, *grid);
    std::cout << to_json(cert).dump(2) << "\n";
    return 0;
}

int cmd_ground_state(real alpha, real b, real r_max, std::size_t n, real tol,
                     const std::string& out) {
    ModelParams params{alpha, b, -1};
    auto grid = build_grid(r_max, n);
    auto gs = solve_ground_state(params, grid, tol);
    auto [ratio, closed] = c_opt_two_ways(gs, params);
    auto j = to_json(gs);
    j["c_opt_closed_form"] = closed;
    j["c_opt_rel_dev"] = std::abs(ratio - closed) / closed;
    const auto dir = output_dir(out);
    fs::create_directories(dir);
    std::ostringstream csv;
    csv << "r,Q\n";
    for (std::size_t k = 0; k < gs.profile.size(); ++k)
        csv << fmt(gs.profile.grid().node(k)) << "," << fmt(gs.profile[k].real()) << "\n";
    write_file(dir / "ground_state_profile.csv", csv.str());
    write_file(dir / "ground_state.json", j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return 0;
}

void emit_plots(const fs::path& dir, const TimeSeries& ts, const std::string& plot_cols) {
    if (plot_cols.empty()) return;
    std::map<std::string, std::function<real(const FunctionalRecord&)>> cols = {
        {"mass", [](const auto& r) { return r.mass; }},
        {"energy", [](const auto& r) { return r.energy; }},
        {"grad", [](const auto& r) { return std::sqrt(std::max(r.grad_sq, 0.0)); }},
        {"pot_nl", [](const auto& r) { return r.pot_nl; }},
        {"variance", [](const auto& r) { return r.variance; }},
        {"rad_sup", [](const auto& r) { return r.rad_sup; }},
        {"K", [](const auto& r) { return r.K; }},
        {"H", [](const auto& r) { return r.H; }},
    };
    std::stringstream ss(plot_cols);
    std::string col;
    std::vector<PlotSeries> series;
    while (std::getline(ss, col, ',')) {
        auto it = cols.find(trim(col));
        if (it == cols.end()) throw std::invalid_argument("unknown plot column: " + col);
        PlotSeries s{it->first, {}, {}};
        for (const auto& r : ts.records) {
            s.x.push_back(r.t);
            s.y.push_back(it->second(r));
        }
        series.push_back(std::move(s));
    }
    write_file(dir / "plot.svg", svg_line_plot(series, "diagnostics vs t"));
}

int cmd_simulate(const std::string& config_path, const std::string& out, bool snapshots,
                 const std::string& plot_cols) {
    auto sim = config_from_map(parse_config_file(config_path));
    auto ts = run(sim);
    const auto dir = output_dir(out);
    fs::create_directories(dir);
    std::ostringstream csv;
    write_records_csv(csv, ts);
    write_file(dir / "records.csv", csv.str());
    write_file(dir / "events.json", events_json(ts).dump(2) + "\n");
    if (snapshots) {
        fs::create_directories(dir / "snapshots");
        for (const auto& [t, u] : ts.snapshots) {
            std::ostringstream s;
            write_profile_csv(s, u);
            write_file(dir / "snapshots" / ("u_t" + fmt(t) + ".csv"), s.str());
        }
    }
    emit_plots(dir, ts, plot_cols);
    for (const auto& e : ts.events)
        std::cout << "event t=" << fmt(e.t) << " " << to_string(e.kind)
                  << (e.detail.empty() ? "" : " (" + e.detail + ")") << "\n";
    return 0;
}

int cmd_classify(const std::string& config_path, const std::string& out) {
    auto sim = config_from_map(parse_config_file(config_path));
    auto grid = build_grid(sim.r_max, sim.n);
    const auto V = builtin(sim.potential_name, sim.potential_amplitude);
    auto gs = solve_ground_state(sim.params, grid);
    auto u0 = make_initial(sim.initial, sim.params, grid);
    auto rep = evaluate(u0, V, sim.params, gs);
    const auto dir = output_dir(out);
    fs::create_directories(dir);
    write_file(dir / "classification.json", to_json(rep).dump(2) + "\n");
    std::cout << to_json(rep).dump(2) << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& c_list, const std::string& out,
              unsigned parallelism) {
    auto sim = config_from_map(parse_config_file(config_path));
    std::vector<real> cs = detail::parse_real_list(c_list);
    if (cs.empty()) throw std::invalid_argument("sweep: empty c list");
    auto grid = build_grid(sim.r_max, sim.n);
    const auto V = builtin(sim.potential_name, sim.potential_amplitude);
    auto gs = solve_ground_state(sim.params, grid);

    std::vector<SweepRow> rows(cs.size());
    std::vector<std::future<SweepRow>> futs;
    unsigned inflight = std::max(1u, parallelism);
    for (std::size_t i = 0; i < cs.size(); i += inflight) {
        futs.clear();
        for (std::size_t k = i; k < std::min(cs.size(), i + inflight); ++k) {
            futs.push_back(std::async(std::launch::async, [&, k] {
                return dichotomy_sweep({cs[k]}, gs, V, sim.params, sim).front();
            }));
        }
        for (std::size_t k = 0; k < futs.size(); ++k) rows[i + k] = futs[k].get();
    }
    const auto dir = output_dir(out);
    fs::create_directories(dir);
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    write_file(dir / "sweep.csv", csv.str());
    std::cout << csv.str();
    return 0;
}

struct CheckLine {
    std::string name;
    bool pass;
    std::string detail;
};

// Compact invariant suite: Pohozaev and sharp-constant consistency,
// conservation on a short defocusing run, the virial identity on the linear
// Gaussian, the Gagliardo-Nirenberg inequality, and the cutoff bounds.
int cmd_verify() {
    std::vector<CheckLine> lines;
    auto push = [&](const std::string& name, bool ok, const std::string& detail) {
        lines.push_back({name, ok, detail});
    };

    {
        ModelParams p{2.0, 0.5, -1};
        auto grid = build_grid(20.0, 2048);
        auto gs = solve_ground_state(p, grid);
        auto [ratio, closed] = c_opt_two_ways(gs, p);
        const real dc = std::abs(ratio - closed) / closed;
        push("pohozaev(alpha=2,b=0.5)",
             gs.pohozaev_res[0] < 1e-5 && gs.pohozaev_res[1] < 1e-5,
             "res=" + fmt(gs.pohozaev_res[0]) + "," + fmt(gs.pohozaev_res[1]));
        push("c_opt two ways", dc < 1e-5, "rel_dev=" + fmt(dc));

        const auto V0 = builtin("zero");
        auto rec = record(gs.profile, V0, p, 0.0, {});
        push("H(Q)=0, K(Q)=0",
             std::abs(rec.H) / gs.grad_sq < 1e-5 && std::abs(rec.K) / gs.grad_sq < 1e-5,
             "H/grad=" + fmt(rec.H / gs.grad_sq));

        // Gagliardo-Nirenberg on a few fields, equality at Q.
        bool gn_ok = true;
        for (real wdt : {0.5, 1.0, 2.0}) {
            auto f = RadialField::sample(grid, [wdt](real r) {
                return std::exp(-r * r / (2.0 * wdt * wdt));
            });
            const real lhs = pot_nl_integral(f, p.alpha, p.b);
            const real rhs = gs.c_opt * std::pow(mass(f), (4 - 2 * p.b - p.alpha) / 4.0) *
                             std::pow(gradient_norm_sq(f), (3 * p.alpha + 2 * p.b) / 4.0);
            gn_ok = gn_ok && lhs <= rhs * (1.0 + 1e-4);
        }
        push("gagliardo-nirenberg", gn_ok, "sharp constant from Q");
    }
    {
        SimulationConfig sim;
        sim.params = {2.0, 0.5, +1};
        sim.n = 1024;
        sim.r_max = 20.0;
        sim.dt = 1e-3;
        sim.t_end = 1.0;
        auto ts = run(sim);
        const auto& a = ts.records.front();
        const auto& z = ts.records.back();
        const real md = std::abs(z.mass - a.mass) / a.mass;
        const real ed = std::abs(z.energy - a.energy) / std::abs(a.energy);
        push("mass conservation", md < 1e-8, "drift=" + fmt(md));
        push("energy conservation", ed < 1e-6, "drift=" + fmt(ed));
    }
    {
        SimulationConfig sim;
        sim.params = {2.0, 0.5, -1};
        sim.nl_amplitude = 0.0;
        sim.n = 1024;
        sim.r_max = 40.0;
        sim.dt = 1e-2;
        sim.t_end = 2.0;
        sim.record_stride = 10;
        auto ts = run(sim);
        auto rep = virial_verify(ts, 0.0, 2.0);
        push("virial identity (linear gaussian)", rep.max_dev_variance < 1e-3,
             "max_dev=" + fmt(rep.max_dev_variance));
    }
    {
        auto grid = build_grid(20.0, 2048);
        bool ok = true;
        for (real R : {1.0, 5.0, 20.0}) {
            auto phi = build_cutoff(CutoffKind::phi_R, R, grid);
            auto chi = build_cutoff(CutoffKind::chi_R, R, grid);
            for (std::size_t j = 0; j < grid->n(); ++j) {
                const real r = grid->node(j);
                ok = ok && phi.d2[j] >= -1e-9 && phi.d2[j] <= 2.0 + 1e-9;
                ok = ok && phi.d1[j] / r <= 2.0 + 1e-9;
                ok = ok && phi.laplacian[j] <= 6.0 + 1e-9;
                if (r <= R) ok = ok && std::abs(phi.value[j] - r * r) <= 1e-9 * R * R;
                ok = ok && chi.value[j] >= -1e-9 && chi.value[j] <= 1.0 + 1e-9;
            }
        }
        push("cutoff bounds", ok, "phi_R, chi_R pointwise");
    }

    bool all = true;
    for (const auto& l : lines) {
        all = all && l.pass;
        std::cout << (l.pass ? "PASS" : "FAIL") << "  " << l.name << "  [" << l.detail << "]\n";
    }
    std::cout << (all ? "verify: all checks passed\n" : "verify: FAILURES present\n");
    return all ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial numerical laboratory for the 3D inhomogeneous NLS with potential"};
    app.require_subcommand(1);

    real alpha = 2.0, b = 0.5, amp = 1.0, r_max = 20.0, tol = 1e-12;
    std::size_t n = 2048;
    std::string name = "zero", config, out, c_list = "0.8,0.9,1.1,1.2", plot_cols;
    bool snapshots = false;
    unsigned parallelism = 2;

    auto* exp_cmd = app.add_subcommand("exponents", "critical exponents and pair checks");
    exp_cmd->add_option("--alpha", alpha)->required();
    exp_cmd->add_option("--b", b)->required();

    auto* pot_cmd = app.add_subcommand("check-potential", "certify a named potential");
    pot_cmd->add_option("--name", name)->required();
    pot_cmd->add_option("--amp", amp);
    pot_cmd->add_option("--rmax", r_max);
    pot_cmd->add_option("--n", n);

    auto* gs_cmd = app.add_subcommand("ground-state", "solve for Q and its constants");
    gs_cmd->add_option("--alpha", alpha)->required();
    gs_cmd->add_option("--b", b)->required();
    gs_cmd->add_option("--rmax", r_max);
    gs_cmd->add_option("--n", n);
    gs_cmd->add_option("--tol", tol);
    gs_cmd->add_option("--out", out);

    auto* sim_cmd = app.add_subcommand("simulate", "run one configured evolution");
    sim_cmd->add_option("--config", config)->required()->check(CLI::ExistingFile);
    sim_cmd->add_option("--out", out);
    sim_cmd->add_flag("--snapshots", snapshots);
    sim_cmd->add_option("--plot", plot_cols, "comma list: mass,energy,grad,pot_nl,variance,...");

    auto* cls_cmd = app.add_subcommand("classify", "evaluate theorem hypotheses for u0");
    cls_cmd->add_option("--config", config)->required()->check(CLI::ExistingFile);
    cls_cmd->add_option("--out", out);

    auto* swp_cmd = app.add_subcommand("sweep", "dichotomy sweep over c*Q");
    swp_cmd->add_option("--config", config)->required()->check(CLI::ExistingFile);
    swp_cmd->add_option("--c", c_list, "comma list of multipliers");
    swp_cmd->add_option("--out", out);
    swp_cmd->add_option("--parallelism", parallelism);

    app.add_subcommand("verify", "run the built-in invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (exp_cmd->parsed()) return cmd_exponents(alpha, b);
        if (pot_cmd->parsed()) return cmd_check_potential(name, amp, r_max, n);
        if (gs_cmd->parsed()) return cmd_ground_state(alpha, b, r_max, n, tol, out);
        if (sim_cmd->parsed()) return cmd_simulate(config, out, snapshots, plot_cols);
        if (cls_cmd->parsed()) return cmd_classify(config, out);
        if (swp_cmd->parsed()) return cmd_sweep(config, c_list, out, parallelism);
        return cmd_verify();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const out_of_range_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    }
}
