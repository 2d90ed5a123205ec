#include "trapstack/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "trapstack/atomic.hpp"
#include "trapstack/config.hpp"
#include "trapstack/cooling.hpp"
#include "trapstack/exchange.hpp"
#include "trapstack/fieldsolver.hpp"
#include "trapstack/modes.hpp"
#include "trapstack/numerics.hpp"
#include "trapstack/photonics.hpp"
#include "trapstack/protocol.hpp"
#include "trapstack/welldesign.hpp"

namespace trapstack {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct RunContext {
    std::string config_path; // empty: built-in defaults
    std::string outdir = ".";
    std::uint64_t seed = 0;
    Config cfg;
    std::vector<std::string> argv;

    fs::path out(const std::string& name) const { return fs::path(outdir) / name; }

    void load(const std::string& subcommand) {
        cfg = config_path.empty() ? default_config() : load_config(config_path);
        fs::create_directories(outdir);
        // manifest carries everything needed to re-run; timestamp lives only
        // here so primary outputs stay byte-stable
        json manifest;
        manifest["tool"] = kToolName;
        manifest["version"] = kToolVersion;
        manifest["subcommand"] = subcommand;
        manifest["config"] = config_path;
        manifest["seed"] = seed;
        manifest["output_dir"] = outdir;
        manifest["args"] = argv;
        manifest["timestamp"] = utc_now();
        write_json(out("manifest.json"), manifest);
    }
};

void add_common(CLI::App* sub, RunContext& ctx) {
    sub->add_option("--config", ctx.config_path, "config file (defaults built in)");
    sub->add_option("--outdir", ctx.outdir, "output directory");
    sub->add_option("--seed", ctx.seed, "master RNG seed");
}

// ---- solve-potential ------------------------------------------------------

int run_solve_potential(RunContext& ctx, const std::vector<double>& voltages_opt) {
    const auto& g = ctx.cfg.geometry;
    std::vector<double> voltages = voltages_opt;
    if (voltages.empty()) {
        voltages.assign(static_cast<size_t>(g.num_electrodes), 0.0);
        voltages[voltages.size() / 2] = -1.5;
    }
    if (static_cast<int>(voltages.size()) != g.num_electrodes)
        throw ConfigError("expected " + std::to_string(g.num_electrodes) + " voltages, got " +
                          std::to_string(voltages.size()));

    const auto stack = ElectrodeStack::uniform(g, voltages);
    const auto sol = solve_potential(stack, g.modes);

    const int npts = 2001;
    std::vector<double> zs(npts);
    const double half = 0.5 * stack.domain_length;
    for (int i = 0; i < npts; ++i) zs[i] = -half + (2.0 * half * i) / (npts - 1);
    const auto profile = axial_profile(sol, zs);

    std::ostringstream csv;
    csv << "z_m,phi_V\n";
    for (int i = 0; i < npts; ++i) csv << fmt(profile.z[i]) << "," << fmt(profile.phi[i]) << "\n";
    write_text(ctx.out("axial_potential.csv"), csv.str());

    json rep;
    rep["voltages_V"] = voltages;
    rep["inner_radius_m"] = stack.inner_radius;
    rep["domain_length_m"] = stack.domain_length;
    rep["modes"] = sol.coeff.size();
    rep["truncation_estimate_V"] = sol.truncation_estimate;
    rep["converged"] = sol.converged;
    rep["stationary_points"] = json::array();
    for (const auto& p : profile.points) {
        json jp;
        jp["z_m"] = p.z;
        jp["C0_V"] = p.C[0];
        jp["C1_V_per_m"] = p.C[1];
        jp["C2_V_per_m2"] = p.C[2];
        jp["C3_V_per_m3"] = p.C[3];
        jp["C4_V_per_m4"] = p.C[4];
        rep["stationary_points"].push_back(jp);
    }
    write_json(ctx.out("expansion_report.json"), rep);

    std::cout << "solve-potential: " << profile.points.size() << " stationary point(s), "
              << "truncation " << sol.truncation_estimate << " V\n";
    return 0;
}

// ---- design-well ----------------------------------------------------------

int run_design_well(RunContext& ctx) {
    const auto& cfg = ctx.cfg;
    if (cfg.wells.wells.empty()) throw ConfigError("no [well] targets in config");
    const auto sol = design_wells(cfg.geometry, cfg.wells, cfg);
    const auto rep = well_report(sol, cfg.geometry, cfg.wells, cfg);

    std::ostringstream csv;
    csv << "electrode_index,voltage_V\n";
    for (size_t i = 0; i < sol.voltages.size(); ++i)
        csv << i << "," << fmt(sol.voltages[i]) << "\n";
    write_text(ctx.out("design_voltages.csv"), csv.str());

    json j;
    j["voltages_V"] = sol.voltages;
    j["objective"] = sol.objective;
    j["wells"] = json::array();
    for (size_t i = 0; i < rep.positions.size(); ++i) {
        json w;
        w["target_position_m"] = cfg.wells.wells[i].position;
        w["species"] = cfg.wells.wells[i].species;
        w["target_omega_z_rad_s"] = cfg.wells.wells[i].omega_z;
        w["position_m"] = rep.positions[i];
        w["omega_z_rad_s"] = rep.omega_z[i];
        w["f_z_Hz"] = rep.omega_z[i] / (2.0 * M_PI);
        w["C2_V_per_m2"] = rep.C2[i];
        w["C3_V_per_m3"] = rep.C3[i];
        w["C4_V_per_m4"] = rep.C4[i];
        j["wells"].push_back(w);
    }
    j["separation_m"] = rep.separation;
    j["well_depth_V"] = rep.well_depth;
    write_json(ctx.out("design_report.json"), j);

    std::cout << "design-well: " << rep.positions.size() << " well(s)";
    if (rep.positions.size() == 2)
        std::cout << ", separation " << rep.separation * 1e6 << " um";
    std::cout << "\n";
    return 0;
}

// ---- modes ----------------------------------------------------------------

int run_modes(RunContext& ctx, const std::string& species_name, double f_z) {
    const auto& sp = ctx.cfg.lookup(species_name);
    const double omega_z = 2.0 * M_PI * f_z;
    const auto m = eigenfrequencies(sp, ctx.cfg.field.B0, omega_z);

    json j;
    j["species"] = sp.name;
    j["B0_T"] = ctx.cfg.field.B0;
    j["omega_plus_rad_s"] = m.omega_plus;
    j["omega_minus_rad_s"] = m.omega_minus;
    j["omega_z_rad_s"] = m.omega_z;
    j["omega_c_rad_s"] = m.omega_c;
    j["f_plus_Hz"] = m.omega_plus / (2.0 * M_PI);
    j["f_minus_Hz"] = m.omega_minus / (2.0 * M_PI);
    j["f_z_Hz"] = m.omega_z / (2.0 * M_PI);
    j["f_c_Hz"] = m.omega_c / (2.0 * M_PI);
    const double lhs = m.omega_c * m.omega_c;
    const double rhs = m.omega_plus * m.omega_plus + m.omega_minus * m.omega_minus +
                       m.omega_z * m.omega_z;
    j["invariance_residual"] = (lhs - rhs) / lhs;
    write_json(ctx.out("modes.json"), j);

    std::cout << "modes: f+ = " << m.omega_plus / (2.0 * M_PI) / 1e6
              << " MHz, f- = " << m.omega_minus / (2.0 * M_PI) / 1e3
              << " kHz, fz = " << f_z / 1e6 << " MHz\n";
    return 0;
}

// ---- exchange -------------------------------------------------------------

int run_exchange(RunContext& ctx, bool simulate, double duration, double dt) {
    const auto& ex = ctx.cfg.exchange;
    const auto& a = ctx.cfg.lookup(ex.species_a);
    const auto& b = ctx.cfg.lookup(ex.species_b);
    const auto pair =
        CoupledPair::make(a, b, ex.separation, ex.omega, ex.omega, ctx.cfg.constants);
    const auto r = exchange_rate(pair);

    json j;
    j["species_a"] = a.name;
    j["species_b"] = b.name;
    j["separation_m"] = ex.separation;
    j["omega_rad_s"] = ex.omega;
    j["kappa_N_per_m"] = r.kappa;
    j["delta_omega0_rad_s"] = r.delta_omega0;
    j["delta_f_Hz"] = r.delta_omega0 / (2.0 * M_PI);
    j["omega_ex_rad_s"] = r.omega_ex;
    j["contrast"] = r.contrast;
    j["strong_coupling_warning"] = r.strong_coupling_warning;
    j["cubic_correction"] = r.cubic_correction;
    // both swap-time bookkeepings, labeled by their defining formulas
    j["t_swap_s"] = r.t_swap;
    j["t_swap_convention"] = r.convention;
    j["t_swap_light_mass_s"] = r.t_swap_light_mass;
    j["t_swap_light_mass_convention"] =
        "t_swap = pi m_light omega / (2 |kappa|), lighter-particle single-mass bookkeeping";

    if (simulate) {
        const auto& pc = ctx.cfg.constants;
        const double E0 = pc.boltzmann * 1.0; // 1 K of axial energy in well a
        const auto trace = simulate_swap(pair, E0, 0.0, duration, dt);
        std::ostringstream csv;
        csv << "t_s,E_a_J,E_b_J\n";
        for (size_t i = 0; i < trace.t.size(); ++i)
            csv << fmt(trace.t[i]) << "," << fmt(trace.E_a[i]) << "," << fmt(trace.E_b[i])
                << "\n";
        write_text(ctx.out("exchange_trace.csv"), csv.str());
        j["simulated"] = {{"first_transfer_time_s", trace.first_transfer_time},
                          {"measured_splitting_rad_s", trace.measured_splitting},
                          {"max_transfer_fraction", trace.max_transfer_fraction},
                          {"energy_drift", trace.energy_drift}};
    }
    write_json(ctx.out("exchange.json"), j);

    std::cout << "exchange: t_swap = " << r.t_swap * 1e3 << " ms  [" << r.convention << "]\n"
              << "exchange: t_swap_light_mass = " << r.t_swap_light_mass * 1e3
              << " ms  [t_swap = pi m_light omega / (2 |kappa|)]\n";
    return 0;
}

// ---- levels ---------------------------------------------------------------

int run_levels(RunContext& ctx, const std::string& level_name) {
    const auto& a = ctx.cfg.atomic;
    const double B = ctx.cfg.field.B0;
    const FineLevel level = level_name == "P32" ? make_P32(a) : make_S12(a);
    const auto states = level_energies(level, B, ctx.cfg.constants);

    std::ostringstream csv;
    csv << "index,mF,mJ,mI,energy_Hz,purity\n";
    for (size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        csv << i << "," << fmt(s.mF) << "," << fmt(s.mJ) << "," << fmt(s.mI) << ","
            << fmt(s.energy) << "," << fmt(high_field_character(s)) << "\n";
    }
    write_text(ctx.out("levels.csv"), csv.str());

    const auto tr = cooling_transitions(a, B, ctx.cfg.constants);
    json j;
    j["level"] = level.label;
    j["B_T"] = B;
    j["states"] = states.size();
    j["cycling_Hz"] = tr.cycling;
    j["repump_Hz"] = tr.repump;
    j["ground_state_splitting_Hz"] = tr.ground_state_splitting;
    write_json(ctx.out("transitions.json"), j);

    std::cout << "levels: " << states.size() << " states, ground-state splitting "
              << tr.ground_state_splitting / 1e9 << " GHz\n";
    return 0;
}

// ---- laser-chain ----------------------------------------------------------

json chain_to_json(const std::vector<ChainStage>& chain) {
    json arr = json::array();
    for (const auto& st : chain) {
        json j;
        j["name"] = st.name;
        if (st.wavelength_in > 0.0) j["wavelength_in_nm"] = st.wavelength_in * 1e9;
        if (st.wavelength_in2 > 0.0) j["wavelength_in2_nm"] = st.wavelength_in2 * 1e9;
        j["wavelength_out_nm"] = st.wavelength_out * 1e9;
        j["power_out_W"] = st.power_out;
        arr.push_back(j);
    }
    return arr;
}

int run_laser_chain(RunContext& ctx) {
    const auto cooling = cooling_laser_chain(ctx.cfg.laser);
    const auto ionization = photoionization_chain(ctx.cfg.laser);
    json j;
    j["cooling_chain"] = chain_to_json(cooling);
    j["photoionization_chain"] = chain_to_json(ionization);
    j["photoionization_two_photon_ok"] =
        photoionization_energy_check(ctx.cfg.laser, ctx.cfg.constants);
    write_json(ctx.out("laser_chain.json"), j);

    std::cout << "laser-chain: cooling " << cooling.back().wavelength_out * 1e9
              << " nm, photoionization " << ionization.back().wavelength_out * 1e9 << " nm\n";
    return 0;
}

// ---- comb -----------------------------------------------------------------

int run_comb(RunContext& ctx) {
    const auto& l = ctx.cfg.laser;
    const auto& a = ctx.cfg.atomic;
    const auto tr = cooling_transitions(a, ctx.cfg.field.B0, ctx.cfg.constants);
    const double splitting = std::abs(tr.ground_state_splitting);

    CombSpec comb{l.comb_frep, a.reference_frequency, l.comb_sigma, l.comb_rabi0};
    const auto pairing = comb_pair(comb, splitting);
    const auto rate = comb_raman_rate(comb, pairing.tooth_separation, l.comb_detuning);

    json j;
    j["splitting_Hz"] = splitting;
    j["f_rep_Hz"] = comb.f_rep;
    j["tooth_separation"] = pairing.tooth_separation;
    j["residual_Hz"] = pairing.residual;
    j["omega_eff_rad_s"] = rate.omega_eff;
    j["scattering_figure"] = rate.scattering_figure;
    j["simplified_model"] = rate.simplified_model;
    write_json(ctx.out("comb.json"), j);

    std::cout << "comb: N = " << pairing.tooth_separation << ", residual "
              << pairing.residual / 1e6 << " MHz, Omega_eff " << rate.omega_eff << " rad/s\n";
    return 0;
}

// ---- cool -----------------------------------------------------------------

int run_cool(RunContext& ctx) {
    const auto& c = ctx.cfg.cooling;
    const auto& be = ctx.cfg.lookup("Be9_ion");
    const auto beams = default_beams(c);
    const auto res = simulate_doppler(be, ctx.cfg.field.B0, c.omega_z, beams,
                                      ctx.cfg.atomic.gamma, c.duration, c.dt, c.initial_T,
                                      c.seeds, ctx.seed, c.reemission, ctx.cfg.constants);

    std::ostringstream csv;
    csv << "t_s,E_axial_J,E_plus_J,E_minus_J,T_axial_K\n";
    for (size_t i = 0; i < res.t.size(); ++i)
        csv << fmt(res.t[i]) << "," << fmt(res.E_axial[i]) << "," << fmt(res.E_plus[i]) << ","
            << fmt(res.E_minus[i]) << "," << fmt(res.T_axial[i]) << "\n";
    write_text(ctx.out("cooling_trace.csv"), csv.str());

    const double TD = doppler_limit(ctx.cfg.atomic.gamma, ctx.cfg.constants);
    json j;
    j["seeds"] = c.seeds;
    j["master_seed"] = ctx.seed;
    j["equilibrium_T_K"] = res.equilibrium_T;
    j["equilibrium_T_sigma_K"] = res.equilibrium_T_sigma;
    j["doppler_limit_K"] = TD;
    j["ratio_to_doppler_limit"] = res.equilibrium_T / TD;
    j["mean_scattering_rate_Hz"] = res.mean_scattering_rate;
    j["total_photons"] = res.total_photons;
    write_json(ctx.out("cooling_summary.json"), j);

    std::cout << "cool: T_eq = " << res.equilibrium_T * 1e3 << " mK ("
              << res.equilibrium_T / TD << " x Doppler limit)\n";
    return 0;
}

// ---- protocol -------------------------------------------------------------

int run_protocol(RunContext& ctx) {
    const auto& p = ctx.cfg.protocol;
    const auto& ex = ctx.cfg.exchange;
    const auto pair = CoupledPair::make(ctx.cfg.lookup(ex.species_a), ctx.cfg.lookup(ex.species_b),
                                        ex.separation, ex.omega, ex.omega, ctx.cfg.constants);
    const double t_swap = exchange_rate(pair).t_swap;

    const auto stages = stages_from_config(p, t_swap);
    const auto readout = readout_from_config(p);

    std::ostringstream csv;
    csv << "trial,true_spin_up,photons,inferred_spin_up\n";
    long correct = 0;
    for (long i = 0; i < p.trials; ++i) {
        const bool spin_up = (i % 2) == 0;
        const auto out = run_sequence(stages, readout, spin_up, derive_seed(ctx.seed, i));
        if (out.inferred_spin_up == spin_up) ++correct;
        csv << i << "," << (spin_up ? 1 : 0) << "," << out.photons << ","
            << (out.inferred_spin_up ? 1 : 0) << "\n";
    }
    write_text(ctx.out("protocol_trials.csv"), csv.str());

    const double fidelity = static_cast<double>(correct) / static_cast<double>(p.trials);
    const double sigma =
        std::sqrt(std::max(fidelity * (1.0 - fidelity), 1e-12) / static_cast<double>(p.trials));
    const auto budget = timing_budget(stages, t_swap);

    json j;
    j["trials"] = p.trials;
    j["master_seed"] = ctx.seed;
    j["fidelity"] = fidelity;
    j["fidelity_sigma"] = sigma;
    j["analytic_fidelity"] = analytic_fidelity(stages, readout);
    j["bright_misclassification"] = bright_misclassification(readout);
    j["dark_misclassification"] = dark_misclassification(readout);
    j["optimal_threshold"] = optimal_threshold(p.lambda_bright, p.lambda_dark);
    j["t_swap_s"] = t_swap;
    j["timing_budget"] = json::array();
    for (const auto& [name, dur] : budget.entries)
        j["timing_budget"].push_back({{"stage", name}, {"duration_s", dur}});
    j["total_duration_s"] = budget.total;
    write_json(ctx.out("protocol_summary.json"), j);

    std::cout << "protocol: fidelity " << fidelity << " +- " << sigma << " (analytic "
              << analytic_fidelity(stages, readout) << "), cycle " << budget.total * 1e3
              << " ms\n";
    return 0;
}

} // namespace

// ---- reproduce ------------------------------------------------------------

int reproduce(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) {
        std::cerr << "reproduce: manifest not found: " << manifest_path << "\n";
        return 1;
    }
    json manifest;
    try {
        in >> manifest;
    } catch (const std::exception& e) {
        std::cerr << "reproduce: bad manifest: " << e.what() << "\n";
        return 1;
    }
    if (!manifest.contains("args") || !manifest["args"].is_array()) {
        std::cerr << "reproduce: manifest missing args\n";
        return 1;
    }
    const std::string ver = manifest.value("version", "");
    if (ver != kToolVersion)
        std::cerr << "reproduce: warning: manifest version '" << ver
                  << "' differs from this build '" << kToolVersion << "'\n";
    const std::string cfg = manifest.value("config", "");
    if (!cfg.empty() && !fs::exists(cfg)) {
        std::cerr << "reproduce: recorded config missing: " << cfg << "\n";
        return 1;
    }
    std::vector<std::string> args;
    for (const auto& a : manifest["args"]) args.push_back(a.get<std::string>());
    return dispatch(args);
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Penning-trap stack design and sympathetic-cooling toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    RunContext ctx;
    ctx.argv = args;

    std::vector<double> voltages;
    auto* sp = app.add_subcommand("solve-potential", "boundary-value potential of the stack");
    add_common(sp, ctx);
    sp->add_option("--voltages", voltages, "per-electrode voltages (V)")->delimiter(',');

    auto* dw = app.add_subcommand("design-well", "solve electrode voltages for target wells");
    add_common(dw, ctx);

    std::string species = "proton";
    double f_z = 4.0e6;
    auto* md = app.add_subcommand("modes", "trap eigenfrequencies");
    add_common(md, ctx);
    md->add_option("--species", species, "species name from the config table");
    md->add_option("--fz", f_z, "axial frequency (Hz)");

    bool simulate = false;
    double ex_duration = 60e-3, ex_dt = 5e-9;
    auto* xc = app.add_subcommand("exchange", "coupled-well energy exchange");
    add_common(xc, ctx);
    xc->add_flag("--simulate", simulate, "integrate the coupled equations");
    xc->add_option("--duration", ex_duration, "simulation span (s)");
    xc->add_option("--dt", ex_dt, "integrator step (s)");

    std::string level = "S12";
    auto* lv = app.add_subcommand("levels", "Zeeman/hyperfine level energies");
    add_common(lv, ctx);
    lv->add_option("--level", level, "S12 or P32")
        ->check(CLI::IsMember({"S12", "P32"}));

    auto* lc = app.add_subcommand("laser-chain", "nonlinear conversion chains");
    add_common(lc, ctx);

    auto* cb = app.add_subcommand("comb", "frequency-comb Raman pairing");
    add_common(cb, ctx);

    auto* cl = app.add_subcommand("cool", "Doppler cooling Monte Carlo");
    add_common(cl, ctx);

    auto* pr = app.add_subcommand("protocol", "detection sequence Monte Carlo");
    add_common(pr, ctx);

    std::string manifest_path;
    auto* rp = app.add_subcommand("reproduce", "re-run a recorded invocation");
    rp->add_option("manifest", manifest_path, "manifest.json path")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (rp->parsed()) return reproduce(manifest_path);
        const std::string name = app.get_subcommands().front()->get_name();
        ctx.load(name);
        if (sp->parsed()) return run_solve_potential(ctx, voltages);
        if (dw->parsed()) return run_design_well(ctx);
        if (md->parsed()) return run_modes(ctx, species, f_z);
        if (xc->parsed()) return run_exchange(ctx, simulate, ex_duration, ex_dt);
        if (lv->parsed()) return run_levels(ctx, level);
        if (lc->parsed()) return run_laser_chain(ctx);
        if (cb->parsed()) return run_comb(ctx);
        if (cl->parsed()) return run_cool(ctx);
        if (pr->parsed()) return run_protocol(ctx);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}

} // namespace trapstack
