#include "trapstack/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace trapstack {

namespace {

enum class Dim {
    Length, Time, Freq, AngFreq, Mass, Charge, Volt, Field, Temp,
    Power, Angle, Dimless, Moment, Gradient, EnergyEV
};

// factor converting "value unit" to the storage unit of its dimension
double unit_factor(const std::string& unit, Dim dim, const PhysConstants& pc) {
    auto bad = [&]() -> double {
        throw ConfigError("unknown or mismatched unit '" + unit + "'");
    };
    switch (dim) {
        case Dim::Length:
            if (unit == "m") return 1.0;
            if (unit == "mm") return 1e-3;
            if (unit == "um") return 1e-6;
            if (unit == "nm") return 1e-9;
            return bad();
        case Dim::Time:
            if (unit == "s") return 1.0;
            if (unit == "ms") return 1e-3;
            if (unit == "us") return 1e-6;
            if (unit == "ns") return 1e-9;
            return bad();
        case Dim::Freq:
            if (unit == "Hz") return 1.0;
            if (unit == "kHz") return 1e3;
            if (unit == "MHz") return 1e6;
            if (unit == "GHz") return 1e9;
            if (unit == "THz") return 1e12;
            return bad();
        case Dim::AngFreq: // stored in rad/s; plain frequency units pick up 2*pi
            if (unit == "rad/s") return 1.0;
            if (unit == "Hz") return 2.0 * M_PI;
            if (unit == "kHz") return 2.0 * M_PI * 1e3;
            if (unit == "MHz") return 2.0 * M_PI * 1e6;
            if (unit == "GHz") return 2.0 * M_PI * 1e9;
            return bad();
        case Dim::Mass:
            if (unit == "kg") return 1.0;
            if (unit == "u") return pc.atomic_mass_unit;
            return bad();
        case Dim::Charge:
            if (unit == "C") return 1.0;
            if (unit == "e") return pc.elementary_charge;
            return bad();
        case Dim::Volt:
            if (unit == "V") return 1.0;
            if (unit == "kV") return 1e3;
            return bad();
        case Dim::Field:
            if (unit == "T") return 1.0;
            if (unit == "mT") return 1e-3;
            return bad();
        case Dim::Temp:
            if (unit == "K") return 1.0;
            if (unit == "mK") return 1e-3;
            if (unit == "uK") return 1e-6;
            return bad();
        case Dim::Power:
            if (unit == "W") return 1.0;
            if (unit == "mW") return 1e-3;
            if (unit == "uW") return 1e-6;
            return bad();
        case Dim::Angle:
            if (unit == "rad") return 1.0;
            if (unit == "deg") return M_PI / 180.0;
            return bad();
        case Dim::Dimless:
            if (unit.empty() || unit == "1") return 1.0;
            return bad();
        case Dim::Moment:
            if (unit == "J/T") return 1.0;
            return bad();
        case Dim::Gradient:
            if (unit == "T/m") return 1.0;
            return bad();
        case Dim::EnergyEV:
            if (unit == "eV") return 1.0;
            return bad();
    }
    return bad();
}

struct Entry {
    std::string value; // raw right-hand side
    int line = 0;
    mutable bool consumed = false;
};

struct Section {
    std::string name;
    std::map<std::string, Entry> entries;
    const PhysConstants* pc = nullptr;

    bool has(const std::string& key) const { return entries.count(key) != 0; }

    const Entry* find(const std::string& key) const {
        auto it = entries.find(key);
        if (it == entries.end()) return nullptr;
        it->second.consumed = true;
        return &it->second;
    }

    double parse_number(const std::string& key, const Entry& e, Dim dim) const {
        std::istringstream ss(e.value);
        double v;
        if (!(ss >> v))
            throw ConfigError("[" + name + "] " + key + ": cannot parse '" + e.value + "' as a number");
        std::string unit;
        ss >> unit;
        std::string trailing;
        if (ss >> trailing)
            throw ConfigError("[" + name + "] " + key + ": trailing content '" + trailing + "'");
        try {
            return v * unit_factor(unit, dim, *pc);
        } catch (const ConfigError& err) {
            throw ConfigError("[" + name + "] " + key + ": " + err.what());
        }
    }

    void q(const std::string& key, Dim dim, double& out) const {
        if (const Entry* e = find(key)) out = parse_number(key, *e, dim);
    }
    std::optional<double> qopt(const std::string& key, Dim dim) const {
        if (const Entry* e = find(key)) return parse_number(key, *e, dim);
        return std::nullopt;
    }
    double qreq(const std::string& key, Dim dim) const {
        const Entry* e = find(key);
        if (!e) throw ConfigError("[" + name + "] missing required key '" + key + "'");
        return parse_number(key, *e, dim);
    }
    void geti(const std::string& key, int& out) const {
        if (const Entry* e = find(key)) {
            try {
                size_t pos = 0;
                out = std::stoi(e->value, &pos);
                if (pos != e->value.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ConfigError("[" + name + "] " + key + ": '" + e->value + "' is not an integer");
            }
        }
    }
    void getb(const std::string& key, bool& out) const {
        if (const Entry* e = find(key)) {
            if (e->value == "true") out = true;
            else if (e->value == "false") out = false;
            else throw ConfigError("[" + name + "] " + key + ": expected true/false");
        }
    }
    void gets(const std::string& key, std::string& out) const {
        if (const Entry* e = find(key)) out = e->value;
    }

    void check_all_consumed() const {
        for (const auto& [key, e] : entries)
            if (!e.consumed)
                throw ConfigError("[" + name + "] unknown key '" + key + "' (line " +
                                  std::to_string(e.line) + ")");
    }
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

ParticleSpecies parse_species(const Section& sec, const std::string& name) {
    ParticleSpecies sp;
    sp.name = name;
    sp.charge = sec.qreq("charge", Dim::Charge);
    sp.mass = sec.qreq("mass", Dim::Mass);
    if (auto g = sec.qopt("g_factor", Dim::Dimless)) {
        sp.has_g_factor = true;
        sp.g_factor = *g;
    }
    if (auto mu = sec.qopt("magnetic_moment", Dim::Moment)) {
        sp.has_magnetic_moment = true;
        sp.magnetic_moment = *mu;
    }
    sp.validate();
    return sp;
}

void check_positive(double v, const char* what) {
    if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be > 0");
}

void validate_config(const Config& cfg) {
    cfg.constants.validate();
    cfg.field.validate();
    for (const auto& [name, sp] : cfg.species) sp.validate();

    const auto& g = cfg.geometry;
    check_positive(g.inner_radius, "geometry.inner_radius");
    check_positive(g.electrode_thickness, "geometry.electrode_thickness");
    if (g.gap_width < 0.0) throw ConfigError("geometry.gap_width must be >= 0");
    check_positive(g.end_margin, "geometry.end_margin");
    if (g.num_electrodes < 1) throw ConfigError("geometry.num_electrodes must be >= 1");
    if (g.modes < 32) throw ConfigError("geometry.modes must be >= 32");

    if (cfg.wells.wells.empty() || cfg.wells.wells.size() > 2)
        throw ConfigError("wells: need 1 or 2 well targets");
    for (const auto& w : cfg.wells.wells) {
        check_positive(w.omega_z, "wells.frequency");
        if (std::abs(w.position) > g.domain_length() / 2.0)
            throw ConfigError("wells.position outside domain");
        cfg.lookup(w.species);
    }
    check_positive(cfg.wells.voltage_bound, "wells.voltage_bound");

    check_positive(cfg.atomic.gamma, "atomic.linewidth");
    check_positive(cfg.atomic.reference_frequency, "atomic.reference_frequency");

    check_positive(cfg.laser.comb_frep, "laser.comb_frep");
    check_positive(cfg.laser.comb_sigma, "laser.comb_sigma");

    if (cfg.cooling.saturation < 0.0) throw ConfigError("cooling.saturation must be >= 0");
    check_positive(cfg.cooling.dt, "cooling.dt");
    check_positive(cfg.cooling.duration, "cooling.duration");
    check_positive(cfg.cooling.omega_z, "cooling.omega_z");
    if (cfg.cooling.seeds < 1) throw ConfigError("cooling.seeds must be >= 1");

    const auto& p = cfg.protocol;
    if (!(p.lambda_bright > p.lambda_dark) || p.lambda_dark < 0.0)
        throw ConfigError("protocol: need lambda_bright > lambda_dark >= 0");
    for (double pr : {p.p_flip_spin_to_motion, p.p_flip_swap, p.p_flip_sideband})
        if (pr < 0.0 || pr > 1.0) throw ConfigError("protocol: flip probabilities must be in [0,1]");
    if (p.heating_quanta < 0.0) throw ConfigError("protocol.heating_quanta must be >= 0");
    if (p.trials < 1) throw ConfigError("protocol.trials must be >= 1");

    check_positive(cfg.exchange.separation, "exchange.separation");
    check_positive(cfg.exchange.omega, "exchange.frequency");
    cfg.lookup(cfg.exchange.species_a);
    cfg.lookup(cfg.exchange.species_b);
}

} // namespace

const ParticleSpecies& Config::lookup(const std::string& name) const {
    auto it = species.find(name);
    if (it == species.end()) throw ConfigError("unknown species '" + name + "'");
    return it->second;
}

Config default_config() {
    Config cfg;

    ParticleSpecies proton{"proton", cfg.constants.elementary_charge, kProtonMass,
                           true, 5.5856946893, false, 0.0};
    proton.has_magnetic_moment = true;
    proton.magnetic_moment = proton.g_factor * cfg.constants.nuclear_magneton / 2.0;

    ParticleSpecies pbar = proton;
    pbar.name = "antiproton";
    pbar.charge = -proton.charge;
    pbar.magnetic_moment = -proton.magnetic_moment;

    ParticleSpecies be{"Be9_ion", cfg.constants.elementary_charge,
                       kBe9AtomMassU * cfg.constants.atomic_mass_unit - kElectronMass,
                       false, 0.0, false, 0.0};

    cfg.species = {{"proton", proton}, {"antiproton", pbar}, {"Be9_ion", be}};

    // demonstrator double well: proton + Be+, 2pi*4 MHz each, 300 um apart
    cfg.wells.wells = {{-150e-6, "proton", 2.0 * M_PI * 4.0e6},
                       {+150e-6, "Be9_ion", 2.0 * M_PI * 4.0e6}};
    return cfg;
}

Config parse_config(const std::string& text, const std::string& origin) {
    Config cfg = default_config();

    std::vector<Section> sections;
    Section* cur = nullptr;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            sections.push_back(Section{trim(line.substr(1, line.size() - 2)), {}, &cfg.constants});
            cur = &sections.back();
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        if (!cur)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any section");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value");
        if (!cur->entries.emplace(key, Entry{val, lineno}).second)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }

    bool proton_overridden = false, antiproton_given = false;
    for (const Section& sec : sections) {
        if (sec.name == "field") {
            sec.q("B0", Dim::Field, cfg.field.B0);
        } else if (sec.name.rfind("species ", 0) == 0) {
            std::string name = trim(sec.name.substr(8));
            if (name.empty()) throw ConfigError("species section without a name");
            cfg.species[name] = parse_species(sec, name);
            if (name == "proton") proton_overridden = true;
            if (name == "antiproton") antiproton_given = true;
        } else if (sec.name == "geometry") {
            auto& g = cfg.geometry;
            sec.q("inner_radius", Dim::Length, g.inner_radius);
            sec.q("electrode_thickness", Dim::Length, g.electrode_thickness);
            sec.q("gap_width", Dim::Length, g.gap_width);
            sec.q("end_margin", Dim::Length, g.end_margin);
            sec.geti("num_electrodes", g.num_electrodes);
            sec.geti("modes", g.modes);
        } else if (sec.name == "wells") {
            auto& w = cfg.wells;
            std::vector<WellTarget> parsed;
            for (int i = 1; i <= 2; ++i) {
                std::string p = "well" + std::to_string(i) + "_";
                if (!sec.has(p + "position")) continue;
                WellTarget t;
                t.position = sec.qreq(p + "position", Dim::Length);
                sec.gets(p + "species", t.species);
                t.omega_z = sec.qreq(p + "frequency", Dim::AngFreq);
                if (t.species.empty())
                    throw ConfigError("[wells] missing " + p + "species");
                parsed.push_back(t);
            }
            if (!parsed.empty()) w.wells = parsed;
            sec.q("voltage_bound", Dim::Volt, w.voltage_bound);
            sec.q("c3_penalty", Dim::Dimless, w.c3_penalty);
        } else if (sec.name == "atomic") {
            auto& a = cfg.atomic;
            sec.q("hyperfine_A_S12", Dim::Freq, a.A_S12);
            sec.q("hyperfine_A_P32", Dim::Freq, a.A_P32);
            sec.q("gJ_S12", Dim::Dimless, a.gJ_S12);
            sec.q("gJ_P32", Dim::Dimless, a.gJ_P32);
            sec.q("gI_prime", Dim::Dimless, a.gI_prime);
            sec.q("nuclear_spin", Dim::Dimless, a.nuclear_spin);
            sec.q("reference_frequency", Dim::Freq, a.reference_frequency);
            sec.q("linewidth", Dim::AngFreq, a.gamma);
        } else if (sec.name == "laser") {
            auto& l = cfg.laser;
            sec.q("comb_frep", Dim::Freq, l.comb_frep);
            sec.q("comb_sigma", Dim::Freq, l.comb_sigma);
            sec.q("comb_rabi", Dim::AngFreq, l.comb_rabi0);
            sec.q("comb_detuning", Dim::Freq, l.comb_detuning);
            sec.q("power_1050", Dim::Power, l.power_1050);
            sec.q("power_1550", Dim::Power, l.power_1550);
            sec.q("power_940", Dim::Power, l.power_940);
            sec.q("sfg_efficiency", Dim::Dimless, l.sfg_efficiency);
            sec.q("shg_313_efficiency", Dim::Dimless, l.shg_313_efficiency);
            sec.q("shg_470_efficiency", Dim::Dimless, l.shg_470_efficiency);
            sec.q("shg_235_efficiency", Dim::Dimless, l.shg_235_efficiency);
            sec.q("ionization_threshold", Dim::EnergyEV, l.ionization_threshold);
        } else if (sec.name == "cooling") {
            auto& c = cfg.cooling;
            sec.q("detuning", Dim::AngFreq, c.detuning);
            sec.q("saturation", Dim::Dimless, c.saturation);
            sec.q("beam_angle", Dim::Angle, c.beam_angle);
            sec.q("axial_frequency", Dim::AngFreq, c.omega_z);
            sec.q("duration", Dim::Time, c.duration);
            sec.q("dt", Dim::Time, c.dt);
            sec.q("initial_T", Dim::Temp, c.initial_T);
            sec.geti("seeds", c.seeds);
            sec.getb("reemission", c.reemission);
            sec.q("axialization_rate", Dim::Freq, c.axialization_rate);
        } else if (sec.name == "protocol") {
            auto& p = cfg.protocol;
            sec.q("lambda_bright", Dim::Dimless, p.lambda_bright);
            sec.q("lambda_dark", Dim::Dimless, p.lambda_dark);
            sec.geti("threshold", p.threshold);
            sec.q("p_flip_spin_to_motion", Dim::Dimless, p.p_flip_spin_to_motion);
            sec.q("p_flip_swap", Dim::Dimless, p.p_flip_swap);
            sec.q("p_flip_sideband", Dim::Dimless, p.p_flip_sideband);
            sec.q("heating_quanta", Dim::Dimless, p.heating_quanta);
            sec.q("probe_duration", Dim::Time, p.probe_duration);
            sec.q("shuttle_duration", Dim::Time, p.shuttle_duration);
            sec.q("spin_to_motion_duration", Dim::Time, p.spin_to_motion_duration);
            sec.q("swap_duration", Dim::Time, p.swap_duration);
            sec.q("sideband_map_duration", Dim::Time, p.sideband_map_duration);
            sec.q("readout_duration", Dim::Time, p.readout_duration);
            sec.q("recool_duration", Dim::Time, p.recool_duration);
            sec.q("gradient", Dim::Gradient, p.gradient);
            sec.q("carrier_rabi", Dim::AngFreq, p.carrier_rabi);
            sec.geti("trials", p.trials);
        } else if (sec.name == "exchange") {
            auto& e = cfg.exchange;
            sec.q("separation", Dim::Length, e.separation);
            sec.q("frequency", Dim::AngFreq, e.omega);
            sec.gets("species_a", e.species_a);
            sec.gets("species_b", e.species_b);
        } else {
            throw ConfigError("unknown section [" + sec.name + "]");
        }
        sec.check_all_consumed();
    }

    if (proton_overridden && !antiproton_given) {
        ParticleSpecies pbar = cfg.species.at("proton");
        pbar.name = "antiproton";
        pbar.charge = -pbar.charge;
        pbar.magnetic_moment = -pbar.magnetic_moment;
        cfg.species["antiproton"] = pbar;
    }

    try {
        validate_config(cfg);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

std::string serialize_config(const Config& cfg) {
    std::ostringstream out;
    out << "# trapstack-sim configuration (canonical SI serialization)\n\n";
    out << "[field]\nB0 = " << fmt(cfg.field.B0) << " T\n\n";
    for (const auto& [name, sp] : cfg.species) {
        out << "[species " << name << "]\n";
        out << "charge = " << fmt(sp.charge) << " C\n";
        out << "mass = " << fmt(sp.mass) << " kg\n";
        if (sp.has_g_factor) out << "g_factor = " << fmt(sp.g_factor) << "\n";
        if (sp.has_magnetic_moment) out << "magnetic_moment = " << fmt(sp.magnetic_moment) << " J/T\n";
        out << "\n";
    }
    const auto& g = cfg.geometry;
    out << "[geometry]\n";
    out << "inner_radius = " << fmt(g.inner_radius) << " m\n";
    out << "electrode_thickness = " << fmt(g.electrode_thickness) << " m\n";
    out << "gap_width = " << fmt(g.gap_width) << " m\n";
    out << "end_margin = " << fmt(g.end_margin) << " m\n";
    out << "num_electrodes = " << g.num_electrodes << "\n";
    out << "modes = " << g.modes << "\n\n";
    out << "[wells]\n";
    for (size_t i = 0; i < cfg.wells.wells.size(); ++i) {
        const auto& w = cfg.wells.wells[i];
        std::string p = "well" + std::to_string(i + 1) + "_";
        out << p << "position = " << fmt(w.position) << " m\n";
        out << p << "species = " << w.species << "\n";
        out << p << "frequency = " << fmt(w.omega_z) << " rad/s\n";
    }
    out << "voltage_bound = " << fmt(cfg.wells.voltage_bound) << " V\n";
    out << "c3_penalty = " << fmt(cfg.wells.c3_penalty) << "\n\n";
    const auto& a = cfg.atomic;
    out << "[atomic]\n";
    out << "hyperfine_A_S12 = " << fmt(a.A_S12) << " Hz\n";
    out << "hyperfine_A_P32 = " << fmt(a.A_P32) << " Hz\n";
    out << "gJ_S12 = " << fmt(a.gJ_S12) << "\n";
    out << "gJ_P32 = " << fmt(a.gJ_P32) << "\n";
    out << "gI_prime = " << fmt(a.gI_prime) << "\n";
    out << "nuclear_spin = " << fmt(a.nuclear_spin) << "\n";
    out << "reference_frequency = " << fmt(a.reference_frequency) << " Hz\n";
    out << "linewidth = " << fmt(a.gamma) << " rad/s\n\n";
    const auto& l = cfg.laser;
    out << "[laser]\n";
    out << "comb_frep = " << fmt(l.comb_frep) << " Hz\n";
    out << "comb_sigma = " << fmt(l.comb_sigma) << " Hz\n";
    out << "comb_rabi = " << fmt(l.comb_rabi0) << " rad/s\n";
    out << "comb_detuning = " << fmt(l.comb_detuning) << " Hz\n";
    out << "power_1050 = " << fmt(l.power_1050) << " W\n";
    out << "power_1550 = " << fmt(l.power_1550) << " W\n";
    out << "power_940 = " << fmt(l.power_940) << " W\n";
    out << "sfg_efficiency = " << fmt(l.sfg_efficiency) << "\n";
    out << "shg_313_efficiency = " << fmt(l.shg_313_efficiency) << "\n";
    out << "shg_470_efficiency = " << fmt(l.shg_470_efficiency) << "\n";
    out << "shg_235_efficiency = " << fmt(l.shg_235_efficiency) << "\n";
    out << "ionization_threshold = " << fmt(l.ionization_threshold) << " eV\n\n";
    const auto& c = cfg.cooling;
    out << "[cooling]\n";
    out << "detuning = " << fmt(c.detuning) << " rad/s\n";
    out << "saturation = " << fmt(c.saturation) << "\n";
    out << "beam_angle = " << fmt(c.beam_angle) << " rad\n";
    out << "axial_frequency = " << fmt(c.omega_z) << " rad/s\n";
    out << "duration = " << fmt(c.duration) << " s\n";
    out << "dt = " << fmt(c.dt) << " s\n";
    out << "initial_T = " << fmt(c.initial_T) << " K\n";
    out << "seeds = " << c.seeds << "\n";
    out << "reemission = " << (c.reemission ? "true" : "false") << "\n";
    out << "axialization_rate = " << fmt(c.axialization_rate) << " Hz\n\n";
    const auto& p = cfg.protocol;
    out << "[protocol]\n";
    out << "lambda_bright = " << fmt(p.lambda_bright) << "\n";
    out << "lambda_dark = " << fmt(p.lambda_dark) << "\n";
    out << "threshold = " << p.threshold << "\n";
    out << "p_flip_spin_to_motion = " << fmt(p.p_flip_spin_to_motion) << "\n";
    out << "p_flip_swap = " << fmt(p.p_flip_swap) << "\n";
    out << "p_flip_sideband = " << fmt(p.p_flip_sideband) << "\n";
    out << "heating_quanta = " << fmt(p.heating_quanta) << "\n";
    out << "probe_duration = " << fmt(p.probe_duration) << " s\n";
    out << "shuttle_duration = " << fmt(p.shuttle_duration) << " s\n";
    out << "spin_to_motion_duration = " << fmt(p.spin_to_motion_duration) << " s\n";
    out << "swap_duration = " << fmt(p.swap_duration) << " s\n";
    out << "sideband_map_duration = " << fmt(p.sideband_map_duration) << " s\n";
    out << "readout_duration = " << fmt(p.readout_duration) << " s\n";
    out << "recool_duration = " << fmt(p.recool_duration) << " s\n";
    out << "gradient = " << fmt(p.gradient) << " T/m\n";
    out << "carrier_rabi = " << fmt(p.carrier_rabi) << " rad/s\n";
    out << "trials = " << p.trials << "\n\n";
    const auto& e = cfg.exchange;
    out << "[exchange]\n";
    out << "separation = " << fmt(e.separation) << " m\n";
    out << "frequency = " << fmt(e.omega) << " rad/s\n";
    out << "species_a = " << e.species_a << "\n";
    out << "species_b = " << e.species_b << "\n";
    return out.str();
}

void save_config(const Config& cfg, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write config file '" + path + "'");
    f << serialize_config(cfg);
}

ParticleSpecies species_lookup(const std::string& name, const Config& cfg) {
    return cfg.lookup(name);
}

} // namespace trapstack
