#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trapstack/constants.hpp"

namespace trapstack {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeometryConfig {
    double inner_radius = 400e-6;       // m
    double electrode_thickness = 200e-6; // m
    double gap_width = 50e-6;           // m (insulating spacer)
    double end_margin = 400e-6;         // m, stack edge to grounded end plane
    int num_electrodes = 9;
    int modes = 400; // Fourier-Bessel series length

    double stack_length() const {
        return num_electrodes * electrode_thickness + (num_electrodes - 1) * gap_width;
    }
    double domain_length() const { return stack_length() + 2.0 * end_margin; }
};

struct WellTarget {
    double position = 0.0;   // m, along axis, domain-centered coordinates
    std::string species;     // name in species table
    double omega_z = 0.0;    // rad/s
};

struct WellConfig {
    std::vector<WellTarget> wells; // 1 or 2
    double voltage_bound = 50.0;   // V, symmetric box
    double c3_penalty = 0.0;       // weight on cubic term at each well
};

struct AtomicConfig {
    // 9Be+ constants; standard literature values.
    double A_S12 = -625.008837048e6; // Hz (S_1/2 hyperfine)
    double A_P32 = -1.018e6;         // Hz (P_3/2 dipole term)
    double gJ_S12 = 2.00226206;
    double gJ_P32 = 4.0 / 3.0;
    double gI_prime = -0.784955;        // nuclear g, mu_N units
    double nuclear_spin = 1.5;          // 9Be
    double reference_frequency = 957.397e12; // Hz, S_1/2 -> P_3/2 centroid ("313 nm")
    double gamma = 2.0 * M_PI * 19.4e6;      // rad/s, P_3/2 linewidth
};

struct LaserConfig {
    // comb Raman system: representative values, none stated in the source material
    double comb_frep = 120e6;        // Hz
    double comb_sigma = 80e9;        // Hz, rms envelope bandwidth
    double comb_rabi0 = 2.0 * M_PI * 50e3; // rad/s, per-tooth peak Rabi rate
    double comb_detuning = 500e9;    // Hz, single-photon detuning
    double power_1050 = 1.0;         // W
    double power_1550 = 1.0;         // W
    double power_940 = 1.5;          // W
    double sfg_efficiency = 0.30;    // 1050+1550 -> 626
    double shg_313_efficiency = 0.25; // 626 -> 313
    double shg_470_efficiency = 0.34; // 940 -> 470
    double shg_235_efficiency = 0.05; // 470 -> 235
    double ionization_threshold = 9.3227; // eV, 9Be first ionization
};

struct CoolingConfig {
    double detuning = -2.0 * M_PI * 9.7e6; // rad/s, default -Gamma/2
    double saturation = 0.5;
    double beam_angle = M_PI / 4.0; // rad, w.r.t. trap axis (laser ports at 45 deg)
    double omega_z = 2.0 * M_PI * 1.0e6; // rad/s, detection-trap axial frequency (Be+)
    double duration = 400e-6; // s
    double dt = 3e-9;         // s
    double initial_T = 5e-3;  // K, axial starting temperature
    int seeds = 10;
    bool reemission = true;
    double axialization_rate = 0.0; // 1/s
};

struct ProtocolConfig {
    double lambda_bright = 10.0;
    double lambda_dark = 1.0;
    int threshold = 4; // classify bright if photons >= threshold
    double p_flip_spin_to_motion = 0.0;
    double p_flip_swap = 0.0;
    double p_flip_sideband = 0.0;
    double heating_quanta = 0.0; // mean Poisson quanta added during swap
    double probe_duration = 1e-3;
    double shuttle_duration = 5e-3;
    double spin_to_motion_duration = 1e-3;
    double swap_duration = 0.0; // 0: take t_swap from the exchange module
    double sideband_map_duration = 1e-3;
    double readout_duration = 10e-3;
    double recool_duration = 5e-3;
    double gradient = 10.0;   // T/m, spin-motion coupling trap B'
    double carrier_rabi = 2.0 * M_PI * 10e3; // rad/s
    int trials = 1000;
};

struct ExchangeConfig {
    double separation = 300e-6; // m
    double omega = 2.0 * M_PI * 4.0e6; // rad/s, common well frequency
    std::string species_a = "proton";
    std::string species_b = "Be9_ion";
};

struct Config {
    PhysConstants constants;
    std::map<std::string, ParticleSpecies> species;
    MagneticField field;
    GeometryConfig geometry;
    WellConfig wells;
    AtomicConfig atomic;
    LaserConfig laser;
    CoolingConfig cooling;
    ProtocolConfig protocol;
    ExchangeConfig exchange;

    const ParticleSpecies& lookup(const std::string& name) const;
};

// Built-in defaults: proton/antiproton/Be9_ion species, demonstrator geometry, 5 T field.
Config default_config();

// Sectioned key-value text format with unit suffixes; see docs/config_format.md.
Config load_config(const std::string& path);
Config parse_config(const std::string& text, const std::string& origin = "<string>");

std::string serialize_config(const Config& cfg);
void save_config(const Config& cfg, const std::string& path);

ParticleSpecies species_lookup(const std::string& name, const Config& cfg);

} // namespace trapstack
