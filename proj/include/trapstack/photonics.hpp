#pragma once

#include "trapstack/config.hpp"

namespace trapstack {

struct LightField {
    double wavelength = 0.0; // m, vacuum
    double power = 0.0;      // W (0 = untracked)
    double bandwidth = 0.0;  // Hz (0 = untracked)

    double frequency(const PhysConstants& pc) const { return pc.speed_of_light / wavelength; }
};

// 1/lambda_out = 1/lambda_a + 1/lambda_b (frequencies add exactly)
LightField sfg(const LightField& a, const LightField& b, double efficiency = 1.0);

// lambda_out = lambda / 2
LightField shg(const LightField& a, double efficiency = 1.0);

struct ChainStage {
    std::string name;
    double wavelength_in = 0.0;  // m (0 for two-input stages; see inputs)
    double wavelength_in2 = 0.0; // m, second SFG input
    double wavelength_out = 0.0; // m
    double power_out = 0.0;      // W
};

// 1050 nm + 1550 nm -> 626 nm (SFG) -> 313 nm (SHG), cooling/repump chain
std::vector<ChainStage> cooling_laser_chain(const LaserConfig& l);

// 940 nm -> 470 nm -> 235 nm quadrupling chain for photoionization
std::vector<ChainStage> photoionization_chain(const LaserConfig& l);

// Two photons at the chain output must reach the ionization threshold.
bool photoionization_energy_check(const LaserConfig& l, const PhysConstants& pc);

struct CombSpec {
    double f_rep = 0.0;            // Hz
    double center_frequency = 0.0; // Hz
    double sigma = 0.0;            // Hz, rms envelope bandwidth
    double rabi0 = 0.0;            // rad/s, per-tooth peak Rabi rate
};

struct CombPairing {
    long tooth_separation = 0; // N
    double residual = 0.0;     // Hz, delta = Delta - N f_rep, |delta| <= f_rep/2
};

CombPairing comb_pair(const CombSpec& comb, double splitting);

struct CombRamanRate {
    double omega_eff = 0.0;        // rad/s, sum over tooth pairs / (2 Delta_e)
    double scattering_figure = 0.0; // ~ sum Omega_n^2 / Delta_e^2
    bool simplified_model = true;
};

// Omega_eff = sum_n Omega_n Omega_{n+N} / (2 Delta_e) with Gaussian tooth
// amplitudes Omega_n = Omega_0 exp(-(n f_rep)^2 / (4 sigma^2)).
CombRamanRate comb_raman_rate(const CombSpec& comb, long N, double detuning);

} // namespace trapstack
