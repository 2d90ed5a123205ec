#pragma once

#include <cstdint>

#include "trapstack/modes.hpp"

namespace trapstack {

struct CoolingBeam {
    double detuning = 0.0;   // rad/s, from the cycling transition
    double saturation = 0.0; // on-resonance saturation parameter
    std::array<double, 3> direction{0.0, 0.0, 1.0}; // unit wavevector direction
    double wavelength = 313e-9; // m

    void validate() const;
};

// R = (Gamma/2) s / (1 + s + (2 (delta - k.v) / Gamma)^2)
double scattering_rate(const CoolingBeam& beam, const std::array<double, 3>& velocity,
                       double gamma);

// T_D = hbar Gamma / (2 kB)
double doppler_limit(double gamma, const PhysConstants& pc);

struct CoolingResult {
    std::vector<double> t;        // s
    std::vector<double> E_axial;  // J, averaged over seeds
    std::vector<double> E_plus;   // J
    std::vector<double> E_minus;  // J (magnetron, negative convention)
    std::vector<double> T_axial;  // K
    double equilibrium_T = 0.0;   // K, tail average over all seeds
    double equilibrium_T_sigma = 0.0; // K, seed-to-seed standard error
    double mean_scattering_rate = 0.0; // 1/s
    long total_photons = 0;
};

// Stochastic photon-scattering on the classical trajectory: hbar k momentum
// kick per absorption, isotropic re-emission. Deterministic per seed.
CoolingResult simulate_doppler(const ParticleSpecies& species, double B0, double omega_z,
                               const std::vector<CoolingBeam>& beams, double gamma,
                               double duration, double dt, double initial_T, int seeds,
                               std::uint64_t master_seed, bool reemission,
                               const PhysConstants& pc);

// Default port geometry: counter-propagating pair at beam_angle to the axis.
std::vector<CoolingBeam> default_beams(const CoolingConfig& c);

struct ModeEnergyState {
    double E_axial = 0.0;
    double E_plus = 0.0;
    double E_minus = 0.0; // magnetron, negative convention; |E| shrinks as it cools
};

// Rate-equation axialization: magnetron action transferred toward the damped
// cyclotron mode at the drive rate. Drive 0 is the identity.
ModeEnergyState axialize(const ModeEnergyState& in, double drive_rate, double duration);

} // namespace trapstack
