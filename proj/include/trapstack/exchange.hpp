#pragma once

#include "trapstack/config.hpp"

namespace trapstack {

struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two particles in adjacent axial wells, coupled through the linearized
// Coulomb term -kappa z_a z_b with kappa = 2 q_a q_b / (4 pi eps0 d^3).
struct CoupledPair {
    ParticleSpecies species_a;
    ParticleSpecies species_b;
    double d = 0.0;       // m, well separation
    double omega_a = 0.0; // rad/s
    double omega_b = 0.0; // rad/s
    double kappa = 0.0;   // N/m, signed

    static CoupledPair make(const ParticleSpecies& a, const ParticleSpecies& b, double d,
                            double omega_a, double omega_b, const PhysConstants& pc);
};

struct ExchangeResult {
    double kappa = 0.0;         // N/m
    double delta_omega0 = 0.0;  // rad/s, resonant normal-mode splitting
    double omega_ex = 0.0;      // rad/s, coupling (half-splitting) rate
    double rate = 0.0;          // rad/s, effective oscillation rate sqrt(dw0^2+delta^2)
    double t_swap = 0.0;        // s, pi/delta_omega0 (resonant full transfer)
    double contrast = 0.0;      // peak transferred energy fraction
    double detuning = 0.0;      // rad/s, omega_a - omega_b
    bool strong_coupling_warning = false;
    double cubic_correction = 0.0; // fractional d^-4 term estimate at amplitude ~ d/100
    // resonant-rate convention: delta_omega0 = |kappa| / (sqrt(m_a m_b) omega)
    std::string convention;
    // alternate bookkeeping using the lighter mass alone, t = pi m omega / (2 kappa)
    double t_swap_light_mass = 0.0;
};

// Resonant formula when omega_a == omega_b; detuned inputs are routed through
// the Rabi-type contrast expression.
ExchangeResult exchange_rate(const CoupledPair& pair);

ExchangeResult detuned_transfer(const CoupledPair& pair);

struct SwapTrace {
    std::vector<double> t;       // s
    std::vector<double> E_a, E_b; // J, per-well energies
    double first_transfer_time = 0.0; // s, first minimum of E_a
    double measured_splitting = 0.0;  // rad/s, from envelope half-crossings
    double max_transfer_fraction = 0.0;
    double energy_drift = 0.0; // max |H - H0| / |H0|
};

// Fourth-order symplectic integration of the coupled axial equations.
SwapTrace simulate_swap(const CoupledPair& pair, double E_a0, double E_b0, double duration,
                        double dt);

// Beam-splitter evolution of mean occupations; rotating-wave resonant model.
std::pair<double, double> quantum_swap_model(const CoupledPair& pair, double n_a, double n_b,
                                             double t);

} // namespace trapstack
