#pragma once

#include <array>
#include <span>
#include <vector>

#include "trapstack/config.hpp"

namespace trapstack {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AntiConfiningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Electrode {
    double z_lo = 0.0; // m, domain-centered coordinates
    double z_hi = 0.0;
    double voltage = 0.0; // V
};

// Stacked-ring trap: Dirichlet values on the cylinder wall, grounded end
// planes, gaps bridged by linear interpolation.
struct ElectrodeStack {
    double inner_radius = 0.0;  // m
    std::vector<Electrode> electrodes; // ordered in z, non-overlapping
    double gap_width = 0.0;     // m
    double domain_length = 0.0; // m, wall z in [-L/2, L/2]

    static ElectrodeStack uniform(const GeometryConfig& g, std::span<const double> voltages);

    void validate() const;
    // piecewise-linear wall boundary as (z, V) breakpoints, ends grounded
    std::vector<std::pair<double, double>> wall_profile() const;
};

// Interior Laplace solution as a Fourier-Bessel sine series on the finite domain.
struct PotentialSolution {
    double radius = 0.0;
    double length = 0.0;
    std::vector<double> coeff;      // A_n for sin(n pi s / L), s = z + L/2
    std::vector<double> axis_coeff; // A_n / I0(k_n R), cached for axis work
    double truncation_estimate = 0.0; // V, trailing-mode bound on axis
    bool converged = true;

    double evaluate(double rho, double z) const;         // V
    double axial(double z) const;                        // Phi(0, z)
    double axial_derivative(double z, int order) const;  // d^k/dz^k Phi(0, z)
    std::array<double, 2> field_at(double rho, double z) const; // (E_rho, E_z), V/m
};

PotentialSolution solve_potential(const ElectrodeStack& stack, int modes);

// Unit-voltage solution per electrode; solutions superpose linearly.
std::vector<PotentialSolution> electrode_basis(const ElectrodeStack& stack, int modes);

struct StationaryPoint {
    double z = 0.0;
    std::array<double, 5> C{}; // local expansion Phi(z + d) = sum C_k d^k
};

struct AxialPotential {
    std::vector<double> z;   // m
    std::vector<double> phi; // V
    std::vector<StationaryPoint> points;
};

AxialPotential axial_profile(const PotentialSolution& sol, std::span<const double> z_grid);

// omega_z = sqrt(2 q C2 / m); throws AntiConfiningError when q*C2 <= 0
double curvature_to_frequency(double C2, const ParticleSpecies& species);

} // namespace trapstack
