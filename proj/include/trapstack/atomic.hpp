#pragma once

#include "trapstack/config.hpp"

namespace trapstack {

struct UnknownStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FineLevel {
    std::string label; // "S12", "P12", "P32"
    double J = 0.5;
    double g_J = 2.0;
    double hyperfine_A = 0.0; // Hz, may be negative
    double I = 1.5;           // nuclear spin
    double g_I_prime = 0.0;   // nuclear g, mu_N units

    int dimension() const {
        return static_cast<int>((2.0 * J + 1.0) * (2.0 * I + 1.0) + 0.5);
    }
};

struct Admixture {
    double mJ = 0.0, mI = 0.0;
    double weight = 0.0;
};

struct ZeemanState {
    double energy = 0.0; // Hz, relative to the level centroid
    double mF = 0.0;     // conserved label
    double mJ = 0.0;     // dominant |mJ, mI> character
    double mI = 0.0;
    std::vector<Admixture> admixture; // weights sum to 1
};

// Eigenstates of H/h = A I.J + (gJ muB mJ - gI' muN mI) B / h, diagonalized
// block-wise per mF, sorted by energy.
std::vector<ZeemanState> level_energies(const FineLevel& level, double B,
                                        const PhysConstants& pc);

// Weight of the dominant product-basis component.
double high_field_character(const ZeemanState& state);

// State with the given dominant |mJ, mI> character.
const ZeemanState& find_state(const std::vector<ZeemanState>& states, double mJ, double mI);

// reference + E_upper - E_lower, Hz
double transition_frequency(const ZeemanState& lower, const ZeemanState& upper,
                            double reference);

FineLevel make_S12(const AtomicConfig& a);
FineLevel make_P32(const AtomicConfig& a);

struct CoolingTransitions {
    double cycling = 0.0; // Hz: |S,+1/2,+3/2> -> |P3/2,+3/2,+3/2>
    double repump = 0.0;  // Hz: |S,-1/2,+3/2> -> |P3/2,+1/2,+3/2>
    double ground_state_splitting = 0.0; // Hz, S1/2 mJ=+-1/2 at mI=+3/2
};

CoolingTransitions cooling_transitions(const AtomicConfig& a, double B, const PhysConstants& pc);

// g_p muN B / h
double spin_flip_frequency(const ParticleSpecies& species, double B, const PhysConstants& pc);

} // namespace trapstack
