#pragma once

#include "trapstack/fieldsolver.hpp"

namespace trapstack {

struct InfeasibleDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentReportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WellSolution {
    std::vector<double> voltages;           // V, one per electrode
    std::vector<double> achieved_positions; // m
    std::vector<double> achieved_omega;     // rad/s
    std::vector<double> residual_C1;        // V/m at each well
    std::vector<double> C2;                 // V/m^2 (signed)
    std::vector<double> C3;                 // V/m^3
    std::vector<double> C4;                 // V/m^4
    double objective = 0.0;                 // ||A v - b||^2 of the linear stage
};

struct WellReport {
    std::vector<double> positions; // m, recomputed from scratch
    std::vector<double> omega_z;   // rad/s, per assigned species
    std::vector<double> C2, C3, C4;
    double separation = 0.0;  // m (0 for a single well)
    double well_depth = 0.0;  // V, barrier from shallower well to the saddle
};

// Two-stage design: exact linear solve for voltages at fixed well positions
// (voltage-to-coefficient map is linear by superposition), then simplex
// refinement of the constraint positions if the realized wells drift.
WellSolution design_wells(const GeometryConfig& geometry, const WellConfig& spec,
                          const Config& cfg);

// Recomputes the wells from scratch from the stored voltages and checks the
// solution record; throws InconsistentReportError on disagreement.
WellReport well_report(const WellSolution& solution, const GeometryConfig& geometry,
                       const WellConfig& spec, const Config& cfg);

} // namespace trapstack
