#pragma once

#include <cstdint>

#include "trapstack/config.hpp"

namespace trapstack {

struct MalformedSequenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class StageKind {
    Probe,
    Shuttle,
    SpinToMotion,
    MotionalSwap,
    SidebandMap,
    FluorescenceReadout,
    Recool,
};

const char* stage_name(StageKind k);

struct StageModel {
    StageKind kind = StageKind::Probe;
    double duration = 0.0;         // s
    double flip_probability = 0.0; // logical bit flip during the stage
    double heating_quanta = 0.0;   // mean Poisson quanta added to the mapped mode
    double failure_probability = 0.0; // stage aborts the information path

    void validate() const;
};

struct ReadoutModel {
    double lambda_bright = 10.0;
    double lambda_dark = 1.0;
    int threshold = 4; // classified bright when photons >= threshold
    double duration = 10e-3;

    void validate() const;
};

struct StageRecord {
    StageKind kind;
    double duration = 0.0;
    bool flipped = false;
    int quanta_added = 0;
};

struct ProtocolOutcome {
    bool true_spin_up = false;
    bool inferred_spin_up = false;
    bool inferred_valid = false; // defined iff the readout stage ran
    long photons = 0;
    std::vector<StageRecord> log;
    double wall_time = 0.0; // s, sum of stage durations
};

// z0 = sqrt(hbar / (2 m omega_z))
double ground_state_size(const ParticleSpecies& species, double omega_z,
                         const PhysConstants& pc);

// Omega_sb = mu B' z0 / hbar; simplified gradient-coupling model.
double spin_motion_sideband_rate(const ParticleSpecies& species, double gradient,
                                 double omega_z, double carrier_rabi,
                                 const PhysConstants& pc);

// Samples each stage's error channel in order; readout must be last.
ProtocolOutcome run_sequence(const std::vector<StageModel>& stages, const ReadoutModel& readout,
                             bool true_spin_up, std::uint64_t seed);

struct FidelityEstimate {
    double fidelity = 0.0;
    double sigma = 0.0;    // binomial standard error
    double analytic = 0.0; // closed-form stage composition
    long trials = 0;
};

FidelityEstimate fidelity_estimate(const std::vector<StageModel>& stages,
                                   const ReadoutModel& readout, long trials,
                                   std::uint64_t seed);

// Closed-form independent-channel composition of the chain.
double analytic_fidelity(const std::vector<StageModel>& stages, const ReadoutModel& readout);

// Exact Poisson misclassification rates for a threshold readout.
double bright_misclassification(const ReadoutModel& readout); // P(photons < thr | bright)
double dark_misclassification(const ReadoutModel& readout);   // P(photons >= thr | dark)

// Threshold minimizing (eps_b + eps_d)/2 by exact scan.
int optimal_threshold(double lambda_bright, double lambda_dark, int max_threshold = 100);

struct TimingBudget {
    std::vector<std::pair<std::string, double>> entries;
    double total = 0.0; // s
};

// Sums stage durations; zero-duration swap stages take t_swap from the caller.
TimingBudget timing_budget(const std::vector<StageModel>& stages, double t_swap);

// Build the default stage list from config.
std::vector<StageModel> stages_from_config(const ProtocolConfig& p, double t_swap);
ReadoutModel readout_from_config(const ProtocolConfig& p);

} // namespace trapstack
