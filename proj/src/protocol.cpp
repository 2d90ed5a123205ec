#include "trapstack/protocol.hpp"

#include <cmath>
#include <random>

#include "trapstack/numerics.hpp"

namespace trapstack {

const char* stage_name(StageKind k) {
    switch (k) {
        case StageKind::Probe: return "probe";
        case StageKind::Shuttle: return "shuttle";
        case StageKind::SpinToMotion: return "spin_to_motion";
        case StageKind::MotionalSwap: return "motional_swap";
        case StageKind::SidebandMap: return "sideband_map";
        case StageKind::FluorescenceReadout: return "fluorescence_readout";
        case StageKind::Recool: return "recool";
    }
    return "?";
}

void StageModel::validate() const {
    if (duration < 0.0) throw MalformedSequenceError("stage duration must be >= 0");
    for (double p : {flip_probability, failure_probability})
        if (p < 0.0 || p > 1.0)
            throw MalformedSequenceError("stage probabilities must be in [0,1]");
    if (heating_quanta < 0.0) throw MalformedSequenceError("heating quanta must be >= 0");
}

void ReadoutModel::validate() const {
    if (!(lambda_bright > lambda_dark) || lambda_dark < 0.0)
        throw MalformedSequenceError("readout: need lambda_bright > lambda_dark >= 0");
    if (threshold < 0) throw MalformedSequenceError("readout threshold must be >= 0");
}

double ground_state_size(const ParticleSpecies& species, double omega_z,
                         const PhysConstants& pc) {
    if (!(omega_z > 0.0)) throw std::invalid_argument("ground_state_size: omega_z must be > 0");
    return std::sqrt(pc.reduced_planck / (2.0 * species.mass * omega_z));
}

double spin_motion_sideband_rate(const ParticleSpecies& species, double gradient,
                                 double omega_z, double carrier_rabi,
                                 const PhysConstants& pc) {
    if (gradient < 0.0) throw std::invalid_argument("sideband rate: gradient must be >= 0");
    (void)carrier_rabi; // duration bookkeeping only; the rate model is gradient-coupled
    const double mu = species.has_magnetic_moment
                          ? std::abs(species.magnetic_moment)
                          : std::abs(species.g_factor) * pc.nuclear_magneton / 2.0;
    return mu * gradient * ground_state_size(species, omega_z, pc) / pc.reduced_planck;
}

namespace {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// CDF-inversion Poisson sampling: bit-stable across platforms
long sample_poisson(double lambda, std::mt19937_64& rng) {
    if (lambda <= 0.0) return 0;
    const double u = uniform01(rng);
    double p = std::exp(-lambda), cdf = p;
    long k = 0;
    while (u > cdf && k < 10000) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

double poisson_cdf_below(double lambda, int threshold) { // P(X < threshold)
    double p = std::exp(-lambda), cdf = 0.0;
    for (int k = 0; k < threshold; ++k) {
        cdf += p;
        p *= lambda / static_cast<double>(k + 1);
    }
    return cdf;
}

} // namespace

ProtocolOutcome run_sequence(const std::vector<StageModel>& stages, const ReadoutModel& readout,
                             bool true_spin_up, std::uint64_t seed) {
    if (stages.empty()) throw MalformedSequenceError("empty stage list");
    for (const auto& s : stages) s.validate();
    readout.validate();
    for (size_t i = 0; i < stages.size(); ++i)
        if (stages[i].kind == StageKind::FluorescenceReadout && i + 1 != stages.size())
            throw MalformedSequenceError("fluorescence_readout must be the last stage");

    std::mt19937_64 rng(seed);
    ProtocolOutcome out;
    out.true_spin_up = true_spin_up;

    long n_pbar = 0; // (anti)proton motional quanta register
    long n_be = 0;   // Be+ motional quanta register
    bool be_bright = false;
    bool mapped = false;

    for (const auto& st : stages) {
        StageRecord rec{st.kind, st.duration, false, 0};
        switch (st.kind) {
            case StageKind::Probe:
            case StageKind::Shuttle:
            case StageKind::Recool:
                break;
            case StageKind::SpinToMotion: {
                bool bit = true_spin_up;
                if (uniform01(rng) < st.flip_probability) {
                    bit = !bit;
                    rec.flipped = true;
                }
                n_pbar = bit ? 1 : 0;
                break;
            }
            case StageKind::MotionalSwap: {
                std::swap(n_pbar, n_be);
                bool bit = n_be > 0;
                if (uniform01(rng) < st.flip_probability) {
                    bit = !bit;
                    rec.flipped = true;
                    n_be = bit ? 1 : 0;
                }
                rec.quanta_added = static_cast<int>(sample_poisson(st.heating_quanta, rng));
                n_be += rec.quanta_added;
                break;
            }
            case StageKind::SidebandMap: {
                be_bright = n_be > 0; // threshold-on-n discrimination
                if (uniform01(rng) < st.flip_probability) {
                    be_bright = !be_bright;
                    rec.flipped = true;
                }
                mapped = true;
                break;
            }
            case StageKind::FluorescenceReadout: {
                const double lambda = be_bright ? readout.lambda_bright : readout.lambda_dark;
                out.photons = sample_poisson(lambda, rng);
                out.inferred_spin_up = out.photons >= readout.threshold;
                out.inferred_valid = true;
                rec.duration = readout.duration;
                break;
            }
        }
        (void)mapped;
        out.log.push_back(rec);
        out.wall_time += rec.duration;
    }
    return out;
}

double bright_misclassification(const ReadoutModel& readout) {
    return poisson_cdf_below(readout.lambda_bright, readout.threshold);
}

double dark_misclassification(const ReadoutModel& readout) {
    return 1.0 - poisson_cdf_below(readout.lambda_dark, readout.threshold);
}

double analytic_fidelity(const std::vector<StageModel>& stages, const ReadoutModel& readout) {
    // propagate P(Be register reads as 1) conditioned on each true spin
    auto propagate = [&](bool spin_up) {
        double p_pbar = 0.0, p_be = 0.0; // P(register > 0)
        double p_bright = 0.0;
        bool have_bright = false;
        for (const auto& st : stages) {
            switch (st.kind) {
                case StageKind::SpinToMotion: {
                    double b = spin_up ? 1.0 : 0.0;
                    p_pbar = b * (1.0 - st.flip_probability) + (1.0 - b) * st.flip_probability;
                    break;
                }
                case StageKind::MotionalSwap: {
                    std::swap(p_pbar, p_be);
                    p_be = p_be * (1.0 - st.flip_probability) +
                           (1.0 - p_be) * st.flip_probability;
                    const double h = 1.0 - std::exp(-st.heating_quanta);
                    p_be = p_be + (1.0 - p_be) * h;
                    break;
                }
                case StageKind::SidebandMap:
                    p_bright = p_be * (1.0 - st.flip_probability) +
                               (1.0 - p_be) * st.flip_probability;
                    have_bright = true;
                    break;
                default:
                    break;
            }
        }
        if (!have_bright) p_bright = 0.0;
        const double eps_b = bright_misclassification(readout);
        const double eps_d = dark_misclassification(readout);
        // probability the readout classifies "up"
        return p_bright * (1.0 - eps_b) + (1.0 - p_bright) * eps_d;
    };
    const double up = propagate(true);
    const double dn = propagate(false);
    return 0.5 * (up + (1.0 - dn));
}

FidelityEstimate fidelity_estimate(const std::vector<StageModel>& stages,
                                   const ReadoutModel& readout, long trials,
                                   std::uint64_t seed) {
    if (trials < 100) throw std::invalid_argument("fidelity_estimate: need >= 100 trials");
    long correct = 0;
    for (long i = 0; i < trials; ++i) {
        const bool spin_up = (i % 2) == 0;
        auto out = run_sequence(stages, readout, spin_up, derive_seed(seed, i));
        if (out.inferred_valid && out.inferred_spin_up == spin_up) ++correct;
    }
    FidelityEstimate fe;
    fe.trials = trials;
    fe.fidelity = static_cast<double>(correct) / static_cast<double>(trials);
    fe.sigma = std::sqrt(std::max(fe.fidelity * (1.0 - fe.fidelity), 1e-12) /
                         static_cast<double>(trials));
    fe.analytic = analytic_fidelity(stages, readout);
    return fe;
}

int optimal_threshold(double lambda_bright, double lambda_dark, int max_threshold) {
    int best = 0;
    double best_err = 2.0;
    for (int thr = 0; thr <= max_threshold; ++thr) {
        ReadoutModel r{lambda_bright, lambda_dark, thr, 0.0};
        const double err = 0.5 * (bright_misclassification(r) + dark_misclassification(r));
        if (err < best_err) {
            best_err = err;
            best = thr;
        }
    }
    return best;
}

TimingBudget timing_budget(const std::vector<StageModel>& stages, double t_swap) {
    TimingBudget budget;
    for (const auto& st : stages) {
        double d = st.duration;
        if (st.kind == StageKind::MotionalSwap && d == 0.0) d = t_swap;
        budget.entries.emplace_back(stage_name(st.kind), d);
        budget.total += d;
    }
    return budget;
}

std::vector<StageModel> stages_from_config(const ProtocolConfig& p, double t_swap) {
    std::vector<StageModel> stages;
    stages.push_back({StageKind::Probe, p.probe_duration, 0.0, 0.0, 0.0});
    stages.push_back({StageKind::Shuttle, p.shuttle_duration, 0.0, 0.0, 0.0});
    stages.push_back(
        {StageKind::SpinToMotion, p.spin_to_motion_duration, p.p_flip_spin_to_motion, 0.0, 0.0});
    stages.push_back({StageKind::MotionalSwap,
                      p.swap_duration > 0.0 ? p.swap_duration : t_swap, p.p_flip_swap,
                      p.heating_quanta, 0.0});
    stages.push_back({StageKind::SidebandMap, p.sideband_map_duration, p.p_flip_sideband, 0.0, 0.0});
    stages.push_back({StageKind::FluorescenceReadout, p.readout_duration, 0.0, 0.0, 0.0});
    return stages;
}

ReadoutModel readout_from_config(const ProtocolConfig& p) {
    return {p.lambda_bright, p.lambda_dark, p.threshold, p.readout_duration};
}

} // namespace trapstack
