#include "trapstack/atomic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace trapstack {

std::vector<ZeemanState> level_energies(const FineLevel& level, double B,
                                        const PhysConstants& pc) {
    if (B < 0.0) throw std::invalid_argument("level_energies: B must be >= 0");
    const double J = level.J, I = level.I, A = level.hyperfine_A;

    struct BasisState {
        double mJ, mI;
    };
    // group the |mJ, mI> product basis by mF = mJ + mI
    std::map<long, std::vector<BasisState>> blocks; // key: round(2*mF)
    for (double mJ = -J; mJ <= J + 0.25; mJ += 1.0)
        for (double mI = -I; mI <= I + 0.25; mI += 1.0)
            blocks[std::lround(2.0 * (mJ + mI))].push_back({mJ, mI});

    std::vector<ZeemanState> states;
    states.reserve(level.dimension());
    for (auto& [key, basis] : blocks) {
        const int n = static_cast<int>(basis.size());
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            const double mJ = basis[i].mJ, mI = basis[i].mI;
            H(i, i) = A * mJ * mI +
                      (level.g_J * pc.bohr_magneton * mJ -
                       level.g_I_prime * pc.nuclear_magneton * mI) *
                          B / pc.planck;
            // J+ I- ladder term of A I.J
            for (int j = 0; j < n; ++j) {
                if (basis[j].mJ == mJ + 1.0 && basis[j].mI == mI - 1.0) {
                    const double amp = 0.5 * A *
                                       std::sqrt((J * (J + 1.0) - mJ * (mJ + 1.0)) *
                                                 (I * (I + 1.0) - mI * (mI - 1.0)));
                    H(i, j) = amp;
                    H(j, i) = amp;
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        for (int k = 0; k < n; ++k) {
            ZeemanState st;
            st.energy = es.eigenvalues()(k);
            st.mF = 0.5 * static_cast<double>(key);
            double best = -1.0;
            for (int i = 0; i < n; ++i) {
                const double w = es.eigenvectors()(i, k) * es.eigenvectors()(i, k);
                st.admixture.push_back({basis[i].mJ, basis[i].mI, w});
                if (w > best) {
                    best = w;
                    st.mJ = basis[i].mJ;
                    st.mI = basis[i].mI;
                }
            }
            states.push_back(std::move(st));
        }
    }
    std::sort(states.begin(), states.end(),
              [](const ZeemanState& a, const ZeemanState& b) { return a.energy < b.energy; });
    return states;
}

double high_field_character(const ZeemanState& state) {
    double best = 0.0;
    for (const auto& a : state.admixture) best = std::max(best, a.weight);
    return best;
}

const ZeemanState& find_state(const std::vector<ZeemanState>& states, double mJ, double mI) {
    for (const auto& s : states)
        if (s.mJ == mJ && s.mI == mI) return s;
    throw UnknownStateError("no state with dominant character |mJ=" + std::to_string(mJ) +
                            ", mI=" + std::to_string(mI) + ">");
}

double transition_frequency(const ZeemanState& lower, const ZeemanState& upper,
                            double reference) {
    return reference + upper.energy - lower.energy;
}

FineLevel make_S12(const AtomicConfig& a) {
    return {"S12", 0.5, a.gJ_S12, a.A_S12, a.nuclear_spin, a.gI_prime};
}

FineLevel make_P32(const AtomicConfig& a) {
    return {"P32", 1.5, a.gJ_P32, a.A_P32, a.nuclear_spin, a.gI_prime};
}

CoolingTransitions cooling_transitions(const AtomicConfig& a, double B,
                                       const PhysConstants& pc) {
    const auto s12 = level_energies(make_S12(a), B, pc);
    const auto p32 = level_energies(make_P32(a), B, pc);
    CoolingTransitions t;
    const auto& s_up = find_state(s12, +0.5, +1.5);
    const auto& s_dn = find_state(s12, -0.5, +1.5);
    t.cycling = transition_frequency(s_up, find_state(p32, +1.5, +1.5), a.reference_frequency);
    t.repump = transition_frequency(s_dn, find_state(p32, +0.5, +1.5), a.reference_frequency);
    t.ground_state_splitting = s_up.energy - s_dn.energy;
    return t;
}

double spin_flip_frequency(const ParticleSpecies& species, double B, const PhysConstants& pc) {
    if (!species.has_g_factor)
        throw std::invalid_argument("spin_flip_frequency: species '" + species.name +
                                    "' has no g-factor configured");
    return std::abs(species.g_factor) * pc.nuclear_magneton * B / pc.planck;
}

} // namespace trapstack
