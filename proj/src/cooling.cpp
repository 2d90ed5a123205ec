#include "trapstack/cooling.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "trapstack/numerics.hpp"

namespace trapstack {

void CoolingBeam::validate() const {
    if (saturation < 0.0) throw std::invalid_argument("beam saturation must be >= 0");
    const double n = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                               direction[2] * direction[2]);
    if (std::abs(n - 1.0) > 1e-9)
        throw std::invalid_argument("beam direction must be a unit vector");
    if (!(wavelength > 0.0)) throw std::invalid_argument("beam wavelength must be > 0");
}

double scattering_rate(const CoolingBeam& beam, const std::array<double, 3>& velocity,
                       double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("scattering_rate: gamma must be > 0");
    const double k = 2.0 * M_PI / beam.wavelength;
    const double kv = k * (beam.direction[0] * velocity[0] + beam.direction[1] * velocity[1] +
                           beam.direction[2] * velocity[2]);
    const double x = 2.0 * (beam.detuning - kv) / gamma;
    return 0.5 * gamma * beam.saturation / (1.0 + beam.saturation + x * x);
}

double doppler_limit(double gamma, const PhysConstants& pc) {
    if (!(gamma > 0.0)) throw std::invalid_argument("doppler_limit: gamma must be > 0");
    return pc.reduced_planck * gamma / (2.0 * pc.boltzmann);
}

std::vector<CoolingBeam> default_beams(const CoolingConfig& c) {
    const double st = std::sin(c.beam_angle), ct = std::cos(c.beam_angle);
    CoolingBeam fwd{c.detuning, c.saturation, {st, 0.0, ct}, 313e-9};
    CoolingBeam bwd{c.detuning, c.saturation, {-st, 0.0, -ct}, 313e-9};
    return {fwd, bwd};
}

namespace {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::array<double, 3> isotropic_direction(std::mt19937_64& rng) {
    const double z = 1.0 - 2.0 * uniform01(rng);
    const double phi = 2.0 * M_PI * uniform01(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

} // namespace

CoolingResult simulate_doppler(const ParticleSpecies& species, double B0, double omega_z,
                               const std::vector<CoolingBeam>& beams, double gamma,
                               double duration, double dt, double initial_T, int seeds,
                               std::uint64_t master_seed, bool reemission,
                               const PhysConstants& pc) {
    if (beams.empty()) throw std::invalid_argument("simulate_doppler: no beams");
    for (const auto& b : beams) b.validate();
    bool axial_coupled = false;
    for (const auto& b : beams) axial_coupled |= std::abs(b.direction[2]) > 1e-12;
    if (!axial_coupled)
        throw GeometryError("all beams orthogonal to the axial motion: axial cooling impossible");

    const ModeSet modes = eigenfrequencies(species, B0, omega_z);
    if (std::max(modes.omega_c, omega_z) * dt >= 0.25)
        throw ResolutionError("simulate_doppler: dt does not resolve the fastest mode");

    const long steps = static_cast<long>(std::ceil(duration / dt));
    const long stride = std::max<long>(1, steps / 2000);
    const long guard = 50L * 1000L * 1000L;
    if (steps * static_cast<long>(seeds) > guard)
        throw std::invalid_argument("simulate_doppler: step budget exceeded");

    const double m = species.mass;
    const double qm = species.charge / m;
    const double C2 = m * omega_z * omega_z / (2.0 * species.charge);
    const double theta = qm * B0 * dt;
    const double crot = std::cos(theta), srot = std::sin(theta);
    const double sign = species.charge > 0.0 ? 1.0 : -1.0;
    const double wp = modes.omega_plus, wm = modes.omega_minus;

    const size_t nrec = static_cast<size_t>(steps / stride) + 1;
    CoolingResult out;
    out.t.assign(nrec, 0.0);
    out.E_axial.assign(nrec, 0.0);
    out.E_plus.assign(nrec, 0.0);
    out.E_minus.assign(nrec, 0.0);
    out.T_axial.assign(nrec, 0.0);

    std::vector<double> seed_T;
    double rate_acc = 0.0;
    long rate_n = 0;

    for (int sdx = 0; sdx < seeds; ++sdx) {
        std::mt19937_64 rng(derive_seed(master_seed, static_cast<std::uint64_t>(sdx)));

        // axial amplitude at the requested starting temperature, random phase
        const double Az = std::sqrt(2.0 * pc.boltzmann * initial_T / (m * omega_z * omega_z));
        const double ph = 2.0 * M_PI * uniform01(rng);
        std::array<double, 3> r{0.5e-6, 0.0, Az * std::sin(ph)};
        std::array<double, 3> v{0.0, 0.5e-6 * wp, Az * omega_z * std::cos(ph)};

        const double kick = pc.reduced_planck * 2.0 * M_PI / beams[0].wavelength / m;

        double tail_sum = 0.0;
        long tail_n = 0;
        size_t rec = 0;

        auto record_state = [&](long step) {
            const double Ez = 0.5 * m * v[2] * v[2] + 0.5 * m * omega_z * omega_z * r[2] * r[2];
            const std::complex<double> i1(0.0, 1.0);
            std::complex<double> w(r[0], sign * r[1]);
            std::complex<double> V(v[0], sign * v[1]);
            std::complex<double> Wp = (V + i1 * wm * w) / (i1 * (wm - wp));
            std::complex<double> Wm = (V + i1 * wp * w) / (i1 * (wp - wm));
            out.t[rec] = step * dt;
            out.E_axial[rec] += Ez;
            out.E_plus[rec] += 0.5 * m * wp * (wp - wm) * std::norm(Wp);
            out.E_minus[rec] += 0.5 * m * wm * (wm - wp) * std::norm(Wm);
            ++rec;
            if (step > steps / 2) {
                tail_sum += Ez;
                ++tail_n;
            }
        };
        record_state(0);

        for (long step = 0; step < steps; ++step) {
            for (int i = 0; i < 3; ++i) r[i] += 0.5 * dt * v[i];
            const std::array<double, 3> E{C2 * r[0], C2 * r[1], -2.0 * C2 * r[2]};
            for (int i = 0; i < 3; ++i) v[i] += 0.5 * dt * qm * E[i];
            const double vx = crot * v[0] + srot * v[1];
            const double vy = -srot * v[0] + crot * v[1];
            v[0] = vx;
            v[1] = vy;
            for (int i = 0; i < 3; ++i) v[i] += 0.5 * dt * qm * E[i];
            for (int i = 0; i < 3; ++i) r[i] += 0.5 * dt * v[i];

            for (const auto& beam : beams) {
                const double R = scattering_rate(beam, v, gamma);
                rate_acc += R;
                ++rate_n;
                if (uniform01(rng) < R * dt) {
                    for (int i = 0; i < 3; ++i) v[i] += kick * beam.direction[i];
                    if (reemission) {
                        const auto dir = isotropic_direction(rng);
                        for (int i = 0; i < 3; ++i) v[i] += kick * dir[i];
                    }
                    ++out.total_photons;
                }
            }
            if ((step + 1) % stride == 0 && rec < nrec) record_state(step + 1);
        }
        seed_T.push_back(tail_sum / static_cast<double>(tail_n) / pc.boltzmann);
    }

    const double ns = static_cast<double>(seeds);
    for (size_t i = 0; i < nrec; ++i) {
        out.E_axial[i] /= ns;
        out.E_plus[i] /= ns;
        out.E_minus[i] /= ns;
        out.T_axial[i] = out.E_axial[i] / pc.boltzmann;
    }
    double mean = 0.0;
    for (double T : seed_T) mean += T;
    mean /= ns;
    double var = 0.0;
    for (double T : seed_T) var += (T - mean) * (T - mean);
    out.equilibrium_T = mean;
    out.equilibrium_T_sigma = seeds > 1 ? std::sqrt(var / (ns - 1.0) / ns) : 0.0;
    out.mean_scattering_rate = rate_n > 0 ? rate_acc / static_cast<double>(rate_n) : 0.0;
    return out;
}

ModeEnergyState axialize(const ModeEnergyState& in, double drive_rate, double duration) {
    if (drive_rate < 0.0) throw std::invalid_argument("axialize: drive rate must be >= 0");
    if (drive_rate == 0.0 || duration <= 0.0) return in;
    ModeEnergyState out = in;
    const double decay = std::exp(-drive_rate * duration);
    out.E_minus = in.E_minus * decay; // magnitude shrinks toward zero radius
    out.E_plus = in.E_plus + std::abs(in.E_minus) * (1.0 - decay);
    return out;
}

} // namespace trapstack
