#include "trapstack/modes.hpp"

#include <cmath>
#include <complex>

namespace trapstack {

ModeSet eigenfrequencies(const ParticleSpecies& species, double B0, double omega_z) {
    if (!(B0 > 0.0)) throw std::invalid_argument("eigenfrequencies: B0 must be > 0");
    if (!(omega_z > 0.0)) throw std::invalid_argument("eigenfrequencies: omega_z must be > 0");
    const double omega_c = std::abs(species.charge) * B0 / species.mass;
    const double disc = omega_c * omega_c / 4.0 - omega_z * omega_z / 2.0;
    if (disc < 0.0)
        throw InstabilityError("radial confinement lost: omega_c^2 < 2 omega_z^2 for species '" +
                               species.name + "'");
    const double root = std::sqrt(disc);
    return {omega_c / 2.0 + root, omega_c / 2.0 - root, omega_z, omega_c};
}

std::array<double, 3> SolvedField::efield(const std::array<double, 3>& r) const {
    const double rho = std::hypot(r[0], r[1]);
    auto [e_rho, e_z] = sol_->field_at(rho, r[2]);
    if (rho == 0.0) return {0.0, 0.0, e_z};
    return {e_rho * r[0] / rho, e_rho * r[1] / rho, e_z};
}

double SolvedField::phi(const std::array<double, 3>& r) const {
    return sol_->evaluate(std::hypot(r[0], r[1]), r[2]);
}

void SolvedField::check_domain(const std::array<double, 3>& r) const {
    if (std::hypot(r[0], r[1]) >= sol_->radius || std::abs(r[2]) >= sol_->length / 2.0)
        throw DomainEscapeError("particle left the trap interior");
}

Trajectory integrate_trajectory(const ParticleSpecies& species, double B0,
                                const FieldSource& field, const TrajectoryState& initial,
                                double dt, long steps, long sample_stride) {
    if (steps < 1 || sample_stride < 1)
        throw std::invalid_argument("integrate_trajectory: bad step counts");
    const double qm = species.charge / species.mass;
    const double omega_c = std::abs(qm) * B0;
    if (omega_c * dt >= 0.2)
        throw ResolutionError("dt too large: omega_c*dt must stay below 0.2");

    const double theta = qm * B0 * dt; // signed rotation angle per step
    const double c = std::cos(theta), s = std::sin(theta);

    std::array<double, 3> r = initial.position;
    std::array<double, 3> v = initial.velocity;
    double t = initial.time;

    Trajectory traj;
    traj.dt = dt * static_cast<double>(sample_stride);
    const size_t nsamp = static_cast<size_t>(steps / sample_stride) + 1;
    for (auto* vec : {&traj.t, &traj.x, &traj.y, &traj.z, &traj.vx, &traj.vy, &traj.vz})
        vec->reserve(nsamp);

    auto record = [&]() {
        traj.t.push_back(t);
        traj.x.push_back(r[0]);
        traj.y.push_back(r[1]);
        traj.z.push_back(r[2]);
        traj.vx.push_back(v[0]);
        traj.vy.push_back(v[1]);
        traj.vz.push_back(v[2]);
    };
    record();

    for (long step = 0; step < steps; ++step) {
        for (int i = 0; i < 3; ++i) r[i] += 0.5 * dt * v[i];
        auto E = field.efield(r);
        for (int i = 0; i < 3; ++i) v[i] += 0.5 * dt * qm * E[i];
        // exact rotation about z: dv/dt = qm (v x B)
        const double vx = c * v[0] + s * v[1];
        const double vy = -s * v[0] + c * v[1];
        v[0] = vx;
        v[1] = vy;
        for (int i = 0; i < 3; ++i) v[i] += 0.5 * dt * qm * E[i];
        for (int i = 0; i < 3; ++i) r[i] += 0.5 * dt * v[i];
        t = initial.time + (step + 1) * dt;
        field.check_domain(r);
        if ((step + 1) % sample_stride == 0) record();
    }
    return traj;
}

ModeEnergies mode_energies(const Trajectory& traj, const ParticleSpecies& species,
                           const ModeSet& modes) {
    if (traj.size() < 4) throw InsufficientSpanError("trajectory too short");
    const double span = traj.t.back() - traj.t.front();
    const double slowest = std::min({modes.omega_minus, modes.omega_z});
    if (span * slowest < 10.0 * 2.0 * M_PI)
        throw InsufficientSpanError("trajectory must span >= 10 periods of the slowest mode");

    const double sign = species.charge > 0.0 ? 1.0 : -1.0;
    const double wp = modes.omega_plus, wm = modes.omega_minus, wz = modes.omega_z;

    double az2 = 0.0, rp2 = 0.0, rm2 = 0.0;
    const std::complex<double> i1(0.0, 1.0);
    for (size_t k = 0; k < traj.size(); ++k) {
        az2 += traj.z[k] * traj.z[k] + std::pow(traj.vz[k] / wz, 2);
        // positive charges rotate as e^{-i w t}; mirror y for negative ones
        std::complex<double> w(traj.x[k], sign * traj.y[k]);
        std::complex<double> V(traj.vx[k], sign * traj.vy[k]);
        std::complex<double> Wp = (V + i1 * wm * w) / (i1 * (wm - wp));
        std::complex<double> Wm = (V + i1 * wp * w) / (i1 * (wp - wm));
        rp2 += std::norm(Wp);
        rm2 += std::norm(Wm);
    }
    const double n = static_cast<double>(traj.size());
    az2 /= n;
    rp2 /= n;
    rm2 /= n;

    ModeEnergies e;
    e.amp_z = std::sqrt(az2);
    e.amp_plus = std::sqrt(rp2);
    e.amp_minus = std::sqrt(rm2);
    e.E_z = 0.5 * species.mass * wz * wz * az2;
    e.E_plus = 0.5 * species.mass * wp * (wp - wm) * rp2;
    e.E_minus = 0.5 * species.mass * wm * (wm - wp) * rm2; // negative by convention
    return e;
}

} // namespace trapstack
