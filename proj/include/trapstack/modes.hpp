#pragma once

#include <array>

#include "trapstack/fieldsolver.hpp"

namespace trapstack {

struct InstabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientSpanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainEscapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModeSet {
    double omega_plus = 0.0;  // modified cyclotron, rad/s
    double omega_minus = 0.0; // magnetron, rad/s
    double omega_z = 0.0;     // axial, rad/s
    double omega_c = 0.0;     // free-space cyclotron, rad/s
};

// omega_pm = omega_c/2 +- sqrt(omega_c^2/4 - omega_z^2/2)
ModeSet eigenfrequencies(const ParticleSpecies& species, double B0, double omega_z);

struct TrajectoryState {
    std::array<double, 3> position{}; // m
    std::array<double, 3> velocity{}; // m/s
    double time = 0.0;                // s
};

// Electrostatic field source for the integrator.
class FieldSource {
public:
    virtual ~FieldSource() = default;
    virtual std::array<double, 3> efield(const std::array<double, 3>& r) const = 0;
    virtual double phi(const std::array<double, 3>& r) const = 0;
    virtual void check_domain(const std::array<double, 3>& /*r*/) const {}
};

// Phi = C2 (z^2 - (x^2+y^2)/2): analytic shortcut so mode tests do not
// depend on the boundary-value solver.
class IdealQuadrupole : public FieldSource {
public:
    explicit IdealQuadrupole(double C2) : c2_(C2) {}
    std::array<double, 3> efield(const std::array<double, 3>& r) const override {
        return {c2_ * r[0], c2_ * r[1], -2.0 * c2_ * r[2]};
    }
    double phi(const std::array<double, 3>& r) const override {
        return c2_ * (r[2] * r[2] - 0.5 * (r[0] * r[0] + r[1] * r[1]));
    }

private:
    double c2_;
};

class SolvedField : public FieldSource {
public:
    explicit SolvedField(const PotentialSolution& sol) : sol_(&sol) {}
    std::array<double, 3> efield(const std::array<double, 3>& r) const override;
    double phi(const std::array<double, 3>& r) const override;
    void check_domain(const std::array<double, 3>& r) const override;

private:
    const PotentialSolution* sol_;
};

struct Trajectory {
    double dt = 0.0; // sample interval
    std::vector<double> t, x, y, z, vx, vy, vz;
    size_t size() const { return t.size(); }
};

// Split-step pusher: drift / electric kick / exact magnetic velocity rotation.
Trajectory integrate_trajectory(const ParticleSpecies& species, double B0,
                                const FieldSource& field, const TrajectoryState& initial,
                                double dt, long steps, long sample_stride = 1);

struct ModeEnergies {
    double amp_z = 0.0, amp_plus = 0.0, amp_minus = 0.0; // m
    double E_z = 0.0;     // J
    double E_plus = 0.0;  // J
    double E_minus = 0.0; // J, negative (magnetron inverted-well convention)
    double total() const { return E_z + E_plus + E_minus; }
};

// Projects a trajectory onto the analytic eigenmodes; needs >= 10 periods of
// the slowest mode.
ModeEnergies mode_energies(const Trajectory& traj, const ParticleSpecies& species,
                           const ModeSet& modes);

} // namespace trapstack
