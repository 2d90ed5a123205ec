#include "trapstack/fieldsolver.hpp"

#include <algorithm>
#include <cmath>

namespace trapstack {

namespace {

double log_i0(double x) {
    if (x < 650.0) return std::log(std::cyl_bessel_i(0.0, x));
    // asymptotic expansion for large argument
    double inv = 1.0 / (8.0 * x);
    return x - 0.5 * std::log(2.0 * M_PI * x) + std::log1p(inv + 4.5 * inv * inv);
}

double log_i1(double x) {
    if (x < 650.0) return std::log(std::cyl_bessel_i(1.0, x));
    double inv = 1.0 / (8.0 * x);
    return x - 0.5 * std::log(2.0 * M_PI * x) + std::log1p(-3.0 * inv - 7.5 * inv * inv);
}

// I0(a)/I0(b), a <= b, overflow-safe
double ratio_i0(double a, double b) {
    if (b < 650.0) return std::cyl_bessel_i(0.0, a) / std::cyl_bessel_i(0.0, b);
    double lr = log_i0(a) - log_i0(b);
    return lr < -700.0 ? 0.0 : std::exp(lr);
}

double ratio_i1_i0(double a, double b) {
    if (a <= 0.0) return 0.0;
    if (b < 650.0) return std::cyl_bessel_i(1.0, a) / std::cyl_bessel_i(0.0, b);
    double lr = log_i1(a) - log_i0(b);
    return lr < -700.0 ? 0.0 : std::exp(lr);
}

} // namespace

ElectrodeStack ElectrodeStack::uniform(const GeometryConfig& g, std::span<const double> voltages) {
    if (static_cast<int>(voltages.size()) != g.num_electrodes)
        throw GeometryError("uniform stack: need one voltage per electrode");
    ElectrodeStack s;
    s.inner_radius = g.inner_radius;
    s.gap_width = g.gap_width;
    s.domain_length = g.domain_length();
    const double pitch = g.electrode_thickness + g.gap_width;
    const double z_first = -g.stack_length() / 2.0;
    for (int i = 0; i < g.num_electrodes; ++i) {
        double lo = z_first + i * pitch;
        s.electrodes.push_back({lo, lo + g.electrode_thickness, voltages[i]});
    }
    s.validate();
    return s;
}

void ElectrodeStack::validate() const {
    if (!(inner_radius > 0.0)) throw GeometryError("inner_radius must be > 0");
    if (gap_width < 0.0) throw GeometryError("gap_width must be >= 0");
    if (!(domain_length > 0.0)) throw GeometryError("domain_length must be > 0");
    if (electrodes.empty()) throw GeometryError("stack has no electrodes");
    const double half = domain_length / 2.0;
    for (size_t i = 0; i < electrodes.size(); ++i) {
        const auto& e = electrodes[i];
        if (!(e.z_hi > e.z_lo)) throw GeometryError("electrode with non-positive extent");
        if (e.z_lo < -half || e.z_hi > half) throw GeometryError("electrode outside domain");
        if (i > 0 && electrodes[i].z_lo < electrodes[i - 1].z_hi)
            throw GeometryError("electrodes overlap or are out of order");
    }
}

std::vector<std::pair<double, double>> ElectrodeStack::wall_profile() const {
    const double half = domain_length / 2.0;
    std::vector<std::pair<double, double>> pts;
    pts.emplace_back(-half, 0.0);
    for (const auto& e : electrodes) {
        pts.emplace_back(e.z_lo, e.voltage);
        pts.emplace_back(e.z_hi, e.voltage);
    }
    pts.emplace_back(half, 0.0);
    return pts;
}

PotentialSolution solve_potential(const ElectrodeStack& stack, int modes) {
    stack.validate();
    if (modes < 32) throw std::invalid_argument("solve_potential: modes must be >= 32");

    const double L = stack.domain_length;
    const auto wall = stack.wall_profile();

    PotentialSolution sol;
    sol.radius = stack.inner_radius;
    sol.length = L;
    sol.coeff.resize(modes);
    for (int n = 1; n <= modes; ++n) {
        const double k = n * M_PI / L;
        double integral = 0.0;
        for (size_t i = 0; i + 1 < wall.size(); ++i) {
            const double a = wall[i].first + L / 2.0;
            const double b = wall[i + 1].first + L / 2.0;
            if (b <= a) continue;
            const double va = wall[i].second, vb = wall[i + 1].second;
            integral += (va * std::cos(k * a) - vb * std::cos(k * b)) / k +
                        (vb - va) / (b - a) * (std::sin(k * b) - std::sin(k * a)) / (k * k);
        }
        sol.coeff[n - 1] = 2.0 / L * integral;
    }
    sol.axis_coeff.resize(modes);
    for (int n = 1; n <= modes; ++n) {
        const double k = n * M_PI / L;
        sol.axis_coeff[n - 1] = sol.coeff[n - 1] * ratio_i0(0.0, k * stack.inner_radius);
    }

    double tail = 0.0;
    const int tail_start = modes - std::max(1, modes / 10);
    for (int n = tail_start + 1; n <= modes; ++n)
        tail += std::abs(sol.axis_coeff[n - 1]);
    sol.truncation_estimate = tail;
    double vscale = 0.0;
    for (const auto& e : stack.electrodes) vscale = std::max(vscale, std::abs(e.voltage));
    sol.converged = tail <= 1e-6 * std::max(vscale, 1e-12);
    return sol;
}

std::vector<PotentialSolution> electrode_basis(const ElectrodeStack& stack, int modes) {
    std::vector<PotentialSolution> basis;
    basis.reserve(stack.electrodes.size());
    for (size_t j = 0; j < stack.electrodes.size(); ++j) {
        ElectrodeStack unit = stack;
        for (size_t i = 0; i < unit.electrodes.size(); ++i)
            unit.electrodes[i].voltage = (i == j) ? 1.0 : 0.0;
        basis.push_back(solve_potential(unit, modes));
    }
    return basis;
}

double PotentialSolution::evaluate(double rho, double z) const {
    const double s = z + length / 2.0;
    double phi = 0.0;
    for (size_t n = 1; n <= coeff.size(); ++n) {
        const double k = n * M_PI / length;
        const double r = ratio_i0(k * rho, k * radius);
        if (r == 0.0 && k * rho < k * radius) continue;
        phi += coeff[n - 1] * r * std::sin(k * s);
    }
    return phi;
}

double PotentialSolution::axial(double z) const { return axial_derivative(z, 0); }

double PotentialSolution::axial_derivative(double z, int order) const {
    const double s = z + length / 2.0;
    double acc = 0.0;
    for (size_t n = 1; n <= axis_coeff.size(); ++n) {
        const double k = n * M_PI / length;
        const double amp = axis_coeff[n - 1] * std::pow(k, order);
        switch (order % 4) {
            case 0: acc += amp * std::sin(k * s); break;
            case 1: acc += amp * std::cos(k * s); break;
            case 2: acc -= amp * std::sin(k * s); break;
            case 3: acc -= amp * std::cos(k * s); break;
        }
    }
    return acc;
}

std::array<double, 2> PotentialSolution::field_at(double rho, double z) const {
    const double s = z + length / 2.0;
    double e_rho = 0.0, e_z = 0.0;
    for (size_t n = 1; n <= coeff.size(); ++n) {
        const double k = n * M_PI / length;
        const double r0 = ratio_i0(k * rho, k * radius);
        const double r1 = ratio_i1_i0(k * rho, k * radius);
        e_rho -= coeff[n - 1] * k * r1 * std::sin(k * s);
        e_z -= coeff[n - 1] * k * r0 * std::cos(k * s);
    }
    return {e_rho, e_z};
}

AxialPotential axial_profile(const PotentialSolution& sol, std::span<const double> z_grid) {
    AxialPotential out;
    out.z.assign(z_grid.begin(), z_grid.end());
    out.phi.reserve(z_grid.size());
    double vscale = 0.0;
    for (double z : z_grid) {
        out.phi.push_back(sol.axial(z));
        vscale = std::max(vscale, std::abs(out.phi.back()));
    }
    // curvature floor separating genuine wells from series/end-effect residue
    const double c2_tol = 1e-4 * std::max(vscale, 1e-12) / (sol.radius * sol.radius);

    for (size_t i = 0; i + 1 < z_grid.size(); ++i) {
        double a = z_grid[i], b = z_grid[i + 1];
        double da = sol.axial_derivative(a, 1), db = sol.axial_derivative(b, 1);
        if (da == 0.0) da = 1e-300;
        if (!(da * db < 0.0)) continue;
        // bisection on the analytic series derivative
        for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
            double m = 0.5 * (a + b);
            double dm = sol.axial_derivative(m, 1);
            if (da * dm <= 0.0) b = m;
            else {
                a = m;
                da = dm;
            }
        }
        StationaryPoint p;
        p.z = 0.5 * (a + b);
        double fact = 1.0;
        for (int k = 0; k <= 4; ++k) {
            if (k > 0) fact *= k;
            p.C[k] = sol.axial_derivative(p.z, k) / fact;
        }
        if (std::abs(p.C[2]) < c2_tol) continue;
        out.points.push_back(p);
    }
    return out;
}

double curvature_to_frequency(double C2, const ParticleSpecies& species) {
    const double qc = species.charge * C2;
    if (!(qc > 0.0))
        throw AntiConfiningError("well is anti-confining for species '" + species.name +
                                 "' (q*C2 <= 0; it traps the opposite charge sign)");
    return std::sqrt(2.0 * qc / species.mass);
}

} // namespace trapstack
