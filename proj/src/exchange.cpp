#include "trapstack/exchange.hpp"

#include <algorithm>
#include <cmath>

#include "trapstack/modes.hpp"

namespace trapstack {

CoupledPair CoupledPair::make(const ParticleSpecies& a, const ParticleSpecies& b, double d,
                              double omega_a, double omega_b, const PhysConstants& pc) {
    if (!(d > 0.0)) throw std::invalid_argument("CoupledPair: separation must be > 0");
    if (!(omega_a > 0.0) || !(omega_b > 0.0))
        throw std::invalid_argument("CoupledPair: well frequencies must be > 0");
    CoupledPair p{a, b, d, omega_a, omega_b, 0.0};
    // second mixed z-derivative of the Coulomb energy along the separation axis
    p.kappa = 2.0 * a.charge * b.charge / (4.0 * M_PI * pc.vacuum_permittivity * d * d * d);
    return p;
}

namespace {

ExchangeResult base_result(const CoupledPair& pair) {
    ExchangeResult r;
    r.kappa = pair.kappa;
    const double omega = 0.5 * (pair.omega_a + pair.omega_b);
    const double mgeo = std::sqrt(pair.species_a.mass * pair.species_b.mass);
    r.delta_omega0 = std::abs(pair.kappa) / (mgeo * omega);
    r.omega_ex = r.delta_omega0 / 2.0;
    r.t_swap = M_PI / r.delta_omega0;
    r.detuning = pair.omega_a - pair.omega_b;
    r.convention = "delta_omega = |kappa|/(sqrt(m_a m_b) omega), t_swap = pi/delta_omega";
    const double m_light = std::min(pair.species_a.mass, pair.species_b.mass);
    r.t_swap_light_mass = M_PI * m_light * omega / (2.0 * std::abs(pair.kappa));
    r.strong_coupling_warning =
        std::abs(pair.kappa) / (mgeo * omega * omega) > 1e-2;
    // leading anharmonic (d^-4) term relative to the linear coupling at z ~ d/100
    r.cubic_correction = 3.0 / 2.0 * (pair.d / 100.0) / pair.d;
    return r;
}

} // namespace

ExchangeResult exchange_rate(const CoupledPair& pair) {
    if (pair.omega_a != pair.omega_b) return detuned_transfer(pair);
    ExchangeResult r = base_result(pair);
    r.rate = r.delta_omega0;
    r.contrast = 1.0;
    return r;
}

ExchangeResult detuned_transfer(const CoupledPair& pair) {
    ExchangeResult r = base_result(pair);
    const double delta = r.detuning;
    r.rate = std::sqrt(r.delta_omega0 * r.delta_omega0 + delta * delta);
    r.contrast = r.delta_omega0 * r.delta_omega0 / (r.rate * r.rate);
    return r;
}

SwapTrace simulate_swap(const CoupledPair& pair, double E_a0, double E_b0, double duration,
                        double dt) {
    const double omega_max = std::max(pair.omega_a, pair.omega_b);
    if (omega_max * dt >= 0.2)
        throw ResolutionError("simulate_swap: dt does not resolve the well frequency");
    if (!(duration > 0.0)) throw std::invalid_argument("simulate_swap: duration must be > 0");

    const double ma = pair.species_a.mass, mb = pair.species_b.mass;
    const double ka = ma * pair.omega_a * pair.omega_a;
    const double kb = mb * pair.omega_b * pair.omega_b;
    const double kap = pair.kappa;

    double za = std::sqrt(2.0 * E_a0 / ka);
    double zb = std::sqrt(2.0 * E_b0 / kb);
    double va = 0.0, vb = 0.0;

    auto hamiltonian = [&]() {
        return 0.5 * ma * va * va + 0.5 * ka * za * za + 0.5 * mb * vb * vb +
               0.5 * kb * zb * zb - kap * za * zb;
    };
    const double H0 = hamiltonian();

    // Yoshida 4th-order composition of velocity-Verlet sub-steps
    const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
    const double w0 = 1.0 - 2.0 * w1;
    const double sub[3] = {w1 * dt, w0 * dt, w1 * dt};

    const long steps = static_cast<long>(std::ceil(duration / dt));
    const long stride = std::max<long>(1, steps / 200000);

    SwapTrace trace;
    trace.t.reserve(steps / stride + 2);
    trace.E_a.reserve(steps / stride + 2);
    trace.E_b.reserve(steps / stride + 2);

    auto record = [&](double t) {
        trace.t.push_back(t);
        trace.E_a.push_back(0.5 * ma * va * va + 0.5 * ka * za * za);
        trace.E_b.push_back(0.5 * mb * vb * vb + 0.5 * kb * zb * zb);
    };
    record(0.0);

    double drift = 0.0;
    for (long step = 0; step < steps; ++step) {
        for (double h : sub) {
            za += 0.5 * h * va;
            zb += 0.5 * h * vb;
            va += h * (-ka * za + kap * zb) / ma;
            vb += h * (-kb * zb + kap * za) / mb;
            za += 0.5 * h * va;
            zb += 0.5 * h * vb;
        }
        if ((step + 1) % stride == 0) {
            record((step + 1) * dt);
            drift = std::max(drift, std::abs(hamiltonian() - H0));
        }
    }
    trace.energy_drift = H0 != 0.0 ? drift / std::abs(H0) : drift;

    const double E_tot = E_a0 + E_b0;

    // peak transfer fraction
    double maxb = 0.0;
    for (size_t i = 0; i < trace.E_b.size(); ++i) {
        double tot = trace.E_a[i] + trace.E_b[i];
        if (tot > 0.0) maxb = std::max(maxb, trace.E_b[i] / tot);
    }
    trace.max_transfer_fraction = maxb;

    // first minimum of E_a: parabolic refinement around the sampled minimum
    if (E_tot > 0.0 && trace.E_a.size() > 4) {
        size_t imin = 0;
        for (size_t i = 1; i + 1 < trace.E_a.size(); ++i) {
            if (trace.E_a[i] <= trace.E_a[i - 1] && trace.E_a[i] <= trace.E_a[i + 1] &&
                trace.E_a[i] < 0.5 * E_a0) {
                imin = i;
                break;
            }
        }
        if (imin > 0) {
            double ym = trace.E_a[imin - 1], y0 = trace.E_a[imin], yp = trace.E_a[imin + 1];
            double denom = ym - 2.0 * y0 + yp;
            double shift = denom > 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
            trace.first_transfer_time =
                trace.t[imin] + shift * (trace.t[1] - trace.t[0]);
        }
    }

    // splitting from half-maximum crossings of the beat envelope
    if (E_a0 > 0.0 && E_b0 == 0.0) {
        const double level = 0.5 * E_a0;
        std::vector<double> crossings;
        for (size_t i = 1; i < trace.E_a.size(); ++i) {
            double a = trace.E_a[i - 1] - level, b = trace.E_a[i] - level;
            if (a == 0.0 || a * b >= 0.0) continue;
            double frac = a / (a - b);
            crossings.push_back(trace.t[i - 1] + frac * (trace.t[i] - trace.t[i - 1]));
        }
        if (crossings.size() >= 2) {
            // linear regression of crossing time vs index; slope = pi/delta_omega
            double n = static_cast<double>(crossings.size());
            double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
            for (size_t i = 0; i < crossings.size(); ++i) {
                sx += static_cast<double>(i);
                sy += crossings[i];
                sxx += static_cast<double>(i) * static_cast<double>(i);
                sxy += static_cast<double>(i) * crossings[i];
            }
            double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            trace.measured_splitting = M_PI / slope;
        }
    }
    return trace;
}

std::pair<double, double> quantum_swap_model(const CoupledPair& pair, double n_a, double n_b,
                                             double t) {
    ExchangeResult r = exchange_rate(pair);
    const double omega = 0.5 * (pair.omega_a + pair.omega_b);
    if (r.delta_omega0 / omega > 0.01)
        throw RegimeError("quantum_swap_model: outside the rotating-wave regime");
    const double c2 = std::pow(std::cos(r.omega_ex * t), 2);
    const double s2 = 1.0 - c2;
    return {n_a * c2 + n_b * s2, n_b * c2 + n_a * s2};
}

} // namespace trapstack
