#include "trapstack/photonics.hpp"

#include <cmath>

#include "trapstack/exchange.hpp" // RegimeError

namespace trapstack {

LightField sfg(const LightField& a, const LightField& b, double efficiency) {
    if (!(a.wavelength > 0.0) || !(b.wavelength > 0.0))
        throw std::invalid_argument("sfg: wavelengths must be positive");
    LightField out;
    out.wavelength = 1.0 / (1.0 / a.wavelength + 1.0 / b.wavelength);
    out.power = efficiency * std::min(a.power, b.power);
    out.bandwidth = a.bandwidth + b.bandwidth;
    return out;
}

LightField shg(const LightField& a, double efficiency) {
    if (!(a.wavelength > 0.0)) throw std::invalid_argument("shg: wavelength must be positive");
    return {a.wavelength / 2.0, efficiency * a.power, 2.0 * a.bandwidth};
}

std::vector<ChainStage> cooling_laser_chain(const LaserConfig& l) {
    LightField ir1{1050e-9, l.power_1050, 0.0};
    LightField ir2{1550e-9, l.power_1550, 0.0};
    LightField red = sfg(ir1, ir2, l.sfg_efficiency);
    LightField uv = shg(red, l.shg_313_efficiency);
    return {
        {"SFG 1050+1550 -> 626", ir1.wavelength, ir2.wavelength, red.wavelength, red.power},
        {"SHG 626 -> 313", red.wavelength, 0.0, uv.wavelength, uv.power},
    };
}

std::vector<ChainStage> photoionization_chain(const LaserConfig& l) {
    LightField ta{940e-9, l.power_940, 0.0};
    LightField blue = shg(ta, l.shg_470_efficiency);
    LightField uv = shg(blue, l.shg_235_efficiency);
    return {
        {"SHG 940 -> 470", ta.wavelength, 0.0, blue.wavelength, blue.power},
        {"SHG 470 -> 235", blue.wavelength, 0.0, uv.wavelength, uv.power},
    };
}

bool photoionization_energy_check(const LaserConfig& l, const PhysConstants& pc) {
    const auto chain = photoionization_chain(l);
    const double photon_eV =
        pc.planck * pc.speed_of_light / chain.back().wavelength_out / pc.elementary_charge;
    return 2.0 * photon_eV >= l.ionization_threshold;
}

CombPairing comb_pair(const CombSpec& comb, double splitting) {
    if (!(comb.f_rep > 0.0)) throw std::invalid_argument("comb_pair: f_rep must be > 0");
    if (!(splitting > 0.0)) throw std::invalid_argument("comb_pair: splitting must be > 0");
    CombPairing p;
    p.tooth_separation = std::lround(splitting / comb.f_rep);
    p.residual = splitting - static_cast<double>(p.tooth_separation) * comb.f_rep;
    return p;
}

CombRamanRate comb_raman_rate(const CombSpec& comb, long N, double detuning) {
    if (!(comb.sigma > 0.0)) throw std::invalid_argument("comb_raman_rate: sigma must be > 0");
    if (detuning < 5.0 * comb.sigma)
        throw RegimeError("comb_raman_rate: single-photon detuning below 5x envelope bandwidth");

    // sum teeth to +-6 sigma
    const long span = static_cast<long>(std::ceil(6.0 * comb.sigma / comb.f_rep));
    double pair_sum = 0.0, power_sum = 0.0;
    for (long n = -span - N; n <= span; ++n) {
        const double f1 = static_cast<double>(n) * comb.f_rep;
        const double f2 = static_cast<double>(n + N) * comb.f_rep;
        const double a1 = comb.rabi0 * std::exp(-f1 * f1 / (4.0 * comb.sigma * comb.sigma));
        const double a2 = comb.rabi0 * std::exp(-f2 * f2 / (4.0 * comb.sigma * comb.sigma));
        pair_sum += a1 * a2;
        power_sum += a1 * a1;
    }
    CombRamanRate r;
    const double delta_e = 2.0 * M_PI * detuning;
    r.omega_eff = pair_sum / (2.0 * delta_e);
    r.scattering_figure = power_sum / (delta_e * delta_e);
    return r;
}

} // namespace trapstack
