#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "trapstack/exchange.hpp"
#include "trapstack/photonics.hpp"

using namespace trapstack;

namespace {
const Config cfg = default_config();
}

TEST_CASE("sum frequency generation") {
    LightField a{1050e-9, 1.0, 0.0}, b{1550e-9, 1.0, 0.0};
    SUBCASE("1050 + 1550 -> 625.96 nm") {
        CHECK(sfg(a, b).wavelength == doctest::Approx(625.96e-9).epsilon(1e-5));
    }
    SUBCASE("degenerate SFG is SHG") {
        CHECK(sfg(a, a).wavelength == doctest::Approx(525e-9).epsilon(1e-12));
    }
    SUBCASE("commutativity") {
        CHECK(sfg(a, b).wavelength == sfg(b, a).wavelength);
    }
    SUBCASE("frequency conservation to 1 ulp scale") {
        const auto out = sfg(a, b);
        const double fa = cfg.constants.speed_of_light / a.wavelength;
        const double fb = cfg.constants.speed_of_light / b.wavelength;
        CHECK(out.frequency(cfg.constants) == doctest::Approx(fa + fb).epsilon(1e-14));
    }
}

TEST_CASE("second harmonic generation") {
    SUBCASE("625.96 -> 312.98 nm") {
        LightField red{625.96e-9, 1.0, 0.0};
        CHECK(shg(red).wavelength == doctest::Approx(312.98e-9).epsilon(1e-12));
    }
    SUBCASE("quadrupled 940 -> 235.0 nm") {
        LightField ir{940e-9, 1.5, 0.0};
        CHECK(shg(shg(ir)).wavelength == doctest::Approx(235.0e-9).epsilon(1e-12));
    }
    SUBCASE("470 -> 235 nm") {
        LightField blue{470e-9, 0.5, 0.0};
        CHECK(shg(blue).wavelength == doctest::Approx(235.0e-9).epsilon(1e-12));
    }
}

TEST_CASE("cooling laser chain hits the design wavelengths and powers") {
    const auto chain = cooling_laser_chain(cfg.laser);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0].wavelength_out == doctest::Approx(625.96e-9).epsilon(1e-5));
    CHECK(chain[1].wavelength_out == doctest::Approx(312.98e-9).epsilon(1e-4));
    CHECK(chain[1].power_out > 0.0);
}

TEST_CASE("photoionization chain: 940 -> 470 (>=500 mW) -> 235 (>=20 mW)") {
    const auto chain = photoionization_chain(cfg.laser);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0].wavelength_out == doctest::Approx(470e-9).epsilon(1e-12));
    CHECK(chain[1].wavelength_out == doctest::Approx(235e-9).epsilon(1e-12));
    CHECK(chain[0].power_out >= 0.5);
    CHECK(chain[1].power_out >= 0.020);
    CHECK(photoionization_energy_check(cfg.laser, cfg.constants));
}

TEST_CASE("two 235 nm photons clear the 9.32 eV ionization threshold") {
    const double eV =
        2.0 * cfg.constants.planck * cfg.constants.speed_of_light / 235e-9 /
        cfg.constants.elementary_charge;
    CHECK(eV > cfg.laser.ionization_threshold);
    LaserConfig weak = cfg.laser;
    weak.ionization_threshold = eV + 0.1;
    CHECK_FALSE(photoionization_energy_check(weak, cfg.constants));
}

TEST_CASE("comb tooth pairing") {
    CombSpec comb{120e6, 957.397e12, 80e9, 1.0};
    SUBCASE("140 GHz at 120 MHz f_rep: N = 1167, residual -40 MHz") {
        const auto p = comb_pair(comb, 140e9);
        CHECK(p.tooth_separation == 1167);
        CHECK(p.residual == doctest::Approx(-40e6).epsilon(1e-9));
    }
    SUBCASE("exact multiple gives zero residual") {
        const auto p = comb_pair(comb, 1200 * 120e6);
        CHECK(p.tooth_separation == 1200);
        CHECK(p.residual == doctest::Approx(0.0).scale(120e6));
    }
    SUBCASE("residual bounded by f_rep/2 and N is the minimizer") {
        for (double delta : {1.0e9, 7.77e9, 139.183e9, 140.0e9, 55.5001e9}) {
            const auto p = comb_pair(comb, delta);
            CHECK(std::abs(p.residual) <= 60e6 + 1e-6);
            for (long dN : {-2L, -1L, 1L, 2L})
                CHECK(std::abs(delta - double(p.tooth_separation + dN) * comb.f_rep) >=
                      std::abs(p.residual) - 1e-6);
        }
    }
}

TEST_CASE("comb Raman rate") {
    CombSpec comb{120e6, 957.397e12, 80e9, 2.0 * M_PI * 50e3};
    const long N = 1167;
    SUBCASE("zero tooth amplitude gives zero rate") {
        CombSpec dark = comb;
        dark.rabi0 = 0.0;
        CHECK(comb_raman_rate(dark, N, 500e9).omega_eff == 0.0);
    }
    SUBCASE("rate scales as 1/detuning") {
        const auto r1 = comb_raman_rate(comb, N, 500e9);
        const auto r2 = comb_raman_rate(comb, N, 1000e9);
        CHECK(r1.omega_eff == doctest::Approx(2.0 * r2.omega_eff).epsilon(1e-9));
        CHECK(r1.scattering_figure ==
              doctest::Approx(4.0 * r2.scattering_figure).epsilon(1e-9));
        CHECK(r1.simplified_model);
    }
    SUBCASE("envelope bandwidth: direct summation oracle") {
        // At fixed per-tooth amplitude the pair sum grows with sigma (more
        // participating teeth); at fixed total power (rabi0^2 * sigma const)
        // the Gaussian overlap exp(-(N f_rep)^2/(8 sigma^2)) still wins, so
        // omega_eff increases with sigma either way for N f_rep ~ sigma.
        const auto wide = comb_raman_rate(comb, N, 500e9);
        CombSpec narrow = comb;
        narrow.sigma = 40e9;
        narrow.rabi0 = comb.rabi0 * std::sqrt(2.0); // same total power
        const auto nr = comb_raman_rate(narrow, N, 500e9);
        CHECK(wide.omega_eff > nr.omega_eff);
    }
    SUBCASE("regime gate: detuning below 5 sigma") {
        CHECK_THROWS_AS(comb_raman_rate(comb, N, 300e9), RegimeError);
    }
    SUBCASE("rate is symmetric under envelope reflection (N -> -N)") {
        const auto fwd = comb_raman_rate(comb, N, 500e9);
        const auto bwd = comb_raman_rate(comb, -N, 500e9);
        // +-6 sigma tooth truncation leaves a ~1e-6 edge asymmetry
        CHECK(fwd.omega_eff == doctest::Approx(bwd.omega_eff).epsilon(1e-5));
    }
}
