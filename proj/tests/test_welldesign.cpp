#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "trapstack/welldesign.hpp"

using namespace trapstack;

TEST_CASE("reference double well: proton + Be+ at 2pi*4 MHz, 300 um apart") {
    const auto cfg = default_config(); // wells preloaded with this target
    const auto sol = design_wells(cfg.geometry, cfg.wells, cfg);
    const auto rep = well_report(sol, cfg.geometry, cfg.wells, cfg);

    REQUIRE(rep.positions.size() == 2);
    CHECK(std::abs(rep.separation - 300e-6) < 1e-6);
    for (size_t i = 0; i < 2; ++i)
        CHECK(rep.omega_z[i] ==
              doctest::Approx(cfg.wells.wells[i].omega_z).epsilon(1e-3));
    for (double v : sol.voltages) CHECK(std::abs(v) <= cfg.wells.voltage_bound + 1e-9);

    // equal frequencies at unequal masses require C2 proportional to mass
    const auto& mp = cfg.lookup("proton").mass;
    const auto& mb = cfg.lookup("Be9_ion").mass;
    CHECK(rep.C2[1] / rep.C2[0] == doctest::Approx(mb / mp).epsilon(5e-3));
    CHECK(mb / mp == doctest::Approx(8.9466).epsilon(1e-4));
    CHECK(rep.well_depth > 0.0);
}

TEST_CASE("single centered well is under-constrained and accurate") {
    auto cfg = default_config();
    cfg.wells.wells = {{0.0, "proton", 2.0 * M_PI * 2.0e6}};
    const auto sol = design_wells(cfg.geometry, cfg.wells, cfg);
    REQUIRE(sol.achieved_omega.size() == 1);
    CHECK(sol.achieved_omega[0] == doctest::Approx(2.0 * M_PI * 2.0e6).epsilon(1e-3));
    CHECK(std::abs(sol.residual_C1[0]) < 1e-3); // V/m
    CHECK(std::abs(sol.achieved_positions[0]) < 1e-7);
}

TEST_CASE("antiproton well is a potential hill, Be well a minimum") {
    auto cfg = default_config();
    cfg.wells.wells = {{-150e-6, "antiproton", 2.0 * M_PI * 4.0e6},
                       {+150e-6, "Be9_ion", 2.0 * M_PI * 4.0e6}};
    const auto sol = design_wells(cfg.geometry, cfg.wells, cfg);
    const auto rep = well_report(sol, cfg.geometry, cfg.wells, cfg);
    REQUIRE(rep.C2.size() == 2);
    CHECK(rep.C2[0] < 0.0); // q < 0 confined at a maximum of Phi
    CHECK(rep.C2[1] > 0.0);
    const auto& pbar = cfg.lookup("antiproton");
    const auto& be = cfg.lookup("Be9_ion");
    CHECK(pbar.charge * rep.C2[0] > 0.0);
    CHECK(be.charge * rep.C2[1] > 0.0);
    for (size_t i = 0; i < 2; ++i)
        CHECK(rep.omega_z[i] == doctest::Approx(2.0 * M_PI * 4.0e6).epsilon(1e-3));
}

TEST_CASE("voltage scaling scales C_k linearly and omega by sqrt(s)") {
    const auto cfg = default_config();
    const auto sol = design_wells(cfg.geometry, cfg.wells, cfg);

    const auto stack1 = ElectrodeStack::uniform(cfg.geometry, sol.voltages);
    auto scaled = sol.voltages;
    const double s = 0.25;
    for (auto& v : scaled) v *= s;
    const auto stack2 = ElectrodeStack::uniform(cfg.geometry, scaled);
    const auto p1 = solve_potential(stack1, cfg.geometry.modes);
    const auto p2 = solve_potential(stack2, cfg.geometry.modes);
    for (double z : {-150e-6, -40e-6, 100e-6, 150e-6}) {
        for (int k = 1; k <= 3; ++k)
            CHECK(p2.axial_derivative(z, k) ==
                  doctest::Approx(s * p1.axial_derivative(z, k)).epsilon(1e-10));
    }
    const auto& proton = cfg.lookup("proton");
    const double w1 = curvature_to_frequency(0.5 * p1.axial_derivative(-150e-6, 2), proton);
    const double w2 = curvature_to_frequency(0.5 * p2.axial_derivative(-150e-6, 2), proton);
    CHECK(w2 == doctest::Approx(std::sqrt(s) * w1).epsilon(1e-10));
}

TEST_CASE("report path is idempotent: re-solving reproduces the record") {
    const auto cfg = default_config();
    const auto sol = design_wells(cfg.geometry, cfg.wells, cfg);
    const auto r1 = well_report(sol, cfg.geometry, cfg.wells, cfg);
    const auto r2 = well_report(sol, cfg.geometry, cfg.wells, cfg);
    for (size_t i = 0; i < r1.positions.size(); ++i) {
        CHECK(r1.positions[i] == r2.positions[i]);
        CHECK(r1.omega_z[i] == r2.omega_z[i]);
        CHECK(std::abs(r1.positions[i] - sol.achieved_positions[i]) < 1e-7);
    }
    CHECK(r1.separation ==
          doctest::Approx(std::abs(r1.positions[1] - r1.positions[0])).epsilon(1e-12));
}

TEST_CASE("symmetric same-species double well has mirrored C3") {
    auto cfg = default_config();
    cfg.wells.wells = {{-150e-6, "proton", 2.0 * M_PI * 4.0e6},
                       {+150e-6, "proton", 2.0 * M_PI * 4.0e6}};
    const auto sol = design_wells(cfg.geometry, cfg.wells, cfg);
    const auto rep = well_report(sol, cfg.geometry, cfg.wells, cfg);
    REQUIRE(rep.C3.size() == 2);
    const double scale = std::max(std::abs(rep.C3[0]), 1.0);
    CHECK(rep.C3[0] == doctest::Approx(-rep.C3[1]).epsilon(1e-3).scale(scale));
}

TEST_CASE("well outside the stack is rejected") {
    auto cfg = default_config();
    cfg.wells.wells = {{5e-3, "proton", 2.0 * M_PI * 4.0e6}};
    CHECK_THROWS(design_wells(cfg.geometry, cfg.wells, cfg));
}

TEST_CASE("tampered solution record trips the consistency check") {
    const auto cfg = default_config();
    auto sol = design_wells(cfg.geometry, cfg.wells, cfg);
    sol.achieved_positions[0] += 5e-6;
    CHECK_THROWS_AS(well_report(sol, cfg.geometry, cfg.wells, cfg), InconsistentReportError);
}
