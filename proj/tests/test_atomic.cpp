#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "trapstack/atomic.hpp"

using namespace trapstack;

namespace {
const Config cfg = default_config();
const PhysConstants& pc = cfg.constants;
} // namespace

TEST_CASE("S1/2 splitting of the m_I=+3/2 pair at 5 T is ~140 GHz") {
    const auto states = level_energies(make_S12(cfg.atomic), 5.0, pc);
    const auto& up = find_state(states, +0.5, +1.5);
    const auto& dn = find_state(states, -0.5, +1.5);
    const double split = up.energy - dn.energy;
    CHECK(split == doctest::Approx(140e9).epsilon(1e9 / 140e9)); // +-1 GHz window
}

TEST_CASE("B = 0 reproduces the F(F+1) hyperfine formula") {
    const auto& a = cfg.atomic;
    const auto states = level_energies(make_S12(a), 0.0, pc);
    REQUIRE(states.size() == 8);
    const double I = a.nuclear_spin, J = 0.5;
    auto EF = [&](double F) {
        return 0.5 * a.A_S12 * (F * (F + 1.0) - I * (I + 1.0) - J * (J + 1.0));
    };
    std::map<double, int> counts; // energy rounded to Hz -> degeneracy
    for (const auto& s : states) counts[std::round(s.energy)]++;
    REQUIRE(counts.size() == 2);
    // A < 0: F=2 below F=1
    CHECK(counts.count(std::round(EF(2.0))) == 1);
    CHECK(counts.count(std::round(EF(1.0))) == 1);
    CHECK(counts[std::round(EF(2.0))] == 5);
    CHECK(counts[std::round(EF(1.0))] == 3);
    CHECK(std::abs((EF(1.0) - EF(2.0)) - (-2.0 * a.A_S12)) < 1.0);
    CHECK(std::abs(-2.0 * a.A_S12) == doctest::Approx(1.25e9).epsilon(1e-2));
}

TEST_CASE("A = 0 gives the exact linear Zeeman ladder") {
    FineLevel lvl = make_S12(cfg.atomic);
    lvl.hyperfine_A = 0.0;
    const double B = 3.0;
    const auto states = level_energies(lvl, B, pc);
    for (const auto& s : states) {
        const double expect =
            (lvl.g_J * pc.bohr_magneton * s.mJ - lvl.g_I_prime * pc.nuclear_magneton * s.mI) *
            B / pc.planck;
        CHECK(s.energy == doctest::Approx(expect).epsilon(1e-12));
        CHECK(high_field_character(s) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("trace is preserved block-by-block") {
    for (const auto* lvl : {"S", "P"}) {
        const FineLevel level =
            lvl[0] == 'S' ? make_S12(cfg.atomic) : make_P32(cfg.atomic);
        const auto states = level_energies(level, 5.0, pc);
        std::map<int, double> eig_sum, diag_sum; // key: 2*mF
        for (const auto& s : states) {
            eig_sum[int(std::lround(2.0 * s.mF))] += s.energy;
            // diagonal element of H at the dominant product label
            for (const auto& ad : s.admixture) {
                // reconstruct trace from eigvec weights: sum_k w_k H_kk
                const double diag =
                    level.hyperfine_A * ad.mJ * ad.mI +
                    (level.g_J * pc.bohr_magneton * ad.mJ -
                     level.g_I_prime * pc.nuclear_magneton * ad.mI) *
                        5.0 / pc.planck;
                diag_sum[int(std::lround(2.0 * s.mF))] += ad.weight * diag;
            }
        }
        for (const auto& [mf2, sum] : eig_sum) {
            const double scale = std::max(std::abs(sum), 1e3);
            CHECK(sum == doctest::Approx(diag_sum[mf2]).epsilon(1e-10).scale(scale));
        }
    }
}

TEST_CASE("eigenstates never mix different m_F") {
    const auto states = level_energies(make_P32(cfg.atomic), 5.0, pc);
    REQUIRE(states.size() == 16);
    for (const auto& s : states) {
        double wsum = 0.0;
        for (const auto& ad : s.admixture) {
            CHECK(ad.mJ + ad.mI == doctest::Approx(s.mF).epsilon(1e-12));
            wsum += ad.weight;
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("high-field character") {
    SUBCASE("stretched state is pure at any field") {
        for (double B : {0.0, 0.3, 5.0}) {
            const auto states = level_energies(make_S12(cfg.atomic), B, pc);
            CHECK(high_field_character(find_state(states, +0.5, +1.5)) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("all states are >99% pure at 5 T") {
        for (const auto& s : level_energies(make_S12(cfg.atomic), 5.0, pc))
            CHECK(high_field_character(s) > 0.99);
    }
    SUBCASE("B = 0 weights are Clebsch-Gordan squares") {
        // J=1/2, I=3/2: |<mJ=+1/2|F=I+1/2,mF>|^2 = (I+mF+1/2)/(2I+1),
        // so mF=0 blocks split 1/2:1/2 and mF=+-1 blocks 3/4:1/4
        const auto states = level_energies(make_S12(cfg.atomic), 0.0, pc);
        int halves = 0, quarters = 0;
        for (const auto& s : states)
            for (const auto& ad : s.admixture) {
                if (std::abs(s.mF) < 0.1 && std::abs(ad.weight - 0.5) < 1e-9) ++halves;
                if (std::abs(std::abs(s.mF) - 1.0) < 0.1) {
                    if (std::abs(ad.weight - 0.75) < 1e-9) ++quarters;
                    if (std::abs(ad.weight - 0.25) < 1e-9) ++quarters;
                }
            }
        CHECK(halves == 4);   // two mF=0 states, two components each
        CHECK(quarters == 8); // four mF=+-1 states, two components each
    }
}

TEST_CASE("large-B slope approaches gJ muB mJ / h") {
    const FineLevel lvl = make_S12(cfg.atomic);
    const double B = 40.0, dB = 1e-3;
    const auto lo = level_energies(lvl, B - dB, pc);
    const auto hi = level_energies(lvl, B + dB, pc);
    for (double mJ : {-0.5, 0.5})
        for (double mI : {-1.5, -0.5, 0.5, 1.5}) {
            const double slope =
                (find_state(hi, mJ, mI).energy - find_state(lo, mJ, mI).energy) / (2.0 * dB);
            const double electronic = lvl.g_J * pc.bohr_magneton * mJ / pc.planck;
            const double full =
                electronic - lvl.g_I_prime * pc.nuclear_magneton * mI / pc.planck;
            CHECK(slope == doctest::Approx(full).epsilon(1e-5)); // residual ~A^2/(gJ muB B)^2
            CHECK(slope == doctest::Approx(electronic).epsilon(1e-3)); // dominant term
        }
}

TEST_CASE("cooling and repump transitions") {
    const auto tr = cooling_transitions(cfg.atomic, 5.0, pc);
    const auto s12 = level_energies(make_S12(cfg.atomic), 5.0, pc);
    const auto p32 = level_energies(make_P32(cfg.atomic), 5.0, pc);
    const double ref = cfg.atomic.reference_frequency;

    const double cyc = transition_frequency(find_state(s12, +0.5, +1.5),
                                            find_state(p32, +1.5, +1.5), ref);
    CHECK(tr.cycling == doctest::Approx(cyc).epsilon(1e-12));
    // beam difference = S splitting minus the P3/2 (+3/2 vs +1/2) splitting
    const double p_split =
        find_state(p32, +1.5, +1.5).energy - find_state(p32, +0.5, +1.5).energy;
    CHECK(tr.cycling - tr.repump ==
          doctest::Approx(p_split - tr.ground_state_splitting).epsilon(1e-9));
    // both lasers sit within a THz of the 313 nm reference scale
    CHECK(std::abs(tr.cycling - ref) < 1e12);
}

TEST_CASE("B = 0 with A = 0 collapses both transitions onto the reference") {
    AtomicConfig a = cfg.atomic;
    a.A_S12 = 0.0;
    a.A_P32 = 0.0;
    const auto tr = cooling_transitions(a, 0.0, pc);
    CHECK(tr.cycling == doctest::Approx(a.reference_frequency).epsilon(1e-15));
    CHECK(tr.repump == doctest::Approx(a.reference_frequency).epsilon(1e-15));
}

TEST_CASE("proton spin-flip frequency at 5 T") {
    const auto& p = cfg.lookup("proton");
    const double f = spin_flip_frequency(p, 5.0, pc);
    const double expect = p.g_factor * pc.nuclear_magneton * 5.0 / pc.planck;
    CHECK(f == doctest::Approx(expect).epsilon(1e-12));
    // 100 MHz regime: a meters-scale wavelength
    CHECK(f > 1e8);
    CHECK(f < 1e9);
    CHECK(pc.speed_of_light / f > 1.0);
}

TEST_CASE("unknown state lookup throws") {
    const auto states = level_energies(make_S12(cfg.atomic), 5.0, pc);
    CHECK_THROWS_AS(find_state(states, +1.5, +1.5), UnknownStateError);
}
