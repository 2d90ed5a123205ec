#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "trapstack/numerics.hpp"
#include "trapstack/protocol.hpp"

using namespace trapstack;

namespace {
const Config cfg = default_config();

StageModel stage(StageKind k, double flip = 0.0, double dur = 1e-3) {
    StageModel s;
    s.kind = k;
    s.duration = dur;
    s.flip_probability = flip;
    return s;
}

std::vector<StageModel> full_chain(double flip_each = 0.0) {
    return {stage(StageKind::Probe, 0.0),
            stage(StageKind::Shuttle, 0.0, 5e-3),
            stage(StageKind::SpinToMotion, flip_each),
            stage(StageKind::MotionalSwap, flip_each, 23e-3),
            stage(StageKind::SidebandMap, flip_each),
            stage(StageKind::FluorescenceReadout, 0.0, 10e-3)};
}

// exact Poisson CDF via the same recurrence the module exposes indirectly
double poisson_cdf(double lambda, int kmax) {
    double term = std::exp(-lambda), sum = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        sum += term;
        term *= lambda / (k + 1);
    }
    return sum;
}
} // namespace

TEST_CASE("axial ground-state size of the proton at 4 MHz is ~35 nm") {
    const double z0 =
        ground_state_size(cfg.lookup("proton"), 2.0 * M_PI * 4e6, cfg.constants);
    CHECK(z0 == doctest::Approx(std::sqrt(cfg.constants.reduced_planck /
                                          (2.0 * cfg.lookup("proton").mass * 2.0 * M_PI * 4e6)))
                    .epsilon(1e-12));
    CHECK(z0 == doctest::Approx(35e-9).epsilon(0.05));
}

TEST_CASE("sideband rate is linear in the gradient and vanishes at B' = 0") {
    const auto& p = cfg.lookup("proton");
    const double wz = 2.0 * M_PI * 4e6;
    const double rabi = cfg.protocol.carrier_rabi;
    CHECK(spin_motion_sideband_rate(p, 0.0, wz, rabi, cfg.constants) == 0.0);
    const double r1 = spin_motion_sideband_rate(p, 10.0, wz, rabi, cfg.constants);
    const double r2 = spin_motion_sideband_rate(p, 20.0, wz, rabi, cfg.constants);
    CHECK(r1 > 0.0);
    CHECK(r2 == doctest::Approx(2.0 * r1).epsilon(1e-12));
}

TEST_CASE("noiseless chain is always correct") {
    ReadoutModel ro;
    ro.lambda_bright = 1e4; // negligible overlap
    ro.lambda_dark = 0.0;
    ro.threshold = 100;
    const auto stages = full_chain(0.0);
    for (std::uint64_t seed = 0; seed < 50; ++seed)
        for (bool up : {false, true}) {
            const auto out = run_sequence(stages, ro, up, seed);
            CHECK(out.inferred_valid);
            CHECK(out.inferred_spin_up == up);
        }
    CHECK(analytic_fidelity(stages, ro) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero-error fidelity is exactly 1") {
    ReadoutModel ro;
    ro.lambda_bright = 50.0;
    ro.lambda_dark = 0.0;
    ro.threshold = 1; // P(0|bright) = e^-50 < 2e-22: below double resolution of 1
    const auto est = fidelity_estimate(full_chain(0.0), ro, 2000, 5);
    CHECK(est.fidelity == 1.0);
    CHECK(bright_misclassification(ro) < 1e-21);
    CHECK(dark_misclassification(ro) == 0.0);
}

TEST_CASE("exact Poisson misclassification rates at (10, 1, 4)") {
    ReadoutModel ro; // defaults are lambda 10 / 1, threshold 4
    const double eb = bright_misclassification(ro);
    const double ed = dark_misclassification(ro);
    CHECK(eb == doctest::Approx(poisson_cdf(10.0, 3)).epsilon(1e-12));
    CHECK(ed == doctest::Approx(1.0 - poisson_cdf(1.0, 3)).epsilon(1e-12));
    CHECK(eb == doctest::Approx(0.0103).epsilon(2e-2));
    CHECK(ed == doctest::Approx(0.0190).epsilon(2e-2));
}

TEST_CASE("Monte Carlo readout matches the exact rates to 3 sigma at N = 1e5") {
    ReadoutModel ro;
    // error-free mapping chain: all residual infidelity is Poisson misclassification
    const long N = 100000;
    const auto est = fidelity_estimate(full_chain(0.0), ro, N, 12345);
    const double exact =
        1.0 - 0.5 * (bright_misclassification(ro) + dark_misclassification(ro));
    CHECK(est.analytic == doctest::Approx(exact).epsilon(1e-12));
    CHECK(std::abs(est.fidelity - exact) < 3.0 * est.sigma);
    CHECK(est.sigma < 2e-3);
    CHECK(est.trials == N);
}

TEST_CASE("statistical error shrinks like 1/sqrt(N)") {
    ReadoutModel ro;
    const std::vector<StageModel> chain = full_chain(0.02);
    const auto small = fidelity_estimate(chain, ro, 1000, 7);
    const auto large = fidelity_estimate(chain, ro, 100000, 7);
    CHECK(small.sigma == doctest::Approx(10.0 * large.sigma).epsilon(0.2));
    CHECK(std::abs(large.fidelity - large.analytic) < 4.0 * large.sigma);
}

TEST_CASE("analytic composition matches MC for 20 random stage sets at 3 sigma") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> flip(0.0, 0.08), lam(5.0, 20.0);
    std::uniform_int_distribution<int> nstages(0, 5), thr(2, 6);
    int outside = 0;
    for (int set = 0; set < 20; ++set) {
        std::vector<StageModel> stages;
        const int n = nstages(rng);
        const StageKind kinds[] = {StageKind::Probe, StageKind::Shuttle,
                                   StageKind::SpinToMotion, StageKind::MotionalSwap,
                                   StageKind::SidebandMap};
        for (int i = 0; i < n; ++i) stages.push_back(stage(kinds[i], flip(rng)));
        stages.push_back(stage(StageKind::FluorescenceReadout, 0.0, 10e-3));
        ReadoutModel ro;
        ro.lambda_bright = lam(rng);
        ro.lambda_dark = 0.5;
        ro.threshold = thr(rng);
        const auto est = fidelity_estimate(stages, ro, 20000, 1000 + set);
        if (std::abs(est.fidelity - est.analytic) > 3.0 * est.sigma) ++outside;
    }
    // 3-sigma excursions are ~0.3% per set; allow one in twenty
    CHECK(outside <= 1);
}

TEST_CASE("omitting the swap stage scrambles the answer to ~0.5") {
    // a guaranteed flip models reading the wrong particle's state
    auto stages = full_chain(0.0);
    stages[3].flip_probability = 0.5;
    ReadoutModel ro;
    ro.lambda_bright = 1e3;
    ro.lambda_dark = 0.0;
    ro.threshold = 10;
    const auto est = fidelity_estimate(stages, ro, 50000, 77);
    CHECK(est.analytic == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(est.fidelity - 0.5) < 3.0 * est.sigma);
}

TEST_CASE("optimal threshold matches an exhaustive scan") {
    for (auto [lb, ld] : {std::pair{10.0, 1.0}, {20.0, 2.0}, {6.0, 0.3}, {15.0, 5.0}}) {
        const int best = optimal_threshold(lb, ld);
        ReadoutModel ro;
        ro.lambda_bright = lb;
        ro.lambda_dark = ld;
        auto cost = [&](int t) {
            ro.threshold = t;
            return bright_misclassification(ro) + dark_misclassification(ro);
        };
        for (int t = 1; t <= 100; ++t) CHECK(cost(best) <= cost(t) + 1e-15);
    }
    CHECK(optimal_threshold(10.0, 1.0) == 4);
}

TEST_CASE("timing budget") {
    SUBCASE("empty sequence totals zero") {
        const auto tb = timing_budget({}, 23e-3);
        CHECK(tb.total == 0.0);
        CHECK(tb.entries.empty());
    }
    SUBCASE("additivity and swap substitution") {
        auto stages = full_chain(0.0);
        stages[3].duration = 0.0; // defer to the exchange module's t_swap
        const double t_swap = 3.7e-3;
        const auto tb = timing_budget(stages, t_swap);
        double sum = 0.0;
        int swaps = 0;
        for (const auto& [name, d] : tb.entries) {
            sum += d;
            if (name == stage_name(StageKind::MotionalSwap)) {
                ++swaps;
                CHECK(d == doctest::Approx(t_swap).epsilon(1e-12));
            }
        }
        CHECK(swaps == 1);
        CHECK(tb.total == doctest::Approx(sum).epsilon(1e-12));
        CHECK(tb.total ==
              doctest::Approx(1e-3 + 5e-3 + 1e-3 + t_swap + 1e-3 + 10e-3).epsilon(1e-12));
    }
    SUBCASE("explicit swap duration wins over the override") {
        const auto tb = timing_budget({stage(StageKind::MotionalSwap, 0.0, 23e-3)}, 3.7e-3);
        CHECK(tb.total == doctest::Approx(23e-3).epsilon(1e-12));
    }
}

TEST_CASE("run_sequence is deterministic per seed") {
    const auto stages = full_chain(0.3);
    ReadoutModel ro;
    for (std::uint64_t seed : {1ULL, 9ULL, 42ULL}) {
        const auto a = run_sequence(stages, ro, true, seed);
        const auto b = run_sequence(stages, ro, true, seed);
        CHECK(a.inferred_spin_up == b.inferred_spin_up);
        CHECK(a.photons == b.photons);
        REQUIRE(a.log.size() == b.log.size());
        for (size_t i = 0; i < a.log.size(); ++i)
            CHECK(a.log[i].flipped == b.log[i].flipped);
    }
}

TEST_CASE("config-derived chain ends in readout and swaps in t_swap") {
    const auto stages = stages_from_config(cfg.protocol, 23e-3);
    REQUIRE(!stages.empty());
    const auto ro = readout_from_config(cfg.protocol);
    CHECK(ro.lambda_bright == cfg.protocol.lambda_bright);
    CHECK(ro.threshold == cfg.protocol.threshold);
    const auto tb = timing_budget(stages, 23e-3);
    CHECK(tb.total > 23e-3);
    const auto out = run_sequence(stages, ro, true, 3);
    CHECK(out.inferred_valid);
    CHECK(out.wall_time == doctest::Approx(tb.total).epsilon(1e-12));
}

TEST_CASE("malformed sequences throw") {
    ReadoutModel ro;
    SUBCASE("bad flip probability") {
        auto s = stage(StageKind::Probe, 1.5);
        CHECK_THROWS_AS(run_sequence({s}, ro, true, 1), MalformedSequenceError);
    }
    SUBCASE("negative duration") {
        auto s = stage(StageKind::Probe, 0.0, -1.0);
        CHECK_THROWS_AS(run_sequence({s}, ro, true, 1), MalformedSequenceError);
    }
    SUBCASE("bad readout parameters") {
        ReadoutModel bad;
        bad.lambda_bright = -1.0;
        CHECK_THROWS_AS(run_sequence({stage(StageKind::FluorescenceReadout)}, bad, true, 1),
                        MalformedSequenceError);
    }
    SUBCASE("readout must be the last stage") {
        const std::vector<StageModel> wrong{stage(StageKind::FluorescenceReadout),
                                            stage(StageKind::Recool)};
        CHECK_THROWS_AS(run_sequence(wrong, ro, true, 1), MalformedSequenceError);
    }
    SUBCASE("empty sequence rejected") {
        CHECK_THROWS_AS(run_sequence({}, ro, true, 1), MalformedSequenceError);
    }
}
