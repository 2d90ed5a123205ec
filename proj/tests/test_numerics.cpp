#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "trapstack/numerics.hpp"

using namespace trapstack;

TEST_CASE("fft matches the DFT of a delta") {
    std::vector<std::complex<double>> a(8, 0.0);
    a[0] = 1.0;
    fft_inplace(a);
    for (const auto& c : a) CHECK(std::abs(c - 1.0) < 1e-14);
}

TEST_CASE("fft of a pure tone concentrates in one bin") {
    const size_t n = 256;
    std::vector<std::complex<double>> a(n);
    for (size_t i = 0; i < n; ++i)
        a[i] = std::exp(std::complex<double>(0.0, 2.0 * M_PI * 5.0 * i / n));
    fft_inplace(a);
    for (size_t k = 0; k < n; ++k) {
        if (k == 5)
            CHECK(std::abs(a[k]) == doctest::Approx(double(n)).epsilon(1e-10));
        else
            CHECK(std::abs(a[k]) < 1e-9);
    }
}

TEST_CASE("estimate_peak refines off-bin frequencies below 0.1%") {
    const double fs = 1.0e6, f0 = 123456.7;
    std::vector<double> x(4096);
    for (size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2.0 * M_PI * f0 * i / fs);
    const auto peak = estimate_peak(x, 1.0 / fs, 1e4, 4e5);
    CHECK(peak.frequency == doctest::Approx(f0).epsilon(1e-3));
}

TEST_CASE("estimate_peak respects the search band") {
    const double fs = 1.0e6;
    std::vector<double> x(4096);
    for (size_t i = 0; i < x.size(); ++i)
        x[i] = std::sin(2.0 * M_PI * 1.0e5 * i / fs) +
               3.0 * std::sin(2.0 * M_PI * 3.0e5 * i / fs);
    CHECK(estimate_peak(x, 1.0 / fs, 5e4, 2e5).frequency == doctest::Approx(1e5).epsilon(1e-3));
    CHECK(estimate_peak(x, 1.0 / fs, 2e5, 4e5).frequency == doctest::Approx(3e5).epsilon(1e-3));
}

TEST_CASE("derive_seed gives distinct, stable streams") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(42, i));
    CHECK(seen.size() == 10000);
    CHECK(derive_seed(42, 7) == derive_seed(42, 7));
    CHECK(derive_seed(42, 7) != derive_seed(43, 7));
}

TEST_CASE("nelder_mead minimizes a shifted quadratic") {
    auto f = [](const std::vector<double>& x) {
        const double a = x[0] - 1.5, b = x[1] + 0.5;
        return a * a + 3.0 * b * b;
    };
    const auto r = nelder_mead(f, {0.0, 0.0}, 0.5, 1e-12, 2000);
    CHECK(r.x[0] == doctest::Approx(1.5).epsilon(1e-5));
    CHECK(r.x[1] == doctest::Approx(-0.5).epsilon(1e-5));
    CHECK(r.value < 1e-9);
}
