#include "trapstack/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trapstack {

void fft_inplace(std::vector<std::complex<double>>& a) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: size must be a power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (size_t k = 0; k < len / 2; ++k) {
                auto u = a[i + k];
                auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

std::vector<std::complex<double>> fft_real(std::span<const double> x) {
    size_t n = 1;
    while (n < x.size()) n <<= 1;
    std::vector<std::complex<double>> a(n, 0.0);
    for (size_t i = 0; i < x.size(); ++i) a[i] = x[i];
    fft_inplace(a);
    return a;
}

namespace {
std::vector<double> hann_window(std::span<const double> x) {
    const size_t n = x.size();
    std::vector<double> w(n);
    for (size_t i = 0; i < n; ++i)
        w[i] = x[i] * 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1)));
    return w;
}
} // namespace

SpectrumPeak estimate_peak(std::span<const double> x, double dt, double f_lo, double f_hi) {
    if (x.size() < 8) throw std::invalid_argument("estimate_peak: signal too short");
    auto spec = fft_real(hann_window(x));
    const size_t n = spec.size();
    const double df = 1.0 / (static_cast<double>(n) * dt);
    size_t i_lo = std::max<size_t>(1, static_cast<size_t>(std::ceil(f_lo / df)));
    size_t i_hi = std::min(n / 2 - 1, static_cast<size_t>(std::floor(f_hi / df)));
    if (i_lo >= i_hi) throw std::invalid_argument("estimate_peak: empty frequency band");
    size_t best = i_lo;
    for (size_t i = i_lo; i <= i_hi; ++i)
        if (std::abs(spec[i]) > std::abs(spec[best])) best = i;

    // parabolic refinement on log magnitude
    double delta = 0.0;
    if (best > 0 && best < n / 2) {
        double ym = std::log(std::abs(spec[best - 1]) + 1e-300);
        double y0 = std::log(std::abs(spec[best]) + 1e-300);
        double yp = std::log(std::abs(spec[best + 1]) + 1e-300);
        double denom = ym - 2.0 * y0 + yp;
        if (denom < 0.0) delta = 0.5 * (ym - yp) / denom;
        delta = std::clamp(delta, -0.5, 0.5);
    }
    SpectrumPeak p;
    p.frequency = (static_cast<double>(best) + delta) * df;
    p.amplitude = std::abs(spec[best]) * 2.0 / (0.5 * static_cast<double>(x.size()));
    return p;
}

std::vector<std::pair<double, double>> amplitude_spectrum(std::span<const double> x, double dt) {
    auto spec = fft_real(hann_window(x));
    const size_t n = spec.size();
    const double df = 1.0 / (static_cast<double>(n) * dt);
    const double norm = 2.0 / (0.5 * static_cast<double>(x.size()));
    std::vector<std::pair<double, double>> out;
    out.reserve(n / 2);
    for (size_t i = 0; i < n / 2; ++i)
        out.emplace_back(i * df, std::abs(spec[i]) * norm);
    return out;
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, double tol, int max_eval) {
    const size_t n = x0.size();
    struct Vertex {
        std::vector<double> x;
        double fx;
    };
    std::vector<Vertex> simplex;
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };
    simplex.push_back({x0, eval(x0)});
    for (size_t i = 0; i < n; ++i) {
        auto x = x0;
        x[i] += step;
        simplex.push_back({x, eval(x)});
    }
    auto by_value = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };
    while (evals < max_eval) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        if (std::abs(simplex.back().fx - simplex.front().fx) <
            tol * (std::abs(simplex.front().fx) + tol))
            break;
        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) centroid[j] += simplex[i].x[j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);
        auto mix = [&](double t) {
            std::vector<double> x(n);
            for (size_t j = 0; j < n; ++j)
                x[j] = centroid[j] + t * (simplex.back().x[j] - centroid[j]);
            return x;
        };
        auto xr = mix(-1.0);
        double fr = eval(xr);
        if (fr < simplex.front().fx) {
            auto xe = mix(-2.0);
            double fe = eval(xe);
            simplex.back() = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr < simplex[n - 1].fx) {
            simplex.back() = {xr, fr};
        } else {
            auto xc = mix(0.5);
            double fc = eval(xc);
            if (fc < simplex.back().fx) {
                simplex.back() = {xc, fc};
            } else { // shrink toward best
                for (size_t i = 1; i <= n; ++i) {
                    for (size_t j = 0; j < n; ++j)
                        simplex[i].x[j] = 0.5 * (simplex[i].x[j] + simplex[0].x[j]);
                    simplex[i].fx = eval(simplex[i].x);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    return {simplex.front().x, simplex.front().fx, evals};
}

} // namespace trapstack
