#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace trapstack {

// In-place radix-2 complex FFT; size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a);

// Zero-pads to the next power of two.
std::vector<std::complex<double>> fft_real(std::span<const double> x);

struct SpectrumPeak {
    double frequency = 0.0; // Hz
    double amplitude = 0.0;
};

// Hann-windowed FFT, strongest peak in [f_lo, f_hi] refined by parabolic
// interpolation of log magnitude.
SpectrumPeak estimate_peak(std::span<const double> x, double dt, double f_lo, double f_hi);

// Amplitude spectrum (f_Hz, amplitude) of a Hann-windowed real signal.
std::vector<std::pair<double, double>> amplitude_spectrum(std::span<const double> x, double dt);

// splitmix64: deterministic seed-stream derivation for per-worker RNGs.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0xd1342543de82ef95ULL * (index + 1));
    return splitmix64(s);
}

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, double tol, int max_eval);

} // namespace trapstack
