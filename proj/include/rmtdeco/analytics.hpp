#pragma once

#include <cstddef>

namespace rmtdeco::analytics {

/// Characteristic times for an N-level spectrum of length 2 sqrt(3).
struct TimeScales {
    double inverse_spectrum_length;  ///< 1 / (2 sqrt 3)
    double first_minimum_time;       ///< pi / sqrt 3, first filling of the unit circle
    double heisenberg_time;          ///< N pi / sqrt 3 = 2 pi / d
    double partial_revival_time;     ///< heisenberg_time / 2
    double mean_spacing;             ///< d = 2 sqrt 3 / N
};

/// Four-phase energy averages for an uncorrelated uniform spectrum.
struct SpectralAverages {
    double s1, s2, s3, s4, s5;
};

/// Fourier transform of the uniform density on [-sqrt 3, sqrt 3]:
/// sin(sqrt(3) t) / (sqrt(3) t).
double f_uniform(double t) noexcept;

SpectralAverages spectral_averages(double t) noexcept;

/// Coefficient c in I(t) ~ 1 - c t^2:
/// c = 2 <E^2> (1 - (n + m + 1) / (N + 2)).
double short_time_coefficient(std::size_t n, std::size_t m, double mean_square_energy = 1.0);
/// 1 - short_time_coefficient(n, m) t^2 at unit energy variance.
double short_time_purity(double t, std::size_t n, std::size_t m);

/// Purity at the first minimum for COE spectral correlations.
double i_min_coe(std::size_t n, std::size_t m);
/// Long-time plateau of the ensemble-averaged purity.
double i_infinity(std::size_t n, std::size_t m);

/// <E^2> of the unnormalized weak-coupling Hamiltonian: 1/2 + 1/2 + lambda^2 (N - 1).
double weak_variance(double lambda, std::size_t total_dim);

TimeScales time_scales(std::size_t total_dim);

}  // namespace rmtdeco::analytics
