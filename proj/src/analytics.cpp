#include "rmtdeco/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rmtdeco/ensembles.hpp"
#include "rmtdeco/errors.hpp"

namespace rmtdeco::analytics {

namespace {

void require_dims(std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) throw DimensionError("analytics: dimensions must be positive");
}

}  // namespace

double f_uniform(double t) noexcept {
    const double x = kSqrt3 * t;
    if (x == 0.0) return 1.0;
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

SpectralAverages spectral_averages(double t) noexcept {
    const double f = f_uniform(t);
    const double f2t = f_uniform(2.0 * t);
    return {f * f * f * f, f * f, f2t * f * f, 1.0, f2t * f2t};
}

double short_time_coefficient(std::size_t n, std::size_t m, double mean_square_energy) {
    require_dims(n, m);
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    return 2.0 * mean_square_energy * (1.0 - (nn + mm + 1.0) / (nn * mm + 2.0));
}

double short_time_purity(double t, std::size_t n, std::size_t m) {
    return 1.0 - short_time_coefficient(n, m) * t * t;
}

double i_min_coe(std::size_t n, std::size_t m) {
    require_dims(n, m);
    const double s = static_cast<double>(n + m);
    const double big = static_cast<double>(n * m);
    const double num = s * big * big + (3.0 * s + 2.0) * big - 2.0 * (s - 1.0);
    const double den = big * (big + 1.0) * (big + 3.0);
    return num / den;
}

double i_infinity(std::size_t n, std::size_t m) {
    require_dims(n, m);
    const double s = static_cast<double>(n + m);
    const double big = static_cast<double>(n * m);
    const double num = s * big * big * big + 3.0 * (4.0 * s + 3.0) * big * big + (35.0 * s + 57.0) * big + 48.0;
    const double den = (big + 1.0) * (big + 2.0) * (big + 4.0) * (big + 6.0);
    return num / den;
}

double weak_variance(double lambda, std::size_t total_dim) {
    if (total_dim == 0) throw DimensionError("weak_variance: N must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("weak_variance: lambda must be non-negative");
    return 0.5 + 0.5 + lambda * lambda * static_cast<double>(total_dim - 1);
}

TimeScales time_scales(std::size_t total_dim) {
    if (total_dim == 0) throw DimensionError("time_scales: N must be positive");
    const double big = static_cast<double>(total_dim);
    const double pi = std::numbers::pi;
    const double d = 2.0 * kSqrt3 / big;
    const double heisenberg = 2.0 * pi / d;
    return {1.0 / (2.0 * kSqrt3), pi / kSqrt3, heisenberg, 0.5 * heisenberg, d};
}

}  // namespace rmtdeco::analytics
