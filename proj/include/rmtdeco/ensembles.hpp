#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rmtdeco/rng.hpp"

namespace rmtdeco {

using OrthogonalMatrix = Eigen::MatrixXd;
using SymmetricUnitaryMatrix = Eigen::MatrixXcd;

enum class SpectrumKind { GOE, Poisson, PicketFence };

std::string_view to_string(SpectrumKind kind) noexcept;
/// Accepts "goe", "poisson" (alias "poe") and "picket" (alias "picketfence").
std::optional<SpectrumKind> parse_spectrum_kind(std::string_view name) noexcept;

/// Unfolded spectrum: ascending levels with unit mean-square in the ensemble
/// average and uniform mean density on [-sqrt(3), sqrt(3)].
struct Spectrum {
    std::vector<double> levels;
    SpectrumKind kind = SpectrumKind::Poisson;

    std::size_t size() const noexcept { return levels.size(); }
};

inline constexpr double kSqrt3 = 1.7320508075688772935;

/// Scaling of the equidistant spectrum.
enum class FenceScaling {
    /// Spacing exactly 2 sqrt(3) / N; the propagator is periodic with period
    /// N pi / sqrt(3). Sample variance is (N^2 - 1) / N^2.
    UnitSpacing,
    /// Rescaled by sqrt(N^2 / (N^2 - 1)) so the sample variance is exactly 1.
    UnitVariance,
};

Spectrum sample_goe_spectrum(std::size_t n, RngStream& rng);
Spectrum sample_poisson_spectrum(std::size_t n, RngStream& rng);
Spectrum picket_fence_spectrum(std::size_t n, FenceScaling scaling = FenceScaling::UnitSpacing);
Spectrum sample_spectrum(SpectrumKind kind, std::size_t n, RngStream& rng);

/// Real symmetric GOE matrix: off-diagonal variance 1/2, diagonal variance 1,
/// so the joint eigenvalue density is proportional to
/// prod|x_i - x_j| exp(-sum x_i^2 / 2).
Eigen::MatrixXd sample_goe_matrix(std::size_t n, RngStream& rng);

/// Mean level density of the n x n GOE above, normalized to one, and its CDF.
///
/// The density is the exact finite-n one-point function
///
///   rho(x) = sum_{k<n} phi_k(x)^2
///          + sqrt(n/2) phi_{n-1}(x) [int_{-inf}^x phi_n - 1/2 int phi_n]
///          + [n odd] phi_{n-1}(x) / int phi_{n-1}
///
/// with phi_k the orthonormal Hermite functions. It is tabulated once per n on
/// a fine grid and interpolated with cubic Hermite splines; instances are
/// shared and immutable.
class GoeLevelDensity {
public:
    static const GoeLevelDensity& get(std::size_t n);

    std::size_t dimension() const noexcept { return n_; }
    /// Normalized density (integrates to 1).
    double pdf(double x) const noexcept;
    double cdf(double x) const noexcept;

    explicit GoeLevelDensity(std::size_t n);

private:
    std::size_t n_;
    double lo_;
    double step_;
    std::vector<double> pdf_;
    std::vector<double> cdf_;
};

/// Haar orthogonal matrix from QR of a Gaussian matrix, with R's diagonal
/// made positive.
OrthogonalMatrix sample_haar_orthogonal(std::size_t n, RngStream& rng);

/// Haar unitary matrix (complex Gaussian QR with unimodular phase fix).
Eigen::MatrixXcd sample_haar_unitary(std::size_t n, RngStream& rng);

/// COE matrix S = U^T U.
SymmetricUnitaryMatrix sample_coe(std::size_t n, RngStream& rng);

/// Symmetric coupling with zero diagonal and unit-variance off-diagonal
/// entries.
Eigen::MatrixXd sample_coupling(std::size_t n, RngStream& rng);

}  // namespace rmtdeco
