#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "rmtdeco/ensembles.hpp"
#include "rmtdeco/rng.hpp"

namespace rmtdeco {

/// Bipartite dimensions. Product-basis state |i, mu> sits at flat index
/// i * m + mu.
struct Dimensions {
    std::size_t n = 1;  ///< central system
    std::size_t m = 1;  ///< environment

    Dimensions() = default;
    Dimensions(std::size_t n_, std::size_t m_);

    std::size_t total() const noexcept { return n * m; }
    std::size_t flat_index(std::size_t i, std::size_t mu) const noexcept { return i * m + mu; }

    friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

/// Total Hamiltonian O E O^T drawn as a single N-dimensional ensemble.
struct StrongCouplingSpec {
    Dimensions dims;
    SpectrumKind kind = SpectrumKind::GOE;

    friend bool operator==(const StrongCouplingSpec&, const StrongCouplingSpec&) = default;
};

/// H = (h1 + h2 + lambda V) / sqrt(1 + lambda^2 (N - 1)) in the product basis.
struct WeakCouplingSpec {
    Dimensions dims;
    SpectrumKind kind1 = SpectrumKind::GOE;
    SpectrumKind kind2 = SpectrumKind::GOE;
    double lambda = 0.0;

    friend bool operator==(const WeakCouplingSpec&, const WeakCouplingSpec&) = default;
};

/// Eigenvalues and eigenvectors of H. Column alpha of `eigenvectors` is the
/// eigenvector for energies[alpha]; rows are flat product indices.
struct SpectralDecomposition {
    Eigen::VectorXd energies;
    OrthogonalMatrix eigenvectors;

    std::size_t size() const noexcept { return static_cast<std::size_t>(energies.size()); }
};

SpectralDecomposition build_strong(const StrongCouplingSpec& spec, RngStream& rng);
SpectralDecomposition build_weak(const WeakCouplingSpec& spec, RngStream& rng);

/// The weak-coupling Hamiltonian itself, before diagonalization.
Eigen::MatrixXd weak_hamiltonian(const WeakCouplingSpec& spec, RngStream& rng);

/// O diag(E) O^T.
Eigen::MatrixXd heff_matrix(const SpectralDecomposition& decomp);

/// Symmetric eigendecomposition, ascending energies.
SpectralDecomposition diagonalize(const Eigen::MatrixXd& h);

/// Subsystem spectrum for the weak-coupling model: unfolded, then scaled to
/// variance 1/2 (support +-sqrt(3/2)).
Spectrum sample_subsystem_spectrum(SpectrumKind kind, std::size_t n, RngStream& rng);

}  // namespace rmtdeco
