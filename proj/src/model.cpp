#include "rmtdeco/model.hpp"

#include <cmath>
#include <string>

#include "rmtdeco/errors.hpp"

namespace rmtdeco {

Dimensions::Dimensions(std::size_t n_, std::size_t m_) : n(n_), m(m_) {
    if (n == 0 || m == 0)
        throw DimensionError("dimensions must be positive (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
}

namespace {

void check(const Dimensions& dims) {
    if (dims.n == 0 || dims.m == 0) throw DimensionError("dimensions must be positive");
}

}  // namespace

SpectralDecomposition diagonalize(const Eigen::MatrixXd& h) {
    if (h.rows() != h.cols() || h.rows() == 0) throw DimensionError("diagonalize: matrix must be square and non-empty");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("diagonalize: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

SpectralDecomposition build_strong(const StrongCouplingSpec& spec, RngStream& rng) {
    check(spec.dims);
    const std::size_t total = spec.dims.total();
    const Spectrum spectrum = sample_spectrum(spec.kind, total, rng);
    SpectralDecomposition out;
    out.energies = Eigen::Map<const Eigen::VectorXd>(spectrum.levels.data(), static_cast<Eigen::Index>(total));
    out.eigenvectors = sample_haar_orthogonal(total, rng);
    return out;
}

Spectrum sample_subsystem_spectrum(SpectrumKind kind, std::size_t n, RngStream& rng) {
    Spectrum s = sample_spectrum(kind, n, rng);
    const double half = std::sqrt(0.5);
    for (auto& e : s.levels) e *= half;
    return s;
}

Eigen::MatrixXd weak_hamiltonian(const WeakCouplingSpec& spec, RngStream& rng) {
    check(spec.dims);
    if (!(spec.lambda >= 0.0) || !std::isfinite(spec.lambda))
        throw std::invalid_argument("build_weak: lambda must be finite and non-negative");
    const auto& dims = spec.dims;
    const Spectrum e1 = sample_subsystem_spectrum(spec.kind1, dims.n, rng);
    const Spectrum e2 = sample_subsystem_spectrum(spec.kind2, dims.m, rng);
    const std::size_t total = dims.total();
    const auto sz = static_cast<Eigen::Index>(total);

    Eigen::MatrixXd h = spec.lambda * sample_coupling(total, rng);
    for (std::size_t i = 0; i < dims.n; ++i)
        for (std::size_t mu = 0; mu < dims.m; ++mu) {
            const auto k = static_cast<Eigen::Index>(dims.flat_index(i, mu));
            h(k, k) += e1.levels[i] + e2.levels[mu];
        }
    const double variance = 1.0 + spec.lambda * spec.lambda * static_cast<double>(sz - 1);
    return h / std::sqrt(variance);
}

SpectralDecomposition build_weak(const WeakCouplingSpec& spec, RngStream& rng) {
    return diagonalize(weak_hamiltonian(spec, rng));
}

Eigen::MatrixXd heff_matrix(const SpectralDecomposition& decomp) {
    const auto& o = decomp.eigenvectors;
    if (o.rows() != decomp.energies.size() || o.cols() != decomp.energies.size())
        throw DimensionError("heff_matrix: eigenvector matrix does not match energy count");
    Eigen::MatrixXd h = o * decomp.energies.asDiagonal() * o.transpose();
    // Exact symmetry; the product above is symmetric only up to rounding.
    return 0.5 * (h + h.transpose());
}

}  // namespace rmtdeco
