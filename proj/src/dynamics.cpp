#include "rmtdeco/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rmtdeco/errors.hpp"

namespace rmtdeco {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMajorC = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::VectorXd random_unit_vector(std::size_t n, RngStream& rng) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (auto& x : v) x = rng.normal();
    const double norm = v.norm();
    // A zero Gaussian vector has probability zero; retry keeps the contract.
    if (norm == 0.0) return random_unit_vector(n, rng);
    return v / norm;
}

void require_size(const SpectralDecomposition& decomp, std::size_t expected) {
    const auto n = static_cast<Eigen::Index>(expected);
    if (decomp.energies.size() != n || decomp.eigenvectors.rows() != n || decomp.eigenvectors.cols() != n)
        throw DimensionError("state dimension " + std::to_string(expected) + " does not match decomposition size " +
                             std::to_string(decomp.energies.size()));
}

}  // namespace

ProductState random_product_state(const Dimensions& dims, RngStream& rng) {
    if (dims.n == 0 || dims.m == 0) throw DimensionError("random_product_state: empty factor");
    ProductState p;
    p.left = random_unit_vector(dims.n, rng);
    p.right = random_unit_vector(dims.m, rng);
    return p;
}

ProductState basis_product_state(const Dimensions& dims, std::size_t i, std::size_t mu) {
    if (i >= dims.n || mu >= dims.m)
        throw DimensionError("basis_product_state: index (" + std::to_string(i) + ", " + std::to_string(mu) +
                             ") out of range for n=" + std::to_string(dims.n) + ", m=" + std::to_string(dims.m));
    ProductState p;
    p.left = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(dims.n), static_cast<Eigen::Index>(i));
    p.right = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(dims.m), static_cast<Eigen::Index>(mu));
    return p;
}

Eigen::VectorXd tensor_real(const ProductState& p) {
    const Eigen::Index n = p.left.size();
    const Eigen::Index m = p.right.size();
    Eigen::VectorXd out(n * m);
    for (Eigen::Index i = 0; i < n; ++i) out.segment(i * m, m) = p.left(i) * p.right;
    return out;
}

PureState tensor(const ProductState& p) {
    return {tensor_real(p).cast<std::complex<double>>(), p.dims()};
}

PureState evolve(const SpectralDecomposition& decomp, const PureState& psi0, double t) {
    require_size(decomp, psi0.dims.total());
    if (psi0.amplitudes.size() != static_cast<Eigen::Index>(psi0.dims.total()))
        throw DimensionError("evolve: amplitude count does not match dims");
    const auto& o = decomp.eigenvectors;
    Eigen::VectorXcd coeff = o.transpose().cast<std::complex<double>>() * psi0.amplitudes;
    for (Eigen::Index a = 0; a < coeff.size(); ++a)
        coeff(a) *= std::polar(1.0, -decomp.energies(a) * t);
    return {o.cast<std::complex<double>>() * coeff, psi0.dims};
}

double purity(const PureState& psi) {
    const auto n = static_cast<Eigen::Index>(psi.dims.n);
    const auto m = static_cast<Eigen::Index>(psi.dims.m);
    if (psi.amplitudes.size() != n * m) throw DimensionError("purity: amplitude count does not match dims");
    const double norm2 = psi.amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-8) throw std::domain_error("purity: state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
    Eigen::Map<const RowMajorC> c(psi.amplitudes.data(), n, m);
    const Eigen::MatrixXcd gram = n <= m ? Eigen::MatrixXcd(c * c.adjoint()) : Eigen::MatrixXcd(c.adjoint() * c);
    return gram.squaredNorm();
}

double linear_entropy(const PureState& psi) { return 1.0 - purity(psi); }

double purity_of(const Dimensions& dims, const Eigen::Ref<const Eigen::VectorXd>& re,
                 const Eigen::Ref<const Eigen::VectorXd>& im) {
    const auto n = static_cast<Eigen::Index>(dims.n);
    const auto m = static_cast<Eigen::Index>(dims.m);
    Eigen::Map<const RowMajor> a(re.data(), n, m);
    Eigen::Map<const RowMajor> b(im.data(), n, m);
    // G = (A + iB)(A + iB)^dagger = (A A^T + B B^T) + i (B A^T - A B^T),
    // or the m x m counterpart when that is smaller. Both share Tr G^2.
    if (n <= m) {
        const Eigen::MatrixXd gr = a * a.transpose() + b * b.transpose();
        const Eigen::MatrixXd gi = b * a.transpose() - a * b.transpose();
        return gr.squaredNorm() + gi.squaredNorm();
    }
    const Eigen::MatrixXd gr = a.transpose() * a + b.transpose() * b;
    const Eigen::MatrixXd gi = a.transpose() * b - b.transpose() * a;
    return gr.squaredNorm() + gi.squaredNorm();
}

std::vector<double> purity_curve(const SpectralDecomposition& decomp, const Dimensions& dims,
                                 const Eigen::VectorXd& psi0, std::span<const double> times) {
    const std::size_t total = dims.total();
    require_size(decomp, total);
    if (psi0.size() != static_cast<Eigen::Index>(total)) throw DimensionError("purity_curve: state size mismatch");

    const auto& o = decomp.eigenvectors;
    const Eigen::VectorXd coeff = o.transpose() * psi0;
    const auto sz = static_cast<Eigen::Index>(total);

    std::vector<double> out(times.size());
    constexpr std::size_t kBlock = 128;
    Eigen::MatrixXd phase_re, phase_im, psi_re, psi_im;
    for (std::size_t begin = 0; begin < times.size(); begin += kBlock) {
        const std::size_t end = std::min(times.size(), begin + kBlock);
        const auto cols = static_cast<Eigen::Index>(end - begin);
        phase_re.resize(sz, cols);
        phase_im.resize(sz, cols);
        for (Eigen::Index k = 0; k < cols; ++k) {
            const double t = times[begin + static_cast<std::size_t>(k)];
            for (Eigen::Index a = 0; a < sz; ++a) {
                const double angle = decomp.energies(a) * t;
                phase_re(a, k) = std::cos(angle) * coeff(a);
                phase_im(a, k) = -std::sin(angle) * coeff(a);
            }
        }
        psi_re.noalias() = o * phase_re;
        psi_im.noalias() = o * phase_im;
        for (Eigen::Index k = 0; k < cols; ++k) {
            const std::size_t idx = begin + static_cast<std::size_t>(k);
            // t = 0 is the initial state itself; skip the O O^T round trip.
            out[idx] = times[idx] == 0.0 ? purity_of(dims, psi0, Eigen::VectorXd::Zero(sz))
                                         : purity_of(dims, psi_re.col(k), psi_im.col(k));
        }
    }
    return out;
}

}  // namespace rmtdeco
