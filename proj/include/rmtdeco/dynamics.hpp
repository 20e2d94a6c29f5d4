#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rmtdeco/model.hpp"
#include "rmtdeco/rng.hpp"

namespace rmtdeco {

/// Factorized real initial state |left> (x) |right>.
struct ProductState {
    Eigen::VectorXd left;
    Eigen::VectorXd right;

    Dimensions dims() const { return {static_cast<std::size_t>(left.size()), static_cast<std::size_t>(right.size())}; }
};

/// Normalized state on the product space, indexed by Dimensions::flat_index.
struct PureState {
    Eigen::VectorXcd amplitudes;
    Dimensions dims;
};

/// Both factors drawn from the orthogonally invariant measure (normalized
/// standard Gaussian vectors).
ProductState random_product_state(const Dimensions& dims, RngStream& rng);
ProductState basis_product_state(const Dimensions& dims, std::size_t i, std::size_t mu);

PureState tensor(const ProductState& p);
Eigen::VectorXd tensor_real(const ProductState& p);

/// psi(t) = O diag(exp(-i E t)) O^T psi(0).
PureState evolve(const SpectralDecomposition& decomp, const PureState& psi0, double t);

/// Tr[rho_1^2] for rho_1 = Tr_2 |psi><psi|, via the Gram matrix of the
/// reshaped n x m amplitude matrix. Throws std::domain_error when the state
/// norm deviates from one by more than 1e-8.
double purity(const PureState& psi);
double linear_entropy(const PureState& psi);

/// Purity of O diag(exp(-i E t)) O^T psi0 at every t, for a real psi0.
///
/// All times are propagated at once with two real matrix products, which is
/// the hot loop of the ensemble engine.
std::vector<double> purity_curve(const SpectralDecomposition& decomp, const Dimensions& dims,
                                 const Eigen::VectorXd& psi0, std::span<const double> times);

/// Purity of a state given by its real and imaginary parts, without the norm
/// check. Shared by the oracles in montecarlo.
double purity_of(const Dimensions& dims, const Eigen::Ref<const Eigen::VectorXd>& re,
                 const Eigen::Ref<const Eigen::VectorXd>& im);

}  // namespace rmtdeco
