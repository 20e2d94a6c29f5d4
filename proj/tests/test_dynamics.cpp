#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rmtdeco/dynamics.hpp"
#include "rmtdeco/errors.hpp"

using namespace rmtdeco;

namespace {

constexpr int kCases = 100;

/// Dimensions in [1, 6] x [1, 6] drawn from the case stream.
Dimensions random_dims(RngStream& rng) {
    auto pick = [&] { return static_cast<std::size_t>(1 + std::floor(rng.uniform01() * 6.0)); };
    const std::size_t n = pick();
    return {n, pick()};
}

PureState random_pure_state(const Dimensions& dims, RngStream& rng) {
    return {oracle::random_state(dims.total(), rng), dims};
}

SpectralDecomposition random_decomposition(const Dimensions& dims, RngStream& rng) {
    const auto kind = rng.uniform01() < 0.5 ? SpectrumKind::GOE : SpectrumKind::Poisson;
    return build_strong({dims, kind}, rng);
}

}  // namespace

TEST_CASE("random product states") {
    RngStream one(1, 0);
    const auto p = random_product_state(Dimensions(1, 3), one);
    CHECK(std::abs(std::abs(p.left(0)) - 1.0) < 1e-15);

    for (int c = 0; c < kCases; ++c) {
        RngStream rng(2, static_cast<std::uint64_t>(c));
        const auto q = random_product_state(random_dims(rng), rng);
        CHECK(std::abs(q.left.norm() - 1.0) < 1e-12);
        CHECK(std::abs(q.right.norm() - 1.0) < 1e-12);
    }

    std::vector<double> first_sq;
    for (std::uint64_t r = 0; r < 100000; ++r) {
        RngStream rng(3, r);
        const auto q = random_product_state(Dimensions(4, 2), rng);
        first_sq.push_back(q.left(0) * q.left(0));
    }
    CHECK(oracle::summarize(first_sq).mean == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("basis product states and tensor") {
    const Dimensions dims(2, 2);
    const auto flat = tensor(basis_product_state(dims, 0, 0)).amplitudes;
    CHECK(flat == Eigen::Vector4cd(1, 0, 0, 0));
    CHECK(purity(tensor(basis_product_state(Dimensions(3, 5), 2, 4))) == 1.0);
    CHECK_THROWS_AS(basis_product_state(dims, 2, 0), DimensionError);
    CHECK_THROWS_AS(basis_product_state(dims, 0, 2), DimensionError);

    ProductState p{Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
    CHECK(tensor(p).amplitudes == Eigen::Vector4cd(0, 1, 0, 0));

    for (int c = 0; c < kCases; ++c) {
        RngStream rng(4, static_cast<std::uint64_t>(c));
        const auto q = random_product_state(Dimensions(6, 6), rng);
        const auto psi = tensor(q);
        CHECK(std::abs(psi.amplitudes.norm() - 1.0) < 1e-12);
        CHECK(purity(psi) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("purity of known states") {
    const double h = 1.0 / std::sqrt(2.0);
    PureState bell{Eigen::Vector4cd(h, 0, 0, h), Dimensions(2, 2)};
    CHECK(purity(bell) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(linear_entropy(bell) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(linear_entropy(tensor(basis_product_state(Dimensions(2, 3), 1, 1))) == 0.0);

    PureState unnormalized{Eigen::Vector4cd(1, 0, 0, 1), Dimensions(2, 2)};
    CHECK_THROWS_AS(purity(unnormalized), std::domain_error);
    PureState wrong_size{Eigen::Vector3cd(1, 0, 0), Dimensions(2, 2)};
    CHECK_THROWS_AS(purity(wrong_size), DimensionError);
}

TEST_CASE("purity agrees with the brute-force density matrix in both trace orders") {
    for (int c = 0; c < kCases; ++c) {
        RngStream rng(5, static_cast<std::uint64_t>(c));
        const Dimensions dims = random_dims(rng);
        const auto psi = random_pure_state(dims, rng);
        const double fast = purity(psi);
        const double via_rho1 = oracle::brute_force_purity(psi.amplitudes, dims.n, dims.m, true);
        const double via_rho2 = oracle::brute_force_purity(psi.amplitudes, dims.n, dims.m, false);
        CHECK(std::abs(fast - via_rho1) < 1e-12);
        CHECK(std::abs(via_rho1 - via_rho2) < 1e-12);
        CHECK(std::abs(linear_entropy(psi) + fast - 1.0) < 1e-14);
    }
}

TEST_CASE("property: purity bounds") {
    for (int c = 0; c < kCases; ++c) {
        RngStream rng(6, static_cast<std::uint64_t>(c));
        const Dimensions dims = random_dims(rng);
        const double p = purity(random_pure_state(dims, rng));
        CHECK(p >= 1.0 / static_cast<double>(std::min(dims.n, dims.m)) - 1e-10);
        CHECK(p <= 1.0 + 1e-10);
    }
}

TEST_CASE("property: invariance under local orthogonal rotations") {
    for (int c = 0; c < kCases; ++c) {
        RngStream rng(7, static_cast<std::uint64_t>(c));
        const Dimensions dims = random_dims(rng);
        const auto psi = random_pure_state(dims, rng);
        const Eigen::MatrixXd u1 = oracle::gram_schmidt_orthogonal(dims.n, rng);
        const Eigen::MatrixXd u2 = oracle::gram_schmidt_orthogonal(dims.m, rng);
        Eigen::MatrixXd local(dims.total(), dims.total());
        for (Eigen::Index i = 0; i < u1.rows(); ++i)
            for (Eigen::Index j = 0; j < u1.cols(); ++j)
                local.block(i * u2.rows(), j * u2.cols(), u2.rows(), u2.cols()) = u1(i, j) * u2;
        const PureState rotated{local.cast<std::complex<double>>() * psi.amplitudes, dims};
        CHECK(std::abs(purity(rotated) - purity(psi)) < 1e-10);
    }
}

TEST_CASE("property: evolution composes and preserves the norm") {
    for (int c = 0; c < kCases; ++c) {
        RngStream rng(8, static_cast<std::uint64_t>(c));
        const Dimensions dims = random_dims(rng);
        const auto decomp = random_decomposition(dims, rng);
        const auto psi = random_pure_state(dims, rng);
        const double t1 = rng.uniform(0.0, 20.0);
        const double t2 = rng.uniform(0.0, 20.0);
        const auto step = evolve(decomp, evolve(decomp, psi, t1), t2);
        const auto direct = evolve(decomp, psi, t1 + t2);
        CHECK((step.amplitudes - direct.amplitudes).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(std::abs(direct.amplitudes.norm() - 1.0) < 1e-10);
        CHECK((evolve(decomp, psi, 0.0).amplitudes - psi.amplitudes).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("property: a one-dimensional factor never entangles") {
    for (int c = 0; c < kCases; ++c) {
        RngStream rng(9, static_cast<std::uint64_t>(c));
        const std::size_t other = static_cast<std::size_t>(1 + std::floor(rng.uniform01() * 8.0));
        const Dimensions dims = c % 2 ? Dimensions(1, other) : Dimensions(other, 1);
        const auto decomp = random_decomposition(dims, rng);
        const auto psi = tensor(random_product_state(dims, rng));
        const double t = rng.uniform(0.0, 50.0);
        CHECK(std::abs(purity(evolve(decomp, psi, t)) - 1.0) < 1e-10);
    }
}

TEST_CASE("picket fence state returns at the Heisenberg time") {
    RngStream rng(10, 0);
    const Dimensions dims(4, 4);
    const auto decomp = build_strong({dims, SpectrumKind::PicketFence}, rng);
    const auto psi0 = tensor(random_product_state(dims, rng));
    const double heisenberg = 16.0 * std::numbers::pi / kSqrt3;
    const auto back = evolve(decomp, psi0, heisenberg);
    // Global phase only: |<psi0|psi(T)>| = 1.
    CHECK(std::abs(psi0.amplitudes.dot(back.amplitudes)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(purity(back) - 1.0) < 1e-10);
    CHECK(purity(evolve(decomp, psi0, 0.5 * heisenberg)) < 0.99);
}

TEST_CASE("evolve rejects a mismatched state") {
    RngStream rng(11, 0);
    const auto decomp = build_strong({Dimensions(2, 3), SpectrumKind::GOE}, rng);
    const auto psi = tensor(basis_product_state(Dimensions(2, 2), 0, 0));
    CHECK_THROWS_AS(evolve(decomp, psi, 1.0), DimensionError);
    const std::vector<double> times{1.0};
    CHECK_THROWS_AS(purity_curve(decomp, Dimensions(2, 2), tensor_real(basis_product_state(Dimensions(2, 2), 0, 0)), times),
                    DimensionError);
}

TEST_CASE("batched purity curve matches evolve + purity") {
    for (int c = 0; c < 30; ++c) {
        RngStream rng(12, static_cast<std::uint64_t>(c));
        const Dimensions dims = random_dims(rng);
        const auto decomp = random_decomposition(dims, rng);
        const auto p = random_product_state(dims, rng);
        std::vector<double> times;
        for (int k = 0; k < 300; ++k) times.push_back(0.1 * k);
        const auto curve = purity_curve(decomp, dims, tensor_real(p), times);
        const auto psi0 = tensor(p);
        for (std::size_t k = 0; k < times.size(); k += 17)
            CHECK(std::abs(curve[k] - purity(evolve(decomp, psi0, times[k]))) < 1e-12);
    }
}
