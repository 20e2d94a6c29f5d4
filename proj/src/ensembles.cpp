#include "rmtdeco/ensembles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "rmtdeco/errors.hpp"

namespace rmtdeco {

namespace {

void require_positive(std::size_t n, const char* what) {
    if (n == 0) throw DimensionError(std::string(what) + ": dimension must be at least 1");
}

Eigen::MatrixXd gaussian_matrix(std::size_t n, RngStream& rng) {
    const auto sz = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd g(sz, sz);
    for (Eigen::Index j = 0; j < sz; ++j)
        for (Eigen::Index i = 0; i < sz; ++i) g(i, j) = rng.normal();
    return g;
}

double unfold(const GoeLevelDensity& density, double x) {
    return kSqrt3 * (2.0 * density.cdf(x) - 1.0);
}

}  // namespace

std::string_view to_string(SpectrumKind kind) noexcept {
    switch (kind) {
        case SpectrumKind::GOE: return "goe";
        case SpectrumKind::Poisson: return "poisson";
        case SpectrumKind::PicketFence: return "picket";
    }
    return "unknown";
}

std::optional<SpectrumKind> parse_spectrum_kind(std::string_view name) noexcept {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "goe") return SpectrumKind::GOE;
    if (lower == "poisson" || lower == "poe") return SpectrumKind::Poisson;
    if (lower == "picket" || lower == "picketfence" || lower == "picket_fence") return SpectrumKind::PicketFence;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Finite-n GOE level density

GoeLevelDensity::GoeLevelDensity(std::size_t n) : n_(n) {
    require_positive(n, "GoeLevelDensity");
    const double nd = static_cast<double>(n);
    const double half_width = std::sqrt(2.0 * nd + 1.0) + 12.0;
    // Fine nodes resolve the oscillations of phi_n (wavelength ~ pi / sqrt(2n)).
    const double h = std::min(1.0 / 512.0, 0.04 / std::sqrt(2.0 * nd + 1.0));
    auto nodes = static_cast<std::size_t>(std::ceil(2.0 * half_width / h));
    if (nodes % 2 == 1) ++nodes;
    const std::size_t count = nodes + 1;
    const double lo = -half_width;

    // Hermite functions with a running log-scale so large |x| and large n
    // neither overflow nor underflow before the final exponentiation.
    std::vector<double> sumsq(count), phi_prev(count), phi_last(count), phi_next(count);
    const double pi_quarter = std::pow(std::numbers::pi, -0.25);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = lo + static_cast<double>(i) * h;
        double log_scale = -0.5 * x * x;
        double p_km1 = 0.0;
        double p_k = pi_quarter;
        double acc = 0.0;
        // After the loop p_km1 = phi_{n-1}, p_k = phi_n (both scaled).
        for (std::size_t k = 0; k < n; ++k) {
            acc += p_k * p_k;
            const double kd = static_cast<double>(k);
            const double p_kp1 = std::sqrt(2.0 / (kd + 1.0)) * x * p_k - std::sqrt(kd / (kd + 1.0)) * p_km1;
            p_km1 = p_k;
            p_k = p_kp1;
            if (std::abs(p_k) > 1e150) {
                p_k *= 1e-150;
                p_km1 *= 1e-150;
                acc *= 1e-300;
                log_scale += 150.0 * std::numbers::ln10;
            }
        }
        const double p_kp1 = std::sqrt(2.0 / (nd + 1.0)) * x * p_k - std::sqrt(nd / (nd + 1.0)) * p_km1;
        const double scale = std::exp(log_scale);
        sumsq[i] = acc * scale * scale;
        phi_prev[i] = p_km1 * scale;
        phi_last[i] = p_k * scale;
        phi_next[i] = p_kp1 * scale;
    }

    // Running integral of phi_n by the cubic Hermite rule, using
    // phi_n' = sqrt(n/2) phi_{n-1} - sqrt((n+1)/2) phi_{n+1}.
    std::vector<double> int_last(count, 0.0);
    const double c1 = std::sqrt(nd / 2.0);
    const double c2 = std::sqrt((nd + 1.0) / 2.0);
    for (std::size_t i = 1; i < count; ++i) {
        const double d0 = c1 * phi_prev[i - 1] - c2 * phi_next[i - 1];
        const double d1 = c1 * phi_prev[i] - c2 * phi_next[i];
        int_last[i] = int_last[i - 1] + 0.5 * h * (phi_last[i - 1] + phi_last[i]) + h * h / 12.0 * (d0 - d1);
    }
    const double total_last = int_last.back();

    double odd_norm = 0.0;
    if (n % 2 == 1) {
        // Simpson on the even node count.
        for (std::size_t i = 0; i + 2 <= nodes; i += 2)
            odd_norm += h / 3.0 * (phi_prev[i] + 4.0 * phi_prev[i + 1] + phi_prev[i + 2]);
    }

    std::vector<double> rho(count);
    for (std::size_t i = 0; i < count; ++i) {
        double r = sumsq[i] + c1 * phi_prev[i] * (int_last[i] - 0.5 * total_last);
        if (n % 2 == 1) r += phi_prev[i] / odd_norm;
        rho[i] = r / nd;
    }

    // CDF at even nodes by Simpson; the table keeps every second node.
    lo_ = lo;
    step_ = 2.0 * h;
    const std::size_t kept = nodes / 2 + 1;
    pdf_.resize(kept);
    cdf_.resize(kept);
    double acc = 0.0;
    for (std::size_t j = 0; j < kept; ++j) {
        if (j > 0) {
            const std::size_t i = 2 * (j - 1);
            acc += h / 3.0 * (rho[i] + 4.0 * rho[i + 1] + rho[i + 2]);
        }
        pdf_[j] = rho[2 * j];
        cdf_[j] = acc;
    }
    for (auto& f : cdf_) f /= acc;
    for (auto& p : pdf_) p /= acc;
}

const GoeLevelDensity& GoeLevelDensity::get(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<GoeLevelDensity>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GoeLevelDensity>(n);
    return *slot;
}

double GoeLevelDensity::pdf(double x) const noexcept {
    const double s = (x - lo_) / step_;
    if (s <= 0.0 || s >= static_cast<double>(pdf_.size() - 1)) return 0.0;
    const auto j = static_cast<std::size_t>(s);
    const double t = s - static_cast<double>(j);
    return (1.0 - t) * pdf_[j] + t * pdf_[j + 1];
}

double GoeLevelDensity::cdf(double x) const noexcept {
    const double s = (x - lo_) / step_;
    if (s <= 0.0) return 0.0;
    if (s >= static_cast<double>(cdf_.size() - 1)) return 1.0;
    const auto j = static_cast<std::size_t>(s);
    const double t = s - static_cast<double>(j);
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double value = (2 * t3 - 3 * t2 + 1) * cdf_[j] + (t3 - 2 * t2 + t) * step_ * pdf_[j] +
                         (-2 * t3 + 3 * t2) * cdf_[j + 1] + (t3 - t2) * step_ * pdf_[j + 1];
    return std::clamp(value, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Spectra

Eigen::MatrixXd sample_goe_matrix(std::size_t n, RngStream& rng) {
    require_positive(n, "sample_goe_matrix");
    const auto sz = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd h(sz, sz);
    const double off = std::sqrt(0.5);
    for (Eigen::Index i = 0; i < sz; ++i) {
        h(i, i) = rng.normal();
        for (Eigen::Index j = i + 1; j < sz; ++j) {
            h(i, j) = off * rng.normal();
            h(j, i) = h(i, j);
        }
    }
    return h;
}

Spectrum sample_goe_spectrum(std::size_t n, RngStream& rng) {
    require_positive(n, "sample_goe_spectrum");
    const Eigen::MatrixXd h = sample_goe_matrix(n, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    const auto& density = GoeLevelDensity::get(n);
    Spectrum out{std::vector<double>(n), SpectrumKind::GOE};
    for (std::size_t k = 0; k < n; ++k) out.levels[k] = unfold(density, solver.eigenvalues()(static_cast<Eigen::Index>(k)));
    std::sort(out.levels.begin(), out.levels.end());
    return out;
}

Spectrum sample_poisson_spectrum(std::size_t n, RngStream& rng) {
    require_positive(n, "sample_poisson_spectrum");
    Spectrum out{std::vector<double>(n), SpectrumKind::Poisson};
    for (auto& e : out.levels) e = rng.uniform(-kSqrt3, kSqrt3);
    std::sort(out.levels.begin(), out.levels.end());
    return out;
}

Spectrum picket_fence_spectrum(std::size_t n, FenceScaling scaling) {
    require_positive(n, "picket_fence_spectrum");
    const double nd = static_cast<double>(n);
    const double d = 2.0 * kSqrt3 / nd;
    const double c = (scaling == FenceScaling::UnitVariance && n > 1) ? std::sqrt(nd * nd / (nd * nd - 1.0)) : 1.0;
    Spectrum out{std::vector<double>(n), SpectrumKind::PicketFence};
    // Symmetric construction about zero, so level k and n-1-k are exact negatives.
    for (std::size_t k = 0; k < n; ++k) {
        const double offset = (static_cast<double>(k) - 0.5 * (nd - 1.0)) * d;
        out.levels[k] = c * offset;
    }
    return out;
}

Spectrum sample_spectrum(SpectrumKind kind, std::size_t n, RngStream& rng) {
    switch (kind) {
        case SpectrumKind::GOE: return sample_goe_spectrum(n, rng);
        case SpectrumKind::Poisson: return sample_poisson_spectrum(n, rng);
        case SpectrumKind::PicketFence: return picket_fence_spectrum(n);
    }
    throw std::invalid_argument("unknown spectrum kind");
}

// ---------------------------------------------------------------------------
// Matrices

OrthogonalMatrix sample_haar_orthogonal(std::size_t n, RngStream& rng) {
    require_positive(n, "sample_haar_orthogonal");
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian_matrix(n, rng));
    const auto sz = static_cast<Eigen::Index>(n);
    OrthogonalMatrix q = qr.householderQ() * Eigen::MatrixXd::Identity(sz, sz);
    const auto& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < sz; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

Eigen::MatrixXcd sample_haar_unitary(std::size_t n, RngStream& rng) {
    require_positive(n, "sample_haar_unitary");
    const auto sz = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd g(sz, sz);
    for (Eigen::Index j = 0; j < sz; ++j)
        for (Eigen::Index i = 0; i < sz; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = std::complex<double>(re, im);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(sz, sz);
    const auto& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < sz; ++j) {
        const double mod = std::abs(r(j, j));
        if (mod > 0.0) q.col(j) *= r(j, j) / mod;
    }
    return q;
}

SymmetricUnitaryMatrix sample_coe(std::size_t n, RngStream& rng) {
    require_positive(n, "sample_coe");
    const Eigen::MatrixXcd u = sample_haar_unitary(n, rng);
    return u.transpose() * u;
}

Eigen::MatrixXd sample_coupling(std::size_t n, RngStream& rng) {
    require_positive(n, "sample_coupling");
    const auto sz = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(sz, sz);
    for (Eigen::Index i = 0; i < sz; ++i)
        for (Eigen::Index j = i + 1; j < sz; ++j) {
            v(i, j) = rng.normal();
            v(j, i) = v(i, j);
        }
    return v;
}

}  // namespace rmtdeco
