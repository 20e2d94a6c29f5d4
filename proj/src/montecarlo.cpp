#include "rmtdeco/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "rmtdeco/errors.hpp"

namespace rmtdeco {

namespace {

/// Neumaier-compensated sum in extended precision.
class CompensatedSum {
public:
    void add(long double x) noexcept {
        const long double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    long double value() const noexcept { return sum_ + comp_; }

private:
    long double sum_ = 0.0L;
    long double comp_ = 0.0L;
};

/// Mean by compensated summation; spread by Welford updates merged with
/// Chan's pairwise formula.
class Moments {
public:
    void add(double x) noexcept {
        sum_.add(x);
        ++count_;
        const long double delta = x - running_mean_;
        running_mean_ += delta / static_cast<long double>(count_);
        m2_ += delta * (x - running_mean_);
    }

    void merge(const Moments& other) noexcept {
        if (other.count_ == 0) return;
        if (count_ == 0) {
            *this = other;
            return;
        }
        const long double na = static_cast<long double>(count_);
        const long double nb = static_cast<long double>(other.count_);
        const long double delta = other.running_mean_ - running_mean_;
        const long double total = na + nb;
        m2_ += other.m2_ + delta * delta * na * nb / total;
        running_mean_ += delta * nb / total;
        sum_.add(other.sum_.value());
        count_ += other.count_;
    }

    std::size_t count() const noexcept { return count_; }
    double mean() const noexcept { return count_ ? static_cast<double>(sum_.value() / static_cast<long double>(count_)) : 0.0; }
    double stddev() const noexcept {
        if (count_ < 2) return 0.0;
        const long double var = m2_ / static_cast<long double>(count_ - 1);
        return var > 0 ? static_cast<double>(std::sqrt(var)) : 0.0;
    }

private:
    CompensatedSum sum_;
    std::size_t count_ = 0;
    long double running_mean_ = 0.0L;
    long double m2_ = 0.0L;
};

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs body(chunk) for chunk in [0, chunks) on up to `workers` threads.
void for_each_chunk(std::size_t chunks, unsigned workers, const std::function<void(std::size_t)>& body) {
    workers = std::max(1u, std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
    if (workers == 1) {
        for (std::size_t c = 0; c < chunks; ++c) body(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= chunks) return;
                    try {
                        body(c);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next.store(chunks);
                        return;
                    }
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
}

std::size_t chunk_count(std::size_t samples) { return (samples + kChunkSize - 1) / kChunkSize; }

/// Grid indices falling inside each window.
std::vector<std::vector<std::size_t>> window_members(const ExperimentConfig& config) {
    std::vector<std::vector<std::size_t>> members;
    for (const auto& w : config.windows) {
        auto& idx = members.emplace_back();
        for (std::size_t k = 0; k < config.time_grid.size(); ++k)
            if (config.time_grid[k] >= w.lo && config.time_grid[k] <= w.hi) idx.push_back(k);
    }
    return members;
}

template <typename Sample>
McEstimate mean_of_samples(std::size_t samples, unsigned workers, Sample&& sample) {
    const std::size_t chunks = chunk_count(samples);
    std::vector<Moments> partial(chunks);
    for_each_chunk(chunks, workers, [&](std::size_t c) {
        const std::size_t end = std::min(samples, (c + 1) * kChunkSize);
        for (std::size_t s = c * kChunkSize; s < end; ++s) partial[c].add(sample(s));
    });
    Moments total;
    for (const auto& p : partial) total.merge(p);
    return {total.mean(), total.stddev() / std::sqrt(static_cast<double>(std::max<std::size_t>(total.count(), 1))),
            total.count()};
}

}  // namespace

const Dimensions& dims_of(const ModelSpec& model) noexcept {
    return std::visit([](const auto& spec) -> const Dimensions& { return spec.dims; }, model);
}

void ExperimentConfig::validate() const {
    const auto& dims = dims_of(model);
    if (dims.n == 0 || dims.m == 0) throw DimensionError("experiment: dimensions must be positive");
    if (const auto* weak = std::get_if<WeakCouplingSpec>(&model); weak && !(weak->lambda >= 0.0 && std::isfinite(weak->lambda)))
        throw std::invalid_argument("experiment: lambda must be finite and non-negative");
    if (ensemble_size == 0) throw std::invalid_argument("experiment: ensemble size must be at least 1");
    if (time_grid.empty()) throw std::invalid_argument("experiment: time grid is empty");
    for (std::size_t k = 0; k < time_grid.size(); ++k) {
        if (!std::isfinite(time_grid[k]) || time_grid[k] < 0.0)
            throw std::invalid_argument("experiment: time grid entries must be finite and non-negative");
        if (k > 0 && !(time_grid[k] > time_grid[k - 1]))
            throw std::invalid_argument("experiment: time grid must be strictly increasing");
    }
    if (record_realizations > ensemble_size)
        throw std::invalid_argument("experiment: cannot record more realizations than the ensemble size");
    for (const auto& w : windows)
        if (!(w.hi >= w.lo)) throw std::invalid_argument("experiment: window upper bound below lower bound");
}

CurveStats run_experiment(const ExperimentConfig& config, unsigned workers) {
    config.validate();
    const Dimensions dims = dims_of(config.model);
    const std::size_t points = config.time_grid.size();
    const auto members = window_members(config);

    struct Partial {
        std::vector<Moments> curve;
        std::vector<Moments> window;
    };
    const std::size_t chunks = chunk_count(config.ensemble_size);
    std::vector<Partial> partial(chunks);
    std::vector<std::vector<double>> recorded(config.record_realizations);

    for_each_chunk(chunks, workers, [&](std::size_t c) {
        auto& acc = partial[c];
        acc.curve.resize(points);
        acc.window.resize(members.size());
        const std::size_t end = std::min(config.ensemble_size, (c + 1) * kChunkSize);
        for (std::size_t r = c * kChunkSize; r < end; ++r) {
            const RngStream base(config.master_seed, r);
            RngStream model_rng = base.substream(0);
            RngStream state_rng = base.substream(1);
            const SpectralDecomposition decomp = std::visit(
                [&](const auto& spec) {
                    if constexpr (std::is_same_v<std::decay_t<decltype(spec)>, StrongCouplingSpec>)
                        return build_strong(spec, model_rng);
                    else
                        return build_weak(spec, model_rng);
                },
                config.model);
            const ProductState p = config.policy == InitialStatePolicy::BasisProduct ? basis_product_state(dims, 0, 0)
                                                                                      : random_product_state(dims, state_rng);
            std::vector<double> curve = purity_curve(decomp, dims, tensor_real(p), config.time_grid);
            for (std::size_t k = 0; k < points; ++k) acc.curve[k].add(curve[k]);
            for (std::size_t w = 0; w < members.size(); ++w) {
                if (members[w].empty()) continue;
                CompensatedSum s;
                for (std::size_t k : members[w]) s.add(curve[k]);
                acc.window[w].add(static_cast<double>(s.value() / static_cast<long double>(members[w].size())));
            }
            if (r < recorded.size()) recorded[r] = std::move(curve);
        }
    });

    std::vector<Moments> curve(points);
    std::vector<Moments> window(members.size());
    for (const auto& p : partial) {
        for (std::size_t k = 0; k < points; ++k) curve[k].merge(p.curve[k]);
        for (std::size_t w = 0; w < members.size(); ++w) window[w].merge(p.window[w]);
    }

    CurveStats out;
    out.times = config.time_grid;
    out.mean.resize(points);
    out.std.resize(points);
    out.count.resize(points);
    for (std::size_t k = 0; k < points; ++k) {
        out.mean[k] = curve[k].mean();
        out.std[k] = curve[k].stddev();
        out.count[k] = curve[k].count();
    }
    out.trajectories = std::move(recorded);
    for (std::size_t w = 0; w < members.size(); ++w)
        out.windows.push_back({config.windows[w], members[w].size(), window[w].mean(), window[w].stddev(), window[w].count()});
    return out;
}

McEstimate coe_min_purity_mc(std::size_t n, std::size_t m, std::size_t samples, std::uint64_t master_seed,
                             unsigned workers) {
    const Dimensions dims(n, m);
    if (samples == 0) throw std::invalid_argument("coe_min_purity_mc: samples must be at least 1");
    return mean_of_samples(samples, workers, [&](std::size_t s) {
        RngStream rng(master_seed, s);
        const SymmetricUnitaryMatrix coe = sample_coe(dims.total(), rng);
        const Eigen::VectorXd re = coe.col(0).real();
        const Eigen::VectorXd im = coe.col(0).imag();
        return purity_of(dims, re, im);
    });
}

McEstimate stationary_purity_mc(std::size_t n, std::size_t m, std::size_t samples, std::uint64_t master_seed,
                                unsigned workers) {
    const Dimensions dims(n, m);
    if (samples == 0) throw std::invalid_argument("stationary_purity_mc: samples must be at least 1");
    return mean_of_samples(samples, workers, [&](std::size_t s) {
        RngStream rng(master_seed, s);
        const OrthogonalMatrix o = sample_haar_orthogonal(dims.total(), rng);
        const auto sz = static_cast<Eigen::Index>(dims.total());
        Eigen::VectorXd c_re(sz), c_im(sz);
        for (Eigen::Index a = 0; a < sz; ++a) {
            const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
            c_re(a) = std::cos(phase) * o(0, a);
            c_im(a) = std::sin(phase) * o(0, a);
        }
        const Eigen::VectorXd re = o * c_re;
        const Eigen::VectorXd im = o * c_im;
        return purity_of(dims, re, im);
    });
}

}  // namespace rmtdeco
