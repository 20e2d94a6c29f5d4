#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "rmtdeco/analytics.hpp"
#include "rmtdeco/cli.hpp"
#include "rmtdeco/errors.hpp"
#include "rmtdeco/montecarlo.hpp"

namespace py = pybind11;
using namespace rmtdeco;

namespace {

SpectrumKind kind_from(const std::string& name) {
    auto kind = parse_spectrum_kind(name);
    if (!kind) throw std::invalid_argument("unknown spectrum kind '" + name + "'");
    return *kind;
}

InitialStatePolicy policy_from(const std::string& name) {
    if (name == "basis") return InitialStatePolicy::BasisProduct;
    if (name == "random") return InitialStatePolicy::RandomProduct;
    throw std::invalid_argument("policy must be 'basis' or 'random'");
}

py::dict curve_to_dict(CurveStats stats) {
    py::dict out;
    out["t"] = py::array(py::cast(std::move(stats.times)));
    out["mean"] = py::array(py::cast(std::move(stats.mean)));
    out["std"] = py::array(py::cast(std::move(stats.std)));
    out["count"] = py::array(py::cast(std::move(stats.count)));
    py::list trajectories;
    for (auto& traj : stats.trajectories) trajectories.append(py::array(py::cast(std::move(traj))));
    out["trajectories"] = trajectories;
    py::list windows;
    for (const auto& w : stats.windows) {
        py::dict d;
        d["lo"] = w.window.lo;
        d["hi"] = w.window.hi;
        d["points"] = w.points;
        d["mean"] = w.mean;
        d["std"] = w.std;
        d["count"] = w.count;
        windows.append(d);
    }
    out["windows"] = windows;
    return out;
}

py::dict run(const ExperimentConfig& config, unsigned workers) {
    CurveStats stats;
    {
        py::gil_scoped_release release;
        stats = run_experiment(config, workers);
    }
    return curve_to_dict(std::move(stats));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Purity decay of product states under random-matrix Hamiltonians";
    m.attr("__version__") = std::string(cli::kVersion.substr(cli::kVersion.find(' ') + 1));

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("sample_spectrum", [](const std::string& kind, std::size_t n, std::uint64_t seed, std::uint64_t index) {
        RngStream rng(seed, index);
        return py::array(py::cast(sample_spectrum(kind_from(kind), n, rng).levels));
    }, py::arg("kind"), py::arg("n"), py::arg("seed") = 0, py::arg("index") = 0);

    m.def("build_strong", [](std::size_t n, std::size_t mm, const std::string& kind, std::uint64_t seed) {
        RngStream rng(seed, 0);
        auto d = build_strong({Dimensions(n, mm), kind_from(kind)}, rng);
        return py::make_tuple(d.energies, d.eigenvectors);
    }, py::arg("n"), py::arg("m"), py::arg("kind") = "goe", py::arg("seed") = 0,
       "Eigenvalues and eigenvectors of a strong-coupling Hamiltonian.");

    m.def("build_weak", [](std::size_t n, std::size_t mm, const std::string& kind1, const std::string& kind2,
                           double lambda, std::uint64_t seed) {
        RngStream rng(seed, 0);
        auto d = build_weak({Dimensions(n, mm), kind_from(kind1), kind_from(kind2), lambda}, rng);
        return py::make_tuple(d.energies, d.eigenvectors);
    }, py::arg("n"), py::arg("m"), py::arg("kind1"), py::arg("kind2"), py::arg("lam"), py::arg("seed") = 0);

    m.def("purity", [](const Eigen::VectorXcd& amplitudes, std::size_t n, std::size_t mm) {
        return purity(PureState{amplitudes, Dimensions(n, mm)});
    }, py::arg("amplitudes"), py::arg("n"), py::arg("m"));

    m.def("run_strong", [](std::size_t n, std::size_t mm, const std::string& kind, std::vector<double> times,
                           std::size_t ensemble, std::uint64_t seed, const std::string& policy, std::size_t record,
                           unsigned workers) {
        ExperimentConfig c;
        c.model = StrongCouplingSpec{Dimensions(n, mm), kind_from(kind)};
        c.time_grid = std::move(times);
        c.ensemble_size = ensemble;
        c.master_seed = seed;
        c.policy = policy_from(policy);
        c.record_realizations = record;
        return run(c, workers);
    }, py::arg("n"), py::arg("m"), py::arg("kind"), py::arg("times"), py::arg("ensemble"), py::arg("seed") = 0,
       py::arg("policy") = "basis", py::arg("record") = 1, py::arg("workers") = 0);

    m.def("run_weak", [](std::size_t n, std::size_t mm, const std::string& kind1, const std::string& kind2,
                         double lambda, std::vector<double> times, std::size_t ensemble, std::uint64_t seed,
                         const std::string& policy, std::size_t record, unsigned workers) {
        ExperimentConfig c;
        c.model = WeakCouplingSpec{Dimensions(n, mm), kind_from(kind1), kind_from(kind2), lambda};
        c.time_grid = std::move(times);
        c.ensemble_size = ensemble;
        c.master_seed = seed;
        c.policy = policy_from(policy);
        c.record_realizations = record;
        return run(c, workers);
    }, py::arg("n"), py::arg("m"), py::arg("kind1"), py::arg("kind2"), py::arg("lam"), py::arg("times"),
       py::arg("ensemble"), py::arg("seed") = 0, py::arg("policy") = "random", py::arg("record") = 1,
       py::arg("workers") = 0);

    m.def("run_config", [](const std::string& text, unsigned workers) {
        return run(cli::to_experiment(cli::parse_run_config(text)), workers);
    }, py::arg("text"), py::arg("workers") = 0, "Run an experiment from key-value config text.");

    m.def("coe_min_purity_mc", [](std::size_t n, std::size_t mm, std::size_t samples, std::uint64_t seed) {
        py::gil_scoped_release release;
        const auto e = coe_min_purity_mc(n, mm, samples, seed);
        return std::pair{e.mean, e.std_error};
    }, py::arg("n"), py::arg("m"), py::arg("samples"), py::arg("seed") = 0);

    m.def("stationary_purity_mc", [](std::size_t n, std::size_t mm, std::size_t samples, std::uint64_t seed) {
        py::gil_scoped_release release;
        const auto e = stationary_purity_mc(n, mm, samples, seed);
        return std::pair{e.mean, e.std_error};
    }, py::arg("n"), py::arg("m"), py::arg("samples"), py::arg("seed") = 0);

    m.def("f_uniform", py::vectorize(analytics::f_uniform), py::arg("t"));
    m.def("spectral_averages", [](double t) {
        const auto s = analytics::spectral_averages(t);
        return py::make_tuple(s.s1, s.s2, s.s3, s.s4, s.s5);
    }, py::arg("t"));
    m.def("short_time_coefficient", &analytics::short_time_coefficient, py::arg("n"), py::arg("m"),
          py::arg("mean_square_energy") = 1.0);
    m.def("i_min_coe", &analytics::i_min_coe, py::arg("n"), py::arg("m"));
    m.def("i_infinity", &analytics::i_infinity, py::arg("n"), py::arg("m"));
    m.def("weak_variance", &analytics::weak_variance, py::arg("lam"), py::arg("N"));
    m.def("time_scales", [](std::size_t total) {
        const auto s = analytics::time_scales(total);
        py::dict d;
        d["inverse_spectrum_length"] = s.inverse_spectrum_length;
        d["first_minimum_time"] = s.first_minimum_time;
        d["heisenberg_time"] = s.heisenberg_time;
        d["partial_revival_time"] = s.partial_revival_time;
        d["mean_spacing"] = s.mean_spacing;
        return d;
    }, py::arg("N"));

    m.def("closed_forms_csv", &cli::closed_forms_csv, py::arg("n_list"), py::arg("m_list"));
}
