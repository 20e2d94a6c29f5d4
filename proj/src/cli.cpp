#include "rmtdeco/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "rmtdeco/analytics.hpp"
#include "rmtdeco/errors.hpp"

namespace rmtdeco::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename Int>
Int parse_int(std::string_view value, int line, const std::string& key) {
    Int out{};
    const auto* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError(line, key, "expected a non-negative integer, got '" + std::string(value) + "'");
    return out;
}

double parse_real(std::string_view value, int line, const std::string& key) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(out))
        throw ConfigError(line, key, "expected a real number, got '" + std::string(value) + "'");
    return out;
}

SpectrumKind parse_kind(std::string_view value, int line, const std::string& key) {
    auto kind = parse_spectrum_kind(value);
    if (!kind) throw ConfigError(line, key, "unknown spectrum kind '" + std::string(value) + "' (goe, poisson, picket)");
    return *kind;
}

std::string_view policy_name(InitialStatePolicy p) { return p == InitialStatePolicy::BasisProduct ? "basis" : "random"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

RunConfig parse_run_config(std::string_view text) {
    RunConfig cfg;
    std::set<std::string> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");
        if (!seen.insert(key).second) throw ConfigError(line_no, key, "duplicate key");
        if (value.empty()) throw ConfigError(line_no, key, "missing value");

        if (key == "model") {
            if (value == "strong") cfg.model = ModelKind::Strong;
            else if (value == "weak") cfg.model = ModelKind::Weak;
            else throw ConfigError(line_no, key, "expected 'strong' or 'weak'");
        } else if (key == "kind") {
            cfg.kind = parse_kind(value, line_no, key);
        } else if (key == "kind1") {
            cfg.kind1 = parse_kind(value, line_no, key);
        } else if (key == "kind2") {
            cfg.kind2 = parse_kind(value, line_no, key);
        } else if (key == "n") {
            cfg.n = parse_int<std::size_t>(value, line_no, key);
        } else if (key == "m") {
            cfg.m = parse_int<std::size_t>(value, line_no, key);
        } else if (key == "lambda") {
            cfg.lambda = parse_real(value, line_no, key);
            if (cfg.lambda < 0.0) throw ConfigError(line_no, key, "must be non-negative");
        } else if (key == "tmax") {
            cfg.tmax = parse_real(value, line_no, key);
            if (cfg.tmax <= 0.0) throw ConfigError(line_no, key, "must be positive");
        } else if (key == "points") {
            cfg.points = parse_int<std::size_t>(value, line_no, key);
            if (cfg.points < 2) throw ConfigError(line_no, key, "need at least 2 points");
        } else if (key == "dense_tmax") {
            cfg.dense_tmax = parse_real(value, line_no, key);
            if (cfg.dense_tmax < 0.0) throw ConfigError(line_no, key, "must be non-negative");
        } else if (key == "dense_points") {
            cfg.dense_points = parse_int<std::size_t>(value, line_no, key);
        } else if (key == "markers") {
            cfg.markers.clear();
            std::size_t start = 0;
            while (start <= value.size()) {
                const auto comma = value.find(',', start);
                const auto item = trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
                const double t = parse_real(item, line_no, key);
                if (t < 0.0) throw ConfigError(line_no, key, "marker times must be non-negative");
                cfg.markers.push_back(t);
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
        } else if (key == "ensemble") {
            cfg.ensemble = parse_int<std::size_t>(value, line_no, key);
            if (cfg.ensemble == 0) throw ConfigError(line_no, key, "must be at least 1");
        } else if (key == "seed") {
            cfg.seed = parse_int<std::uint64_t>(value, line_no, key);
        } else if (key == "policy") {
            if (value == "basis") cfg.policy = InitialStatePolicy::BasisProduct;
            else if (value == "random") cfg.policy = InitialStatePolicy::RandomProduct;
            else throw ConfigError(line_no, key, "expected 'basis' or 'random'");
        } else if (key == "record") {
            cfg.record = parse_int<std::size_t>(value, line_no, key);
        } else {
            throw ConfigError(line_no, key, "unknown key");
        }
    }
    for (const char* required : {"model", "n", "m", "tmax", "ensemble"})
        if (!seen.count(required)) throw ConfigError(0, required, "required key is missing");
    if (cfg.model == ModelKind::Weak && !seen.count("lambda")) throw ConfigError(0, "lambda", "required for model = weak");
    if (cfg.record > cfg.ensemble) throw ConfigError(0, "record", "exceeds ensemble size");
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "", "cannot read config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

std::string serialize(const RunConfig& c) {
    std::ostringstream out;
    out << "model = " << (c.model == ModelKind::Strong ? "strong" : "weak") << '\n';
    if (c.model == ModelKind::Strong) {
        out << "kind = " << to_string(c.kind) << '\n';
    } else {
        out << "kind1 = " << to_string(c.kind1) << '\n';
        out << "kind2 = " << to_string(c.kind2) << '\n';
        out << "lambda = " << format_double(c.lambda) << '\n';
    }
    out << "n = " << c.n << '\n' << "m = " << c.m << '\n';
    out << "tmax = " << format_double(c.tmax) << '\n' << "points = " << c.points << '\n';
    if (c.dense_points > 0 || c.dense_tmax > 0.0)
        out << "dense_tmax = " << format_double(c.dense_tmax) << '\n' << "dense_points = " << c.dense_points << '\n';
    if (!c.markers.empty()) {
        out << "markers = ";
        for (std::size_t k = 0; k < c.markers.size(); ++k) out << (k ? ", " : "") << format_double(c.markers[k]);
        out << '\n';
    }
    out << "ensemble = " << c.ensemble << '\n' << "seed = " << c.seed << '\n';
    out << "policy = " << policy_name(c.policy) << '\n' << "record = " << c.record << '\n';
    return out.str();
}

std::vector<double> make_time_grid(const RunConfig& c) {
    std::vector<double> grid;
    for (std::size_t k = 0; k < c.points; ++k)
        grid.push_back(c.tmax * static_cast<double>(k) / static_cast<double>(c.points - 1));
    if (c.dense_points >= 2 && c.dense_tmax > 0.0)
        for (std::size_t k = 0; k < c.dense_points; ++k)
            grid.push_back(c.dense_tmax * static_cast<double>(k) / static_cast<double>(c.dense_points - 1));
    grid.insert(grid.end(), c.markers.begin(), c.markers.end());
    std::sort(grid.begin(), grid.end());
    std::vector<double> out;
    for (double t : grid)
        if (out.empty() || t - out.back() > 1e-12 * std::max(1.0, t)) out.push_back(t);
    return out;
}

ExperimentConfig to_experiment(const RunConfig& c) {
    ExperimentConfig e;
    const Dimensions dims(c.n, c.m);
    if (c.model == ModelKind::Strong)
        e.model = StrongCouplingSpec{dims, c.kind};
    else
        e.model = WeakCouplingSpec{dims, c.kind1, c.kind2, c.lambda};
    e.time_grid = make_time_grid(c);
    e.ensemble_size = c.ensemble;
    e.master_seed = c.seed;
    e.policy = c.policy;
    e.record_realizations = c.record;
    e.validate();
    return e;
}

// ---------------------------------------------------------------------------
// Presets

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4", "fig5"};
    return names;
}

std::optional<std::vector<PresetRun>> make_preset(std::string_view name, const PresetOverrides& ov) {
    auto strong = [&](SpectrumKind kind) {
        RunConfig c;
        c.model = ModelKind::Strong;
        c.kind = kind;
        c.n = c.m = 4;
        const auto scales = analytics::time_scales(16);
        c.tmax = 1.2 * scales.heisenberg_time;
        c.markers = {scales.first_minimum_time, scales.partial_revival_time, scales.heisenberg_time};
        c.ensemble = 20000;
        c.seed = 1;
        c.policy = InitialStatePolicy::BasisProduct;
        return c;
    };
    auto weak = [&](std::size_t dim, double lambda, SpectrumKind k1, SpectrumKind k2) {
        RunConfig c;
        c.model = ModelKind::Weak;
        c.kind1 = k1;
        c.kind2 = k2;
        c.n = c.m = dim;
        c.lambda = lambda;
        c.tmax = 600.0;
        c.ensemble = 20000;
        c.seed = 1;
        c.policy = InitialStatePolicy::RandomProduct;
        return c;
    };
    auto dense = [](RunConfig c) {
        c.dense_tmax = 0.5;
        c.dense_points = 101;
        return c;
    };

    using K = SpectrumKind;
    std::vector<PresetRun> runs;
    if (name == "fig1") {
        runs = {{"goe", strong(K::GOE)}, {"poisson", strong(K::Poisson)}, {"picket", strong(K::PicketFence)}};
    } else if (name == "fig2") {
        runs = {{"goe", dense(strong(K::GOE))}};
    } else if (name == "fig3") {
        runs = {{"goe-goe", weak(4, 0.03, K::GOE, K::GOE)},
                {"goe-poisson", weak(4, 0.03, K::GOE, K::Poisson)},
                {"poisson-poisson", weak(4, 0.03, K::Poisson, K::Poisson)}};
    } else if (name == "fig4") {
        runs = {{"goe-goe", dense(weak(4, 0.03, K::GOE, K::GOE))}};
    } else if (name == "fig5") {
        runs = {{"goe-goe", weak(10, 0.01, K::GOE, K::GOE)},
                {"goe-poisson", weak(10, 0.01, K::GOE, K::Poisson)},
                {"poisson-poisson", weak(10, 0.01, K::Poisson, K::Poisson)}};
    } else {
        return std::nullopt;
    }
    for (auto& run : runs) {
        if (ov.ensemble) run.config.ensemble = *ov.ensemble;
        if (ov.seed) run.config.seed = *ov.seed;
        if (ov.tmax) run.config.tmax = *ov.tmax;
        if (ov.points) run.config.points = *ov.points;
        run.config.record = std::min(run.config.record, run.config.ensemble);
    }
    return runs;
}

// ---------------------------------------------------------------------------
// Output

std::string purity_csv(const CurveStats& stats) {
    std::string out = "t,mean,std,count";
    for (std::size_t k = 0; k < stats.trajectories.size(); ++k) out += ",traj_" + std::to_string(k);
    out += '\n';
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        out += format_double(stats.times[i]) + ',' + format_double(stats.mean[i]) + ',' + format_double(stats.std[i]) +
               ',' + std::to_string(stats.count[i]);
        for (const auto& traj : stats.trajectories) out += ',' + format_double(traj[i]);
        out += '\n';
    }
    return out;
}

std::string analytics_csv(const std::vector<double>& times, std::size_t n, std::size_t m) {
    const double imin = analytics::i_min_coe(n, m);
    const double iinf = analytics::i_infinity(n, m);
    std::string out = "t,f,s1,s2,s3,s4,s5,short_time,i_min_coe,i_infinity\n";
    for (double t : times) {
        const auto s = analytics::spectral_averages(t);
        for (double v : {t, analytics::f_uniform(t), s.s1, s.s2, s.s3, s.s4, s.s5, analytics::short_time_purity(t, n, m), imin})
            out += format_double(v) + ',';
        out += format_double(iinf) + '\n';
    }
    return out;
}

std::string closed_forms_csv(const std::vector<std::size_t>& n_list, const std::vector<std::size_t>& m_list) {
    if (n_list.empty() || m_list.empty()) throw std::invalid_argument("tables: dimension lists must be non-empty");
    std::string out = "n,m,N,short_coeff,i_min_coe,i_infinity\n";
    for (std::size_t n : n_list)
        for (std::size_t m : m_list) {
            const Dimensions dims(n, m);
            out += std::to_string(n) + ',' + std::to_string(m) + ',' + std::to_string(dims.total()) + ',' +
                   format_double(analytics::short_time_coefficient(n, m)) + ',' +
                   format_double(analytics::i_min_coe(n, m)) + ',' + format_double(analytics::i_infinity(n, m)) + '\n';
        }
    return out;
}

std::string format_manifest(const Manifest& mf) {
    std::ostringstream out;
    out << "artifact = " << kVersion << '\n';
    out << "command = " << mf.command << '\n';
    out << "master_seed = " << mf.master_seed << '\n';
    out << "duration_seconds = " << format_double(mf.duration_seconds) << '\n';
    for (const auto& [label, cfg] : mf.configs) out << "\n[config " << label << "]\n" << serialize(cfg);
    out << "\n[files]\n";
    for (const auto& f : mf.files) out << f << '\n';
    return out.str();
}

std::map<std::string, RunConfig> manifest_configs(std::string_view text) {
    std::map<std::string, RunConfig> out;
    std::string label;
    std::string body;
    bool in_config = false;
    auto flush = [&] {
        if (in_config) out[label] = parse_run_config(body);
        body.clear();
    };
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.front() == '[') {
            flush();
            in_config = line.rfind("[config ", 0) == 0;
            if (in_config) label = line.substr(8, line.size() - 9);
            continue;
        }
        if (in_config) body += line + '\n';
    }
    flush();
    return out;
}

Manifest execute_runs(const std::vector<PresetRun>& runs, const std::filesystem::path& out, const std::string& command,
                      unsigned workers) {
    const auto start = std::chrono::steady_clock::now();
    // Validate everything before any file is written.
    std::vector<ExperimentConfig> experiments;
    for (const auto& run : runs) experiments.push_back(to_experiment(run.config));

    Manifest mf;
    mf.command = command;
    mf.master_seed = runs.empty() ? 0 : runs.front().config.seed;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& run = runs[k];
        const CurveStats stats = run_experiment(experiments[k], workers);
        const std::filesystem::path dir = run.label.empty() ? out : out / run.label;
        const std::filesystem::path rel = run.label.empty() ? std::filesystem::path{} : std::filesystem::path(run.label);
        write_file(dir / "purity.csv", purity_csv(stats));
        write_file(dir / "analytics.csv", analytics_csv(stats.times, run.config.n, run.config.m));
        mf.files.push_back((rel / "purity.csv").generic_string());
        mf.files.push_back((rel / "analytics.csv").generic_string());
        mf.configs.emplace_back(run.label.empty() ? "run" : run.label, run.config);
    }
    mf.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    mf.files.push_back("manifest.txt");
    write_file(out / "manifest.txt", format_manifest(mf));
    return mf;
}

}  // namespace rmtdeco::cli
