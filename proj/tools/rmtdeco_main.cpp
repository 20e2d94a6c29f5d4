#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rmtdeco/cli.hpp"
#include "rmtdeco/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDimension = 3;

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace rmtdeco;

    CLI::App app{"Purity decay of random product states under random-matrix Hamiltonians"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cli::kVersion));

    std::string config_path;
    std::string out_dir = ".";
    unsigned workers = 0;
    auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
    run->add_option("config", config_path, "Key-value config file")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--workers", workers, "Worker threads (0 = all cores)");

    std::string preset_name;
    std::optional<std::size_t> ensemble;
    std::optional<std::uint64_t> seed;
    std::optional<double> tmax;
    std::optional<std::size_t> points;
    auto* preset = app.add_subcommand("preset", "Run a figure preset (fig1 .. fig5)");
    preset->add_option("name", preset_name, "Preset name")->required();
    preset->add_option("--ensemble", ensemble, "Ensemble size override");
    preset->add_option("--seed", seed, "Master seed override");
    preset->add_option("--tmax", tmax, "Grid end override");
    preset->add_option("--points", points, "Uniform grid size override");
    preset->add_option("--out", out_dir, "Output directory");
    preset->add_option("--workers", workers, "Worker threads (0 = all cores)");

    std::vector<std::size_t> n_list, m_list;
    auto* tables = app.add_subcommand("tables", "Tabulate closed-form predictions");
    tables->add_option("--n", n_list, "Central-system dimensions")->required();
    tables->add_option("--m", m_list, "Environment dimensions")->required();
    tables->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run) {
            const auto cfg = cli::load_run_config(config_path);
            cli::execute_runs({{"", cfg}}, out_dir, "run " + config_path, workers);
        } else if (*preset) {
            const auto runs = cli::make_preset(preset_name, {ensemble, seed, tmax, points});
            if (!runs) {
                std::cerr << "error: unknown preset '" << preset_name << "' (fig1, fig2, fig3, fig4, fig5)\n";
                return kExitConfig;
            }
            cli::execute_runs(*runs, out_dir, "preset " + preset_name, workers);
        } else if (*tables) {
            write_text(std::filesystem::path(out_dir) / "closed_forms.csv", cli::closed_forms_csv(n_list, m_list));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << '\n';
        return kExitDimension;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
