#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gct/app_config.hpp"
#include "gct/dataset.hpp"
#include "gct/errors.hpp"
#include "gct/hydrosim.hpp"
#include "gct/sonfis.hpp"
#include "gct/sorst.hpp"
#include "gct/textio.hpp"

namespace fs = std::filesystem;

namespace {

gct::AppConfig load_config_or_default(const std::string& path) {
    return path.empty() ? gct::default_app_config() : gct::load_app_config(path);
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw gct::ValidationError("cannot open file for writing: " + path.string());
    out << content;
}

std::string audit_header(const gct::AppConfig& cfg, const std::string& data_path) {
    std::ostringstream out;
    out << "# data=" << data_path << '\n';
    for (const auto& line : cfg.resolved_lines()) out << "# " << line << '\n';
    return out.str();
}

int run_generate(const std::string& config_path, const std::string& out_path) {
    const auto cfg = load_config_or_default(config_path);
    const gct::Dataset data = gct::generate(cfg.sim);
    gct::write_csv(data, out_path);
    std::cout << "wrote " << data.size() << " records to " << out_path << '\n';
    return 0;
}

int run_sonfis_cmd(const std::string& config_path, const std::string& data_path,
                   const std::string& out_dir, bool dump_codebook) {
    auto cfg = load_config_or_default(config_path);
    const gct::Dataset data = gct::load_csv(data_path);
    auto [train, test] =
        gct::split_train_test(data, cfg.split.n_train, cfg.split.n_test, cfg.split.seed,
                              cfg.split.stratify);
    auto report = gct::run_sonfis(train, test, cfg.sonfis);
    report.split_seed = cfg.split.seed;

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_text_file(dir / "sonfis_report.txt",
                    audit_header(cfg, data_path) + gct::render_sonfis_text(report));
    write_text_file(dir / "sonfis_trace.csv", gct::render_sonfis_csv(report));
    write_text_file(dir / "sonfis_rules.txt", report.best_rules_dump);
    if (dump_codebook && report.best_map)
        gct::write_codebook_csv(*report.best_map, (dir / "codebook.csv").string());

    const auto& best = report.trace[report.best];
    std::cout << "sonfis: " << report.trace.size() << " iterations, best rmse "
              << gct::fixed(best.rmse, 6) << " (rules=" << best.rule_count
              << ", neurons=" << best.neuron_count << ")\n";
    return 0;
}

int run_sorst_cmd(const std::string& config_path, const std::string& data_path,
                  const std::string& out_dir, bool dump_codebook) {
    auto cfg = load_config_or_default(config_path);
    const gct::Dataset data = gct::load_csv(data_path);
    auto [train, test] =
        gct::split_train_test(data, cfg.split.n_train, cfg.split.n_test, cfg.split.seed,
                              cfg.split.stratify);
    auto report = gct::run_sorst(train, test, cfg.sorst);
    report.split_seed = cfg.split.seed;

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_text_file(dir / "sorst_report.txt",
                    audit_header(cfg, data_path) + gct::render_sorst_text(report));
    write_text_file(dir / "sorst_report.csv", gct::render_sorst_csv(report));
    for (std::size_t s = 0; s < report.structures.size(); ++s) {
        write_text_file(dir / ("sorst_trace_" + std::to_string(s) + ".csv"),
                        gct::render_sorst_trace_csv(report.structures[s]));
    }
    write_text_file(dir / "sorst_rules.txt", report.best_rules_dump);
    if (dump_codebook && report.best_map)
        gct::write_codebook_csv(*report.best_map, (dir / "codebook.csv").string());

    const auto& best = report.structures[report.best];
    std::cout << "sorst: " << report.structures.size() << " structures, best final EM "
              << gct::fixed(best.final_em, 6) << " (structure=" << report.best
              << ", rules=" << best.rule_count << ")\n";
    return 0;
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw gct::ValidationError("cannot open file: " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

int run_report_cmd(const std::string& in_dir, const std::string& format) {
    const fs::path dir(in_dir);
    if (fs::exists(dir / "sonfis_trace.csv")) {
        if (format == "csv") {
            std::cout << read_text_file(dir / "sonfis_trace.csv");
        } else {
            std::cout << read_text_file(dir / "sonfis_report.txt");
        }
        return 0;
    }
    if (fs::exists(dir / "sorst_report.csv")) {
        if (format == "csv") {
            std::cout << read_text_file(dir / "sorst_report.csv");
        } else {
            std::cout << read_text_file(dir / "sorst_report.txt");
        }
        return 0;
    }
    throw gct::ValidationError("no report found in " + in_dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"granular computing toolkit for hydrocyclone classification data"};
    app.require_subcommand(1);

    std::string config_path, out_path, data_path, out_dir, in_dir;
    std::string format = "text";
    bool dump_codebook = false;

    auto* gen = app.add_subcommand("generate", "generate a synthetic dataset CSV");
    gen->add_option("--config", config_path, "key=value config file");
    gen->add_option("--out", out_path, "output CSV path")->required();

    auto* sonfis = app.add_subcommand("sonfis", "run the SOM + fuzzy-rule pipeline");
    sonfis->add_option("--config", config_path, "key=value config file");
    sonfis->add_option("--data", data_path, "input dataset CSV")->required();
    sonfis->add_option("--out-dir", out_dir, "report output directory")->required();
    sonfis->add_flag("--dump-codebook", dump_codebook, "also write the best map's codebook CSV");

    auto* sorst = app.add_subcommand("sorst", "run the SOM + rough-rule pipeline");
    sorst->add_option("--config", config_path, "key=value config file");
    sorst->add_option("--data", data_path, "input dataset CSV")->required();
    sorst->add_option("--out-dir", out_dir, "report output directory")->required();
    sorst->add_flag("--dump-codebook", dump_codebook, "also write the best map's codebook CSV");

    auto* report = app.add_subcommand("report", "re-render a written report");
    report->add_option("--in", in_dir, "report directory")->required();
    report->add_option("--format", format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return run_generate(config_path, out_path);
        if (sonfis->parsed()) return run_sonfis_cmd(config_path, data_path, out_dir, dump_codebook);
        if (sorst->parsed()) return run_sorst_cmd(config_path, data_path, out_dir, dump_codebook);
        if (report->parsed()) return run_report_cmd(in_dir, format);
    } catch (const gct::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    } catch (const gct::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
