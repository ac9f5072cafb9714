// lsbm: LSB-matching steganalysis toolkit command line.
//
// Exit codes: 0 success, 1 usage error, 2 data/file error.

#include "lsbm/csv.hpp"
#include "lsbm/embedder.hpp"
#include "lsbm/glrt.hpp"
#include "lsbm/harness.hpp"
#include "lsbm/lrt.hpp"
#include "lsbm/parallel.hpp"
#include "lsbm/pgm.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace lsbm;

namespace {

std::vector<double> parse_rate_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(std::stod(item));
    if (out.empty()) throw CLI::ValidationError("--rates", "empty list");
    return out;
}

int cmd_embed(const std::string& in, const std::string& out, double rate, std::uint64_t seed,
              bool verbose) {
    const GrayImage cover = load_pgm(in);
    const auto [stego, report] = embed_lsb_matching(cover, EmbedConfig{rate, seed});
    save_pgm(stego, out);
    if (verbose)
        std::cout << "embedded at rate " << rate << " with seed " << seed << " into " << out
                  << "\n";
    std::cout << "pixels_carrying=" << report.pixels_carrying
              << " pixels_changed=" << report.pixels_changed << " n=" << cover.size() << "\n";
    return 0;
}

int cmd_detect(const std::string& in, double alpha_stab, double thr, bool verbose) {
    const GrayImage image = load_pgm(in);
    GlrtConfig cfg;
    cfg.alpha_stab = alpha_stab;
    cfg.threshold = thr;
    const TestOutcome outcome = detect(image, cfg);
    if (verbose)
        std::cout << "practical GLRT statistic on " << in << " (alpha_stab=" << alpha_stab
                  << ", threshold=" << thr << ")\n";
    std::cout << "statistic=" << format_double(outcome.statistic)
              << " threshold=" << format_double(outcome.threshold)
              << " decision=" << (outcome.decision == Hypothesis::H1 ? "H1" : "H0") << "\n";
    return 0;
}

int cmd_scan(const std::string& dir, const std::string& out, double alpha_stab, int threads) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    std::vector<double> stats(files.size());
    parallel_for(static_cast<std::int64_t>(files.size()), threads, [&](std::int64_t i) {
        const GrayImage image = load_pgm(files[static_cast<std::size_t>(i)]);
        stats[static_cast<std::size_t>(i)] = glrt_statistic(image, GlrtConfig{alpha_stab});
    });

    CsvTable table;
    table.header = {"file", "statistic"};
    for (std::size_t i = 0; i < files.size(); ++i)
        table.add_row({fs::path(files[i]).filename().string(), format_double(stats[i])});
    export_csv(table, out);
    std::cout << "scanned=" << files.size() << " out=" << out << "\n";
    return 0;
}

int cmd_roc(const std::string& cover_csv, const std::string& stego_csv, const std::string& out) {
    const std::vector<double> cover = read_csv_column(cover_csv, "statistic");
    const std::vector<double> stego = read_csv_column(stego_csv, "statistic");
    const RocCurve roc = roc_from_scores(cover, stego);

    CsvTable table;
    table.header = {"false_alarm", "detection"};
    for (const auto& [fa, det] : roc.points)
        table.add_row({format_double(fa), format_double(det)});
    export_csv(table, out);
    std::cout << "auc=" << format_double(roc.auc) << " points=" << roc.points.size() << "\n";
    return 0;
}

int cmd_power_curve(double theta, double sigma, std::int64_t n, double alpha0,
                    const std::string& rates_text, const std::string& out) {
    const std::vector<double> rates = parse_rate_list(rates_text);
    const ParamField field = ParamField::constant(1, theta, sigma);
    const MomentSet moments = moments_r2(field);

    CsvTable table;
    table.header = {"alpha0", "rate", "power"};
    for (double rate : rates) {
        const double power = rate > 0.0 ? power_general(alpha0, moments, n, rate) : alpha0;
        table.add_row({format_double(alpha0), format_double(rate), format_double(power)});
    }
    if (out.empty())
        std::cout << to_csv_string(table);
    else {
        export_csv(table, out);
        std::cout << "rows=" << table.rows.size() << " out=" << out << "\n";
    }
    return 0;
}

int cmd_mc_verify(const std::string& config_path, const std::string& out, int threads) {
    const ExperimentConfig cfg = parse_experiment_config(config_path);
    const std::vector<McRow> rows = mc_verify(cfg, threads);
    export_csv(mc_rows_to_table(rows), out);
    std::cout << "rows=" << rows.size() << " out=" << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LSB-matching steganalysis: embedding simulator, detectors, and "
                 "Monte-Carlo verification"};
    app.require_subcommand(1);

    // embed
    auto* embed = app.add_subcommand("embed", "simulate LSB-matching embedding into a PGM");
    std::string embed_in, embed_out;
    double embed_rate = 0.0;
    std::uint64_t embed_seed = 0;
    bool embed_verbose = false;
    embed->add_option("--in", embed_in, "cover image (P5 PGM)")->required();
    embed->add_option("--out", embed_out, "stego image output path")->required();
    embed->add_option("--rate", embed_rate, "embedding rate R in [0,1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    embed->add_option("--seed", embed_seed, "PRNG seed");
    embed->add_flag("--verbose", embed_verbose, "human-readable prose");

    // detect
    auto* det = app.add_subcommand("detect", "practical GLRT on a single image");
    std::string det_in;
    double det_alpha_stab = 0.25, det_threshold = 0.0;
    bool det_verbose = false;
    det->add_option("--in", det_in, "image to inspect (P5 PGM)")->required();
    det->add_option("--alpha-stab", det_alpha_stab, "variance stabilizer (default 1/4)")
        ->check(CLI::NonNegativeNumber);
    det->add_option("--threshold", det_threshold,
                    "decision threshold (default 0; calibrate via scan + roc)");
    det->add_flag("--verbose", det_verbose, "human-readable prose");

    // scan
    auto* scan = app.add_subcommand("scan", "batch-score every .pgm in a directory");
    std::string scan_dir, scan_out;
    double scan_alpha_stab = 0.25;
    int scan_threads = 1;
    scan->add_option("--dir", scan_dir, "directory of PGM files")->required();
    scan->add_option("--out", scan_out, "output CSV (file,statistic)")->required();
    scan->add_option("--alpha-stab", scan_alpha_stab, "variance stabilizer")
        ->check(CLI::NonNegativeNumber);
    scan->add_option("--threads", scan_threads, "worker threads")->check(CLI::PositiveNumber);

    // roc
    auto* roc = app.add_subcommand("roc", "empirical ROC/AUC from score CSVs");
    std::string roc_cover, roc_stego, roc_out;
    roc->add_option("--cover", roc_cover, "cover scores CSV (statistic column)")->required();
    roc->add_option("--stego", roc_stego, "stego scores CSV (statistic column)")->required();
    roc->add_option("--out", roc_out, "output CSV (false_alarm,detection)")->required();

    // power-curve
    auto* pw = app.add_subcommand("power-curve", "theoretical power of the LRT vs rate");
    double pw_theta = 128.0, pw_sigma = 1.0, pw_alpha = 0.05;
    std::int64_t pw_n = 1000;
    std::string pw_rates = "0.05,0.1,0.25,0.5,1", pw_out;
    pw->add_option("--theta", pw_theta, "pixel expectation")->required();
    pw->add_option("--sigma", pw_sigma, "noise standard deviation")
        ->required()
        ->check(CLI::PositiveNumber);
    pw->add_option("--n", pw_n, "number of pixels")->required()->check(CLI::PositiveNumber);
    pw->add_option("--alpha", pw_alpha, "false-alarm probability in (0,1)")
        ->required()
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    pw->add_option("--rates", pw_rates, "comma-separated rates in [0,1]");
    pw->add_option("--out", pw_out, "output CSV (stdout when omitted)");

    // mc-verify
    auto* mc = app.add_subcommand("mc-verify", "Monte-Carlo verification of the theory");
    std::string mc_config, mc_out;
    int mc_threads = 1;
    mc->add_option("--config", mc_config, "experiment config file")->required();
    mc->add_option("--out", mc_out, "results CSV")->required();
    mc->add_option("--threads", mc_threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*embed) return cmd_embed(embed_in, embed_out, embed_rate, embed_seed, embed_verbose);
        if (*det) return cmd_detect(det_in, det_alpha_stab, det_threshold, det_verbose);
        if (*scan) return cmd_scan(scan_dir, scan_out, scan_alpha_stab, scan_threads);
        if (*roc) return cmd_roc(roc_cover, roc_stego, roc_out);
        if (*pw) return cmd_power_curve(pw_theta, pw_sigma, pw_n, pw_alpha, pw_rates, pw_out);
        if (*mc) return cmd_mc_verify(mc_config, mc_out, mc_threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
