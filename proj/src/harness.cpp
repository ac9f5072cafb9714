#include "lsbm/harness.hpp"

#include "lsbm/embedder.hpp"
#include "lsbm/glrt.hpp"
#include "lsbm/lrt.hpp"
#include "lsbm/parallel.hpp"
#include "lsbm/pgm.hpp"
#include "lsbm/pixel_model.hpp"
#include "lsbm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lsbm {

namespace {
// stream tags for seed derivation
constexpr std::uint64_t kNoiseTag = 0x701;
constexpr std::uint64_t kCoverTrialTag = 0x702;
constexpr std::uint64_t kStegoTrialTag = 0x703;
constexpr std::uint64_t kCalibTrialTag = 0x704;
constexpr std::uint64_t kEmbedSeedTag = 0x705;
}  // namespace

double SceneSpec::theta_at(int x, int y) const {
    switch (kind) {
        case SceneKind::Constant:
            return theta0;
        case SceneKind::Ramp:
            return theta0 + grad_x * x + grad_y * y;
        case SceneKind::Texture:
            return static_cast<double>(texture(x, y));
    }
    return theta0;
}

std::pair<GrayImage, ParamField> synth_cover(const SceneSpec& scene, int width, int height,
                                             double sigma, std::uint64_t seed, int bit_depth) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("synth_cover: bad dimensions");
    if (!(sigma >= 0.0)) throw std::invalid_argument("synth_cover: sigma must be >= 0");
    if (scene.kind == SceneKind::Texture) {
        scene.texture.validate();
        if (scene.texture.width != width || scene.texture.height != height)
            throw std::invalid_argument("synth_cover: texture dims mismatch");
    }

    GrayImage image;
    image.width = width;
    image.height = height;
    image.bit_depth = bit_depth;
    image.pixels.resize(static_cast<Eigen::Index>(width) * height);

    ParamField field;
    field.theta.resize(image.size());
    // the zero-noise case still needs a valid field for the theory side
    field.sigma = ArrayXd::Constant(image.size(), sigma > 0.0 ? sigma : 1e-6);

    const CounterRng noise(seed, kNoiseTag);
    Eigen::Index i = 0;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x, ++i) {
            const double theta = scene.theta_at(x, y);
            field.theta[i] = theta;
            const double xi = sigma > 0.0 ? sigma * noise.gaussian(static_cast<std::uint64_t>(i)) : 0.0;
            image.pixels[i] = quantize(theta + xi, bit_depth);
        }
    }
    return {std::move(image), std::move(field)};
}

void ExperimentConfig::validate() const {
    if (n_trials < 1) throw std::invalid_argument("config: n_trials must be >= 1");
    if (width <= 0 || height <= 0) throw std::invalid_argument("config: bad image dims");
    if (!(sigma > 0.0)) throw std::invalid_argument("config: sigma must be > 0");
    if (rates.empty() || alphas.empty())
        throw std::invalid_argument("config: rates and alphas must be nonempty");
    for (double r : rates)
        if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("config: rate outside [0,1]");
    for (double a : alphas)
        if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("config: alpha outside (0,1)");
    if (mode == DetectorMode::PracticalGlrt && (width < 3 || height < 3))
        throw std::invalid_argument("config: practical mode needs images >= 3x3");
}

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);

    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    ExperimentConfig cfg;
    int n_pixels = 0;
    std::string texture_path;
    try {
        for (const auto& [key, value] : kv) {
            if (key == "mode") {
                if (value == "theoretical_lrt") cfg.mode = DetectorMode::TheoreticalLrt;
                else if (value == "practical_glrt") cfg.mode = DetectorMode::PracticalGlrt;
                else throw std::runtime_error("config: unknown mode '" + value + "'");
            } else if (key == "scene") {
                if (value == "constant") cfg.scene.kind = SceneKind::Constant;
                else if (value == "ramp") cfg.scene.kind = SceneKind::Ramp;
                else if (value == "texture") cfg.scene.kind = SceneKind::Texture;
                else throw std::runtime_error("config: unknown scene '" + value + "'");
            } else if (key == "width") cfg.width = std::stoi(value);
            else if (key == "height") cfg.height = std::stoi(value);
            else if (key == "n_pixels") n_pixels = std::stoi(value);
            else if (key == "theta") cfg.scene.theta0 = std::stod(value);
            else if (key == "sigma") cfg.sigma = std::stod(value);
            else if (key == "grad_x") cfg.scene.grad_x = std::stod(value);
            else if (key == "grad_y") cfg.scene.grad_y = std::stod(value);
            else if (key == "texture") texture_path = value;
            else if (key == "rates") cfg.rates = parse_list(value);
            else if (key == "alphas") cfg.alphas = parse_list(value);
            else if (key == "n_trials") cfg.n_trials = std::stoi(value);
            else if (key == "seed") cfg.master_seed = std::stoull(value);
            else if (key == "alpha_stab") cfg.alpha_stab = std::stod(value);
            else throw std::runtime_error("config: unknown key '" + key + "'");
        }
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("config: malformed value in " + path);
    } catch (const std::out_of_range&) {
        throw std::runtime_error("config: value out of range in " + path);
    }

    if (n_pixels > 0) {
        if (cfg.width > 0 || cfg.height > 0)
            throw std::runtime_error("config: give either n_pixels or width/height");
        cfg.width = n_pixels;
        cfg.height = 1;
    }
    if (!texture_path.empty()) {
        cfg.scene.texture = load_pgm(texture_path);
        if (cfg.width == 0 && cfg.height == 0) {
            cfg.width = cfg.scene.texture.width;
            cfg.height = cfg.scene.texture.height;
        }
    } else if (cfg.scene.kind == SceneKind::Texture) {
        throw std::runtime_error("config: scene = texture needs a texture path");
    }
    cfg.validate();
    return cfg;
}

namespace {

// One Monte-Carlo batch of detector statistics (cover or stego at rate R).
std::vector<double> statistic_batch(const ExperimentConfig& cfg, const MomentSet& moments,
                                    double rate, std::uint64_t purpose_tag, int n_threads) {
    std::vector<double> stats(static_cast<std::size_t>(cfg.n_trials));
    parallel_for(cfg.n_trials, n_threads, [&](std::int64_t t) {
        const std::uint64_t trial_seed =
            mix_seed(cfg.master_seed, purpose_tag + (static_cast<std::uint64_t>(t) << 16));
        auto [image, field] = synth_cover(cfg.scene, cfg.width, cfg.height, cfg.sigma, trial_seed);
        if (rate > 0.0) {
            EmbedConfig embed_cfg{rate, mix_seed(trial_seed, kEmbedSeedTag)};
            image = embed_lsb_matching(image, embed_cfg).first;
        }
        if (cfg.mode == DetectorMode::TheoreticalLrt) {
            stats[static_cast<std::size_t>(t)] = normalized_statistic(image, field, moments);
        } else {
            stats[static_cast<std::size_t>(t)] = glrt_statistic(image, GlrtConfig{cfg.alpha_stab});
        }
    });
    return stats;
}

double exceedance(const std::vector<double>& stats, double tau) {
    std::int64_t hits = 0;
    for (double s : stats) hits += s > tau ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(stats.size());
}

}  // namespace

std::vector<McRow> mc_verify(const ExperimentConfig& cfg, int n_threads) {
    cfg.validate();

    // moments of the true field; the scene is deterministic so any seed
    // yields the same field
    const ParamField field =
        synth_cover(cfg.scene, cfg.width, cfg.height, cfg.sigma, cfg.master_seed).second;
    const MomentSet moments = moments_r2(field);

    // pixel count the statistic actually sums over
    std::int64_t n_pixels = field.size();
    if (cfg.mode == DetectorMode::PracticalGlrt)
        n_pixels = static_cast<std::int64_t>(cfg.width - 2) * (cfg.height - 2);

    const std::vector<double> cover_stats =
        statistic_batch(cfg, moments, 0.0, kCoverTrialTag, n_threads);

    // practical mode: thresholds calibrated on a disjoint cover batch
    std::vector<double> calib_stats;
    if (cfg.mode == DetectorMode::PracticalGlrt)
        calib_stats = statistic_batch(cfg, moments, 0.0, kCalibTrialTag, n_threads);

    std::vector<McRow> rows;
    for (std::size_t ri = 0; ri < cfg.rates.size(); ++ri) {
        const double rate = cfg.rates[ri];
        const std::vector<double> stego_stats =
            rate > 0.0
                ? statistic_batch(cfg, moments, rate,
                                  kStegoTrialTag + (static_cast<std::uint64_t>(ri) << 8), n_threads)
                : cover_stats;
        for (double alpha0 : cfg.alphas) {
            const double tau = cfg.mode == DetectorMode::TheoreticalLrt
                                   ? threshold(alpha0)
                                   : calibrate_threshold(calib_stats, alpha0);
            McRow row;
            row.alpha0 = alpha0;
            row.rate = rate;
            row.empirical_alpha = exceedance(cover_stats, tau);
            row.empirical_power = exceedance(stego_stats, tau);
            row.theory_power =
                rate > 0.0 ? power_general(alpha0, moments, n_pixels, rate) : alpha0;
            rows.push_back(row);
        }
    }
    return rows;
}

CsvTable mc_rows_to_table(const std::vector<McRow>& rows) {
    CsvTable table;
    table.header = {"alpha0", "rate", "empirical_alpha", "empirical_power", "theory_power"};
    for (const McRow& r : rows)
        table.add_row({format_double(r.alpha0), format_double(r.rate),
                       format_double(r.empirical_alpha), format_double(r.empirical_power),
                       format_double(r.theory_power)});
    return table;
}

RocCurve roc_from_scores(const std::vector<double>& cover_scores,
                         const std::vector<double>& stego_scores) {
    if (cover_scores.empty() || stego_scores.empty())
        throw std::invalid_argument("roc_from_scores: empty score list");

    std::vector<double> cover = cover_scores, stego = stego_scores;
    std::sort(cover.begin(), cover.end());
    std::sort(stego.begin(), stego.end());

    const std::int64_t m = static_cast<std::int64_t>(cover.size());
    const std::int64_t n = static_cast<std::int64_t>(stego.size());

    RocCurve roc;
    roc.points.emplace_back(0.0, 0.0);

    // sweep thresholds downward through pooled distinct score values;
    // integer trapezoid accumulator keeps the AUC exact
    std::int64_t fp = 0, tp = 0, area2 = 0;
    auto ci = cover.rbegin();
    auto si = stego.rbegin();
    while (ci != cover.rend() || si != stego.rend()) {
        double v;
        if (ci == cover.rend()) v = *si;
        else if (si == stego.rend()) v = *ci;
        else v = std::max(*ci, *si);

        const std::int64_t fp_prev = fp, tp_prev = tp;
        while (ci != cover.rend() && *ci == v) { ++fp; ++ci; }
        while (si != stego.rend() && *si == v) { ++tp; ++si; }
        area2 += (fp - fp_prev) * (tp + tp_prev);
        roc.points.emplace_back(static_cast<double>(fp) / static_cast<double>(m),
                                static_cast<double>(tp) / static_cast<double>(n));
    }
    roc.auc = static_cast<double>(area2) / (2.0 * static_cast<double>(m) * static_cast<double>(n));
    return roc;
}

double calibrate_threshold(std::vector<double> cover_scores, double alpha0) {
    if (cover_scores.empty()) throw std::invalid_argument("calibrate_threshold: empty scores");
    if (!(alpha0 > 0.0 && alpha0 < 1.0))
        throw std::invalid_argument("calibrate_threshold: alpha0 outside (0,1)");
    std::sort(cover_scores.begin(), cover_scores.end());
    const std::int64_t m = static_cast<std::int64_t>(cover_scores.size());
    std::int64_t idx = static_cast<std::int64_t>(
        std::ceil((1.0 - alpha0) * static_cast<double>(m))) - 1;
    idx = std::clamp<std::int64_t>(idx, 0, m - 1);
    return cover_scores[static_cast<std::size_t>(idx)];
}

}  // namespace lsbm
