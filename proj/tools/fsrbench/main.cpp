// fsrbench: degrade, reconstruct and benchmark images sampled on a
// non-regular quarter grid.
//
// Subcommands:
//   mask         generate the quarter-sampling mask of the simulated sensor
//   reconstruct  degrade one image with a mask, reconstruct it, report quality
//   bench        sweep a directory of images over methods and iteration counts
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fsr/fsr.hpp"

namespace fs = std::filesystem;

namespace {

struct MethodConfig {
    fsr::FsrConfig fsr;
    fsr::TdConfig td;
};

struct RunRecord {
    std::string image_id;
    std::string method;
    int avg_iterations = 0;
    double psnr_db = 0.0;
    double ssim = 0.0;
    double wall_seconds = 0.0;
    long long planned = 0;
    long long spent = 0;
    long long mask_seed = -1;
    std::string config_hash;
};

std::string format_double(double v, int precision) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(precision);
    os << v;
    return os.str();
}

std::string csv_header() {
    return "imageId,method,avgIterations,psnrDb,ssim,wallSeconds,"
           "totalIterationsPlanned,totalIterationsSpent,maskSeed,configHash";
}

std::string to_csv(const RunRecord& r) {
    std::ostringstream os;
    os << r.image_id << ',' << r.method << ',' << r.avg_iterations << ','
       << format_double(r.psnr_db, 4) << ',' << format_double(r.ssim, 6) << ','
       << format_double(r.wall_seconds, 4) << ',' << r.planned << ',' << r.spent << ','
       << r.mask_seed << ',' << r.config_hash;
    return os.str();
}

// FNV-1a over the canonical parameter string; enough to regenerate a figure
// from the CSV alone.
std::string config_hash(const MethodConfig& mc) {
    std::ostringstream os;
    os << "block=" << mc.fsr.block_size << ";border=" << mc.fsr.border_width
       << ";fft=" << mc.fsr.fft_size << ";rho=" << mc.fsr.rho_hat << ";gamma=" << mc.fsr.gamma
       << ";delta=" << mc.fsr.delta << ";p=" << mc.td.surround << ";imin=" << mc.td.min_iters
       << ";imax=" << mc.td.max_iters;
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : os.str()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    std::ostringstream hex;
    hex << std::hex << h;
    return hex.str();
}

long long seed_from_mask_comment(const std::string& comment) {
    auto pos = comment.find("seed=");
    if (pos == std::string::npos) return -1;
    try {
        return std::stoll(comment.substr(pos + 5));
    } catch (...) {
        return -1;
    }
}

struct ReconstructionOutcome {
    fsr::ImageGrid image;
    double wall_seconds = 0.0;
    fsr::RunStats stats;
};

ReconstructionOutcome run_method(const std::string& method, const fsr::ImageGrid& degraded,
                                 const fsr::SamplingMask& mask, int iters,
                                 const MethodConfig& mc) {
    auto t0 = std::chrono::steady_clock::now();
    ReconstructionOutcome out{fsr::ImageGrid(1, 1), 0.0, {}};
    if (method == "fsr") {
        out.image = fsr::fsr_fixed(degraded, mask, iters, mc.fsr, &out.stats);
    } else if (method == "td-fsr") {
        out.image = fsr::td_fsr(degraded, mask, iters, mc.fsr, mc.td, &out.stats);
        if (out.stats.bounds_relaxed)
            std::cerr << "warning: iteration bounds relaxed to conserve the budget\n";
    } else if (method == "linear") {
        out.image = fsr::linear_reconstruct(degraded, mask);
        fsr::BlockLayout layout =
            fsr::make_block_layout(degraded.width(), degraded.height(), mc.fsr);
        out.stats.blocks_total = layout.count();
    } else {
        throw CLI::ValidationError("--method", "unknown method '" + method + "'");
    }
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

RunRecord evaluate_run(const std::string& image_id, const std::string& method, int iters,
                       const fsr::ImageGrid& original, const fsr::SamplingMask& mask,
                       long long mask_seed, const MethodConfig& mc,
                       fsr::ImageGrid* reconstructed = nullptr) {
    fsr::ImageGrid degraded = fsr::apply_mask(original, mask);
    ReconstructionOutcome outcome = run_method(method, degraded, mask, iters, mc);
    RunRecord rec;
    rec.image_id = image_id;
    rec.method = method;
    rec.avg_iterations = iters;
    fsr::QualityScore q = fsr::measure_quality(original, outcome.image);
    rec.psnr_db = q.psnr_db;
    rec.ssim = q.ssim;
    rec.wall_seconds = outcome.wall_seconds;
    rec.planned = outcome.stats.planned;
    rec.spent = outcome.stats.spent;
    rec.mask_seed = mask_seed;
    rec.config_hash = config_hash(mc);
    if (reconstructed) *reconstructed = std::move(outcome.image);
    return rec;
}

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FSRBENCH_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_mask(int width, int height, std::uint64_t seed, const std::string& out_path) {
    fsr::SamplingMask mask = fsr::generate_quarter_mask({width, height, seed});
    fsr::save_mask(mask, out_path, "quarter mask seed=" + std::to_string(seed));
    return 0;
}

int cmd_reconstruct(const std::string& in_path, const std::string& mask_path,
                    const std::string& method, int iters, const std::string& out_path,
                    const MethodConfig& mc) {
    fsr::ImageGrid original = fsr::load_image(in_path);
    std::string comment;
    fsr::SamplingMask mask = fsr::load_mask(mask_path, &comment);
    if (mask.width() != original.width() || mask.height() != original.height())
        throw std::runtime_error("mask dimensions do not match the input image");

    fsr::ImageGrid reconstructed(1, 1);
    RunRecord rec = evaluate_run(fs::path(in_path).stem().string(), method, iters, original, mask,
                                 seed_from_mask_comment(comment), mc, &reconstructed);
    fsr::save_image(reconstructed, out_path);
    std::cout << to_csv(rec) << "\n";
    return 0;
}

int cmd_bench(const std::string& dir, const std::string& mask_path, const std::string& methods_csv,
              const std::string& iters_csv, const std::string& report_path,
              const MethodConfig& mc) {
    std::string comment;
    fsr::SamplingMask mask = fsr::load_mask(mask_path, &comment);
    const long long mask_seed = seed_from_mask_comment(comment);

    std::vector<std::string> methods = split_list(methods_csv);
    if (methods.empty()) throw CLI::ValidationError("--methods", "no methods given");
    for (const std::string& m : methods)
        if (m != "fsr" && m != "td-fsr" && m != "linear")
            throw CLI::ValidationError("--methods", "unknown method '" + m + "'");
    std::vector<int> iters;
    for (const std::string& s : split_list(iters_csv)) {
        int v = std::atoi(s.c_str());
        if (v < 1) throw CLI::ValidationError("--iters-list", "iteration counts must be >= 1");
        iters.push_back(v);
    }
    if (iters.empty()) throw CLI::ValidationError("--iters-list", "no iteration counts given");

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    struct Task {
        std::string image_id;
        fsr::ImageGrid original;
        std::string method;
        int iters;
    };
    std::vector<Task> tasks;
    int loaded = 0;
    for (const fs::path& f : files) {
        fsr::ImageGrid img(1, 1);
        try {
            img = fsr::load_image(f.string());
        } catch (const std::exception& e) {
            std::cerr << "warning: skipping " << f << ": " << e.what() << "\n";
            continue;
        }
        if (img.width() != mask.width() || img.height() != mask.height()) {
            std::cerr << "warning: skipping " << f << ": dimensions do not match the mask\n";
            continue;
        }
        ++loaded;
        for (const std::string& m : methods)
            for (int it : iters) tasks.push_back({f.stem().string(), img, m, it});
    }
    if (loaded == 0) throw std::runtime_error("no usable images in " + dir);

    std::vector<RunRecord> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            const Task& t = tasks[i];
            rows[i] = evaluate_run(t.image_id, t.method, t.iters, t.original, mask, mask_seed, mc);
        }
    };
    unsigned workers = std::min<unsigned>(worker_count(), std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();

    std::ofstream report(report_path);
    if (!report.good()) throw std::runtime_error("cannot write report " + report_path);
    report << csv_header() << "\n";
    for (const RunRecord& r : rows) report << to_csv(r) << "\n";
    // per-(method, iterations) means over all processed images
    for (const std::string& m : methods) {
        for (int it : iters) {
            RunRecord mean;
            mean.image_id = "__mean__";
            mean.method = m;
            mean.avg_iterations = it;
            mean.mask_seed = mask_seed;
            mean.config_hash = config_hash(mc);
            int n = 0;
            for (const RunRecord& r : rows) {
                if (r.method != m || r.avg_iterations != it) continue;
                mean.psnr_db += r.psnr_db;
                mean.ssim += r.ssim;
                mean.wall_seconds += r.wall_seconds;
                mean.planned += r.planned;
                mean.spent += r.spent;
                ++n;
            }
            mean.psnr_db /= n;
            mean.ssim /= n;
            mean.wall_seconds /= n;
            mean.planned /= n;
            mean.spent /= n;
            report << to_csv(mean) << "\n";
        }
    }
    std::cerr << "report: " << rows.size() << " runs over " << loaded << " images -> "
              << report_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frequency selective reconstruction of non-regularly sampled images"};
    app.require_subcommand(1);

    // mask
    auto* mask_cmd = app.add_subcommand("mask", "generate a quarter-sampling mask");
    int m_width = 0, m_height = 0;
    std::uint64_t m_seed = 42;
    std::string m_out;
    mask_cmd->add_option("--width", m_width, "mask width (even)")->required();
    mask_cmd->add_option("--height", m_height, "mask height (even)")->required();
    mask_cmd->add_option("--seed", m_seed, "generator seed");
    mask_cmd->add_option("--out", m_out, "output mask file (P5)")->required();

    // shared reconstruction parameters
    MethodConfig mc;
    auto add_model_options = [&mc](CLI::App* cmd) {
        cmd->add_option("--rho", mc.fsr.rho_hat, "weighting decay factor");
        cmd->add_option("--gamma", mc.fsr.gamma, "orthogonality deficiency compensation");
        cmd->add_option("--delta", mc.fsr.delta, "weight of already reconstructed pixels");
        cmd->add_option("--block", mc.fsr.block_size, "block size U=V");
        cmd->add_option("--border", mc.fsr.border_width, "window border width");
        cmd->add_option("--imin", mc.td.min_iters, "minimum iterations per block");
        cmd->add_option("--imax", mc.td.max_iters, "maximum iterations per block");
        cmd->add_option("--p", mc.td.surround, "variance window enlargement");
    };

    // reconstruct
    auto* rec_cmd = app.add_subcommand("reconstruct", "degrade with a mask and reconstruct");
    std::string r_in, r_mask, r_method = "fsr", r_out;
    int r_iters = 20;
    rec_cmd->add_option("--in", r_in, "original image (P5)")->required();
    rec_cmd->add_option("--mask", r_mask, "sampling mask (P5)")->required();
    rec_cmd->add_option("--method", r_method, "fsr | td-fsr | linear");
    rec_cmd->add_option("--iters", r_iters, "average iterations per block");
    rec_cmd->add_option("--out", r_out, "output image (P5)")->required();
    add_model_options(rec_cmd);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "sweep a directory of images");
    std::string b_dir, b_mask, b_methods = "fsr,td-fsr,linear", b_iters = "20,40,60,80,100";
    std::string b_report;
    bench_cmd->add_option("--dir", b_dir, "directory of PGM images")->required();
    bench_cmd->add_option("--mask", b_mask, "sampling mask (P5)")->required();
    bench_cmd->add_option("--methods", b_methods, "comma list: fsr,td-fsr,linear");
    bench_cmd->add_option("--iters-list", b_iters, "comma list of iteration counts");
    bench_cmd->add_option("--report", b_report, "output CSV report")->required();
    add_model_options(bench_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        mc.fsr.fft_size = mc.fsr.block_size + 2 * mc.fsr.border_width;
        if (mask_cmd->parsed()) return cmd_mask(m_width, m_height, m_seed, m_out);
        if (rec_cmd->parsed()) {
            if (r_iters < 1) throw CLI::ValidationError("--iters", "must be >= 1");
            mc.fsr.validate();
            mc.td.validate();
            return cmd_reconstruct(r_in, r_mask, r_method, r_iters, r_out, mc);
        }
        if (bench_cmd->parsed()) {
            mc.fsr.validate();
            mc.td.validate();
            return cmd_bench(b_dir, b_mask, b_methods, b_iters, b_report, mc);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
