#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sphereconf/dem.hpp"
#include "sphereconf/log.hpp"
#include "sphereconf/mdem.hpp"
#include "sphereconf/mesh_io.hpp"
#include "sphereconf/report.hpp"

namespace fs = std::filesystem;
using namespace sphereconf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

struct CommonOptions {
    std::string input;
    std::string algo = "mdem";
    double rho = 0.0;  // 0 = pick the per-algorithm default
    double tol = 1e-9;
    int max_iter = 1000;
    std::string out, report_path, history_path;
    std::string area = "none";
    std::string dump_laplacian;
    bool timing = false;
};

double effective_rho(const CommonOptions& opts, const std::string& algo) {
    if (opts.rho > 0.0) return opts.rho;
    return algo == "dem" ? 1.1 : 1.4;
}

Mesh load_validated(const std::string& path) {
    Mesh mesh = load_mesh_file(path);
    const ValidationReport validation = validate_genus_zero(mesh);
    if (!validation.ok()) {
        std::string msg = "mesh: validation failed:";
        for (const auto& failure : validation.failures) msg += " [" + failure + "]";
        throw std::runtime_error(msg);
    }
    return mesh;
}

Mesh apply_area_normalization(Mesh mesh, const std::string& area) {
    if (area == "one") return normalize_area(mesh, 1.0);
    if (area == "4pi") return normalize_area(mesh, 4.0 * std::numbers::pi);
    return mesh;
}

std::string default_path(const std::string& input, const char* suffix) {
    fs::path p(input);
    return (p.parent_path() / (p.stem().string() + suffix)).string();
}

RunReport run_algorithm(const Mesh& mesh, const std::string& algo,
                        const CommonOptions& opts, Eigen::MatrixX3d& f_out) {
    if (algo == "dem") {
        DemOptions dem_opts;
        dem_opts.rho = effective_rho(opts, "dem");
        dem_opts.tol = opts.tol;
        dem_opts.max_iter = opts.max_iter;
        DemResult result = run_dem(mesh, dem_opts);
        f_out = std::move(result.f);
        return result.report;
    }
    MdemOptions mdem_opts;
    mdem_opts.rho = effective_rho(opts, "mdem");
    mdem_opts.tol = opts.tol;
    mdem_opts.max_iter = opts.max_iter;
    MdemResult result = run_mdem(mesh, mdem_opts);
    f_out = std::move(result.f);
    return result.report;
}

int cmd_param(CommonOptions opts) {
    const Mesh input_mesh = load_validated(opts.input);
    const MeshFormat format = guess_format(opts.input);
    const Mesh mesh = apply_area_normalization(input_mesh, opts.area);

    if (!opts.dump_laplacian.empty()) {
        std::ofstream dump(opts.dump_laplacian, std::ios::binary);
        if (!dump)
            throw std::runtime_error("cli: cannot write '" + opts.dump_laplacian + "'");
        write_matrix_market(dump, assemble_cotangent_laplacian(mesh).L);
    }

    Eigen::MatrixX3d f;
    const RunReport report = run_algorithm(mesh, opts.algo, opts, f);

    const std::string out = opts.out.empty() ? default_path(opts.input, "_sphere.off") : opts.out;
    const MeshFormat out_format = opts.out.empty() ? format : guess_format(out);
    Mesh sphere = mesh;
    sphere.vertices = f;
    write_mesh_file(out, sphere, out_format);

    const std::string report_path =
        opts.report_path.empty() ? default_path(opts.input, "_report.json") : opts.report_path;
    {
        std::ofstream rs(report_path, std::ios::binary);
        if (!rs) throw std::runtime_error("cli: cannot write '" + report_path + "'");
        rs << report_to_json(report, opts.input,
                             format == MeshFormat::off ? "off" : "obj", opts.area,
                             opts.timing)
                  .dump(2)
           << '\n';
    }

    const std::string history_path =
        opts.history_path.empty() ? default_path(opts.input, "_history.csv") : opts.history_path;
    {
        std::ofstream hs(history_path, std::ios::binary);
        if (!hs) throw std::runtime_error("cli: cannot write '" + history_path + "'");
        write_history_csv(hs, report);
    }

    std::printf("%s: %s in %d iteration(s), E_D = %.6g (E_D - 4pi = %.6g), "
                "mean d_theta = %.4g\n",
                report.algorithm.c_str(),
                report.converged ? "converged" : "did not converge", report.iterations,
                report.final_energy, report.final_energy - 4.0 * std::numbers::pi,
                report.distortion.mean);
    return report.converged ? kExitOk : kExitNotConverged;
}

int cmd_certify(const CommonOptions& opts, int burn_in) {
    const Mesh mesh =
        apply_area_normalization(load_validated(opts.input), opts.area);

    MdemOptions mdem_opts;
    mdem_opts.rho = effective_rho(opts, "mdem");
    mdem_opts.tol = 0.0;  // never trips: run the full burn-in
    mdem_opts.max_iter = burn_in;
    const MdemResult result = run_mdem(mesh, mdem_opts);
    const Certificate& cert = *result.report.certificate;

    std::printf("eta                 = %.12g\n", cert.eta);
    std::printf("gamma               = %.12g\n", cert.gamma);
    std::printf("rho(g^2 |A2^| A1)   = %.12g   [%s]\n", cert.spectral_radius,
                cert.method.c_str());
    std::printf("certificate         : %s\n", cert.satisfied ? "SATISFIED" : "VIOLATED");
    return cert.satisfied ? kExitOk : kExitNotConverged;
}

int cmd_compare(const CommonOptions& opts, bool debug_same) {
    const Mesh mesh =
        apply_area_normalization(load_validated(opts.input), opts.area);

    Eigen::MatrixX3d f_first, f_second;
    const std::string first_algo = debug_same ? "mdem" : "dem";
    const RunReport first = run_algorithm(mesh, first_algo, opts, f_first);
    const RunReport second = run_algorithm(mesh, "mdem", opts, f_second);

    std::printf("%-6s %14s %14s %12s %12s %6s %10s\n", "algo", "E_D", "E_D-4pi",
                "mean_dtheta", "sd_dtheta", "iters", "wall[s]");
    for (const RunReport* r : {&first, &second})
        std::printf("%-6s %14.8g %14.8g %12.6g %12.6g %6d %10.3f\n",
                    r->algorithm.c_str(), r->final_energy,
                    r->final_energy - 4.0 * std::numbers::pi, r->distortion.mean,
                    r->distortion.sd, r->iterations, r->wall_time);
    std::printf("d_E = %.10g\n", energy_comparison(first, second));
    return first.converged && second.converged ? kExitOk : kExitNotConverged;
}

int cmd_batch(const CommonOptions& opts, const std::string& directory,
              const std::string& pattern, int workers, const std::string& csv_path) {
    if (!fs::is_directory(directory))
        throw std::runtime_error("cli: '" + directory + "' is not a readable directory");

    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        const bool is_mesh = ext == ".off" || ext == ".obj";
        const bool matches =
            pattern.empty() || fnmatch(pattern.c_str(), name.c_str(), 0) == 0;
        if (is_mesh && matches) paths.push_back(entry.path().string());
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) log::warn("batch: no meshes matched in '%s'", directory.c_str());

    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cli: cannot write '" + csv_path + "'");
    write_batch_csv_header(csv);

    std::mutex writer_mutex;
    std::vector<double> means, cert_rhos;
    int failures = 0;

    std::atomic<size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= paths.size()) return;
            BatchRow row;
            row.mesh_id = fs::path(paths[i]).stem().string();
            try {
                const Mesh mesh =
                    apply_area_normalization(load_validated(paths[i]), opts.area);
                MdemOptions mdem_opts;
                mdem_opts.rho = effective_rho(opts, "mdem");
                mdem_opts.tol = opts.tol;
                mdem_opts.max_iter = opts.max_iter;
                row.report = run_mdem(mesh, mdem_opts).report;
            } catch (const std::exception& e) {
                row.failed = true;
                row.error = e.what();
            }
            std::lock_guard<std::mutex> lock(writer_mutex);
            write_batch_csv_row(csv, row);
            if (row.failed) {
                ++failures;
                log::error("batch: %s failed: %s", row.mesh_id.c_str(), row.error.c_str());
            } else {
                means.push_back(row.report.distortion.mean);
                if (row.report.certificate)
                    cert_rhos.push_back(row.report.certificate->spectral_radius);
            }
        }
    };

    const int thread_count = std::max(1, workers);
    std::vector<std::thread> pool;
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    const auto mean_sd = [](const std::vector<double>& xs) {
        if (xs.empty()) return std::pair<double, double>(0.0, 0.0);
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        return std::pair<double, double>(mean, std::sqrt(var / xs.size()));
    };
    const auto [dist_mean, dist_sd] = mean_sd(means);
    const auto [rho_mean, rho_sd] = mean_sd(cert_rhos);
    std::printf("batch: %zu mesh(es), %d failure(s); mean d_theta %.4g (SD %.4g), "
                "certificate radius %.4g (SD %.4g); rows in %s\n",
                paths.size(), failures, dist_mean, dist_sd, rho_mean, rho_sd,
                csv_path.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spherical conformal parameterization of genus-zero meshes by "
                 "Dirichlet energy minimization"};
    app.require_subcommand(1);

    CommonOptions opts;
    int burn_in = 20;
    bool debug_same = false;
    std::string batch_dir, batch_pattern, batch_csv = "sphereconf_batch.csv";
    int workers = 1;

    const auto add_solver_flags = [&](CLI::App* cmd, bool with_algo) {
        if (with_algo)
            cmd->add_option("--algo", opts.algo, "Algorithm (dem | mdem)")
                ->check(CLI::IsMember({"dem", "mdem"}))
                ->capture_default_str();
        cmd->add_option("--rho", opts.rho,
                        "Partition radius (> 1; default 1.4 mdem, 1.1 dem)");
        cmd->add_option("--tol", opts.tol, "Convergence tolerance")
            ->capture_default_str();
        cmd->add_option("--max-iter", opts.max_iter, "Iteration cap")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--area", opts.area, "Area normalization (one | 4pi | none)")
            ->check(CLI::IsMember({"one", "4pi", "none"}))
            ->capture_default_str();
    };

    CLI::App* param = app.add_subcommand("param", "Compute a spherical parameterization");
    param->add_option("input", opts.input, "Input mesh (.off or .obj)")->required();
    add_solver_flags(param, true);
    param->add_option("--out", opts.out, "Output mesh path (defaults beside the input)");
    param->add_option("--report", opts.report_path, "JSON report path");
    param->add_option("--history", opts.history_path, "Per-iteration CSV path");
    param->add_option("--dump-laplacian", opts.dump_laplacian,
                      "Dump the cotangent Laplacian in MatrixMarket format");
    param->add_flag("--timing", opts.timing, "Include wall time in the JSON report");

    CLI::App* certify =
        app.add_subcommand("certify", "Evaluate the R-linear convergence certificate");
    certify->add_option("input", opts.input, "Input mesh")->required();
    add_solver_flags(certify, false);
    certify->add_option("--burn-in", burn_in, "Iterations used to estimate eta")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI::App* compare = app.add_subcommand("compare", "Run dem and mdem side by side");
    compare->add_option("input", opts.input, "Input mesh")->required();
    add_solver_flags(compare, false);
    compare->add_flag("--debug-same", debug_same, "Run mdem twice instead (d_E = 0)");

    CLI::App* batch =
        app.add_subcommand("batch", "Run mdem + certification over a mesh directory");
    batch->add_option("directory", batch_dir, "Directory of meshes")->required();
    batch->add_option("--pattern", batch_pattern, "Filename glob (default: all meshes)");
    batch->add_option("--out", batch_csv, "Output CSV path")->capture_default_str();
    batch->add_option("--workers", workers, "Concurrent meshes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_solver_flags(batch, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (param->parsed()) return cmd_param(opts);
        if (certify->parsed()) return cmd_certify(opts, burn_in);
        if (compare->parsed()) return cmd_compare(opts, debug_same);
        if (batch->parsed())
            return cmd_batch(opts, batch_dir, batch_pattern, workers, batch_csv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
