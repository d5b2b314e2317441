#include "sphereconf/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include <nlohmann/json.hpp>

namespace sphereconf {

namespace {

constexpr double kSphereArea = 4.0 * std::numbers::pi;

std::string csv_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

nlohmann::json report_to_json(const RunReport& report, const std::string& input_path,
                              const std::string& input_format,
                              const std::string& area_normalization,
                              bool include_timing) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["algorithm"] = report.algorithm;
    j["input"] = {{"path", input_path},
                  {"format", input_format},
                  {"n", report.n},
                  {"faces", report.num_faces}};
    j["config"] = {{"rho", report.rho},
                   {"tol", report.tol},
                   {"max_iter", report.max_iter},
                   {"area_normalization", area_normalization}};
    j["converged"] = report.converged;
    j["iterations"] = report.iterations;
    j["delaunay"] = report.delaunay;
    j["flipped_triangles"] = report.flipped_triangles;
    j["pole_vertex"] = report.pole_vertex;
    if (report.algorithm == "mdem") {
        j["m1"] = report.m1;
        j["m2"] = report.m2;
    }
    j["initial_energy"] = report.initial_energy;
    j["final_energy"] = {{"raw", report.final_energy},
                         {"minus_4pi", report.final_energy - kSphereArea}};
    j["energies"] = report.energies;
    j["residuals_h1"] = report.residuals_h1;
    j["residuals_h2"] = report.residuals_h2;
    j["scalings"] = report.scalings;
    j["eta"] = report.eta;
    j["eta_series"] = {{"h2_halfstep", report.eta1}, {"h1_halfstep", report.eta2}};
    j["eta_convention"] = "scaled-magnitudes";
    if (report.certificate) {
        const Certificate& cert = *report.certificate;
        j["certificate"] = {{"eta", cert.eta},
                            {"gamma", cert.gamma},
                            {"spectral_radius", cert.spectral_radius},
                            {"satisfied", cert.satisfied},
                            {"method", cert.method}};
    }
    j["distortion"] = {
        {"mean", report.distortion.mean},
        {"sd", report.distortion.sd},
        {"convention", "chordal"},
        {"per_corner", std::vector<double>(report.distortion.per_corner.begin(),
                                           report.distortion.per_corner.end())}};
    j["r_linear"] = report.r_linear;
    if (include_timing) j["wall_time_seconds"] = report.wall_time;
    return j;
}

void write_history_csv(std::ostream& out, const RunReport& report) {
    out << "k,residual_h1,residual_h2,c_k,E_D\n";
    const size_t rows = std::max(
        {report.residuals_h1.size(), report.residuals_h2.size(), report.energies.size()});
    for (size_t k = 0; k < rows; ++k) {
        out << k + 1 << ',';
        if (k < report.residuals_h1.size()) out << csv_number(report.residuals_h1[k]);
        out << ',';
        if (k < report.residuals_h2.size()) out << csv_number(report.residuals_h2[k]);
        out << ',';
        // First scaling of round k (the h2 half-step).
        if (2 * k < report.scalings.size()) out << csv_number(report.scalings[2 * k]);
        out << ',';
        if (report.algorithm == "dem" && k < report.energies.size())
            out << csv_number(report.energies[k]);
        out << '\n';
    }
}

void write_batch_csv_header(std::ostream& out) {
    out << "mesh_id,n,m1,m2,eta,cert_rho,E_D_raw,E_D_minus_4pi,mean_dtheta,"
           "sd_dtheta,iterations,converged\n";
}

void write_batch_csv_row(std::ostream& out, const BatchRow& row) {
    out << row.mesh_id << ',';
    if (row.failed) {
        out << ",,,,,,,,,," << "error\n";
        return;
    }
    const RunReport& r = row.report;
    out << r.n << ',' << r.m1 << ',' << r.m2 << ',' << csv_number(r.eta) << ','
        << (r.certificate ? csv_number(r.certificate->spectral_radius) : "") << ','
        << csv_number(r.final_energy) << ',' << csv_number(r.final_energy - kSphereArea)
        << ',' << csv_number(r.distortion.mean) << ',' << csv_number(r.distortion.sd)
        << ',' << r.iterations << ',' << (r.converged ? "true" : "false") << '\n';
}

}  // namespace sphereconf
