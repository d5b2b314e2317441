#include "sphereconf/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>

#include "sphereconf/log.hpp"

namespace sphereconf {

double track_eta(const std::vector<double>& eta1, const std::vector<double>& eta2) {
    if (eta1.empty() && eta2.empty())
        throw std::runtime_error("diagnostics: track_eta on an empty history");
    double eta = 0.0;
    for (double e : eta1) eta = std::max(eta, e);
    for (double e : eta2) eta = std::max(eta, e);
    return eta;
}

Certificate convergence_certificate(const DeflationData& defl,
                                    const TransferOperators& ops, double eta) {
    if (!(eta >= 0.0 && eta < 1.0))
        throw std::runtime_error("diagnostics: certificate requires eta in [0, 1)");

    Certificate cert;
    cert.eta = eta;
    cert.gamma = 1.0 / ((1.0 - eta) * (1.0 - eta));
    const Eigen::MatrixXd M =
        (cert.gamma * cert.gamma) * (defl.A2_hat.cwiseAbs() * ops.A1);

    cert.method = "power-iteration";
    double radius;
    try {
        radius = power_spectral_radius(M, 1e-10, 200000);
    } catch (const std::exception&) {
        if (M.rows() > 500) throw;
        radius = dense_spectral_radius(M);
        cert.method = "dense-oracle";
    }
    if (cert.method == "power-iteration" && M.rows() <= 500) {
        const double dense = dense_spectral_radius(M);
        if (std::abs(dense - radius) > 1e-8 * std::max(1.0, dense))
            throw std::runtime_error("diagnostics: certificate cross-check failed "
                                     "(power iteration and dense eigensolve disagree)");
    }
    cert.spectral_radius = radius;
    cert.satisfied = radius < 1.0;
    return cert;
}

DistortionStats angle_distortion(const Mesh& mesh, const Eigen::MatrixX3d& f) {
    if (f.rows() != mesh.num_vertices())
        throw std::runtime_error("diagnostics: angle_distortion dimension mismatch");
    for (Eigen::Index i = 0; i < f.rows(); ++i)
        if (std::abs(f.row(i).norm() - 1.0) > 1e-8)
            throw std::runtime_error("diagnostics: angle_distortion row " +
                                     std::to_string(i) + " is off the unit sphere");

    const Eigen::MatrixX3d source = corner_angles(mesh);
    Eigen::MatrixX3d image;
    try {
        image = corner_angles(f, mesh.faces);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("diagnostics: degenerate image triangle: ") +
                                 e.what());
    }

    DistortionStats stats;
    const Eigen::Index count = 3 * mesh.num_faces();
    stats.per_corner.resize(count);
    for (int face = 0; face < mesh.num_faces(); ++face)
        for (int c = 0; c < 3; ++c)
            stats.per_corner[3 * face + c] =
                std::abs(source(face, c) - image(face, c)) / source(face, c);
    stats.mean = stats.per_corner.mean();
    stats.sd = std::sqrt((stats.per_corner.array() - stats.mean).square().mean());
    return stats;
}

std::vector<double> r_linear_series(const std::vector<ComplexVector>& history,
                                    const ComplexVector& reference) {
    if (history.empty())
        throw std::runtime_error("diagnostics: r_linear_series on an empty history");
    size_t count = history.size();
    if ((history.back() - reference).cwiseAbs().maxCoeff() == 0.0)
        --count;  // the reference itself would contribute an identically-zero entry
    std::vector<double> series;
    series.reserve(count);
    for (size_t k = 1; k <= count; ++k) {
        const double err = (history[k - 1] - reference).cwiseAbs().maxCoeff();
        series.push_back(std::pow(err, 1.0 / static_cast<double>(k)));
    }
    return series;
}

double energy_comparison(const RunReport& report_dem, const RunReport& report_mdem) {
    if (report_dem.n != report_mdem.n || report_dem.num_faces != report_mdem.num_faces)
        throw std::runtime_error("diagnostics: energy_comparison on mismatched meshes");
    return report_mdem.final_energy - report_dem.final_energy;
}

int count_flipped_triangles(const Eigen::MatrixX3i& faces, const Eigen::MatrixX3d& f) {
    int flipped = 0;
    for (Eigen::Index face = 0; face < faces.rows(); ++face) {
        const Eigen::Vector3d a = f.row(faces(face, 0));
        const Eigen::Vector3d b = f.row(faces(face, 1));
        const Eigen::Vector3d c = f.row(faces(face, 2));
        if (a.cross(b).dot(c) <= 0.0) ++flipped;
    }
    return flipped;
}

}  // namespace sphereconf
