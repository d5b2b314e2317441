#include "sphereconf/dem.hpp"

#include <chrono>
#include <cmath>

#include "sphereconf/log.hpp"

namespace sphereconf {

DemResult run_dem(const Mesh& mesh, const DemOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    require_genus_zero(mesh);

    const LaplacianSystem system = assemble_cotangent_laplacian(mesh);
    if (!system.delaunay)
        log::warn("dem: mesh is not Delaunay; positivity-based guarantees do not apply");

    const InitialMap initial = initial_spherical_map(mesh, system);
    ComplexVector h = stereo_project(initial.f);

    DemResult result;
    result.f = initial.f;
    RunReport& report = result.report;
    report.algorithm = "dem";
    report.n = mesh.num_vertices();
    report.num_faces = mesh.num_faces();
    report.rho = options.rho;
    report.tol = options.tol;
    report.max_iter = options.max_iter;
    report.delaunay = system.delaunay;
    report.pole_vertex = initial.pole_vertex;
    report.initial_energy = initial.quality;
    report.final_energy = initial.quality;

    double previous_energy = initial.quality;
    for (int k = 0; k < options.max_iter; ++k) {
        for (int s = 1; s <= 2; ++s) h = dem_sweep(system, mesh, h, options.rho, s).h;
        result.f = inverse_stereo(h);
        const double energy = dirichlet_energy(system, result.f);
        report.energies.push_back(energy);
        report.final_energy = energy;
        if (std::abs(energy - previous_energy) <
            options.tol * std::max(1.0, std::abs(energy))) {
            report.converged = true;
            break;
        }
        previous_energy = energy;
    }
    report.iterations = static_cast<int>(report.energies.size());

    report.distortion = angle_distortion(mesh, result.f);
    report.flipped_triangles = count_flipped_triangles(mesh.faces, result.f);
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace sphereconf
