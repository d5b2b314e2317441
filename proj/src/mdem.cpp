#include "sphereconf/mdem.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sphereconf/log.hpp"

namespace sphereconf {

namespace {

// Scaled half-step: out_i = c / conj(t_i) with c = max |t_i|. Returns c and
// records 1 - min(|t|/c).
ComplexVector scaled_inversion(const ComplexVector& t, double& scale_out,
                               double& eta_out, const char* stage) {
    const Eigen::VectorXd mags = t.cwiseAbs();
    for (Eigen::Index i = 0; i < mags.size(); ++i)
        if (!(mags[i] > 1e-300))
            throw std::runtime_error(std::string("mdem: zero magnitude in ") + stage +
                                     " at index " + std::to_string(i));
    const double c = mags.maxCoeff();
    scale_out = c;
    eta_out = 1.0 - (mags / c).minCoeff();
    ComplexVector out(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) out[i] = c / std::conj(t[i]);
    return out;
}

}  // namespace

MdemState mdem_seed(const TransferOperators& ops) {
    if (ops.h_setup.size() == 0)
        throw std::runtime_error("mdem: transfer operators carry no setup state");
    MdemState state;
    // h_setup lives in the chart of hemisphere 2; boundary-1 values are read
    // through one more inversion.
    state.h1 = invert_plane(ops.h_setup(ops.part1.boundary));
    state.h2 = ops.h_setup(ops.part2.boundary);
    return state;
}

void mdem_step(MdemState& state, const TransferOperators& ops,
               const DeflationData& defl) {
    double c = 0.0, eta = 0.0;

    const ComplexVector t1 = dense_mul(ops.A1, state.h1);
    const ComplexVector h2_next = scaled_inversion(t1, c, eta, "A1 h1");
    state.scalings.push_back(c);
    state.eta1.push_back(eta);

    const ComplexVector t2 = dense_mul(defl.A2_hat, h2_next);
    const ComplexVector h1_next = scaled_inversion(t2, c, eta, "A2_hat h2");
    state.scalings.push_back(c);
    state.eta2.push_back(eta);

    state.residuals_h1.push_back((h1_next - state.h1).norm());
    state.residuals_h2.push_back((h2_next - state.h2).norm());
    state.h1 = h1_next;
    state.h2 = h2_next;
    state.h1_history.push_back(state.h1);
    ++state.step;
}

ComplexVector reconstruct(const TransferOperators& ops, const ComplexVector& h1) {
    if (h1.size() != ops.m1())
        throw std::runtime_error("mdem: reconstruct boundary vector length mismatch");

    // Hemisphere 1 solve, then the inversion carries its interior values
    // into the chart of hemisphere 2.
    const ComplexVector interior1 = ops.solver1->solve((-sparse_mul(ops.B1, h1)).eval());
    const ComplexVector boundary2 = invert_plane(interior1(ops.p1_rows));
    const ComplexVector interior2 =
        ops.solver2->solve((-sparse_mul(ops.B2, boundary2)).eval());

    const int n = ops.n();
    std::vector<int> position_in_interior1(n, -1);
    for (size_t a = 0; a < ops.part1.interior.size(); ++a)
        position_in_interior1[ops.part1.interior[a]] = static_cast<int>(a);

    ComplexVector h(n);
    h(ops.part2.interior) = interior2;
    for (int v : ops.part2.boundary_prime) {
        const int a = position_in_interior1[v];
        if (a < 0)
            throw std::runtime_error("mdem: reconstruct gluing failed at vertex " +
                                     std::to_string(v));
        h[v] = 1.0 / std::conj(interior1[a]);
    }
    return h;
}

MdemResult run_mdem(const Mesh& mesh, const MdemOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    require_genus_zero(mesh);

    const LaplacianSystem system = assemble_cotangent_laplacian(mesh);
    if (!system.delaunay)
        log::warn("mdem: mesh is not Delaunay; positivity-based guarantees do not apply");

    const InitialMap initial = initial_spherical_map(mesh, system);
    const ComplexVector h0 = stereo_project(initial.f);

    MdemResult result;
    result.ops = build_transfer_operators(system, mesh, h0, options.rho);
    result.defl = deflation_vector(result.ops);

    MdemState state = mdem_seed(result.ops);
    RunReport& report = result.report;
    report.algorithm = "mdem";
    report.n = mesh.num_vertices();
    report.num_faces = mesh.num_faces();
    report.m1 = result.ops.m1();
    report.m2 = result.ops.m2();
    report.rho = options.rho;
    report.tol = options.tol;
    report.max_iter = options.max_iter;
    report.delaunay = system.delaunay;
    report.pole_vertex = initial.pole_vertex;
    report.initial_energy = initial.quality;

    if (options.tol == std::numeric_limits<double>::infinity()) {
        report.converged = true;  // vacuous: reconstruct the seed boundary data
    } else {
        for (int k = 0; k < options.max_iter; ++k) {
            mdem_step(state, result.ops, result.defl);
            if (state.residuals_h1.back() < options.tol &&
                state.residuals_h2.back() < options.tol) {
                report.converged = true;
                break;
            }
        }
    }
    report.iterations = state.step;
    report.residuals_h1 = state.residuals_h1;
    report.residuals_h2 = state.residuals_h2;
    report.scalings = state.scalings;
    report.eta1 = state.eta1;
    report.eta2 = state.eta2;
    report.eta = state.step > 0 ? track_eta(state.eta1, state.eta2) : 0.0;
    if (!state.h1_history.empty())
        report.r_linear = r_linear_series(state.h1_history, state.h1_history.back());

    ComplexVector h = reconstruct(result.ops, state.h1);
    h = median_normalize(h);
    result.f = inverse_stereo(h);

    report.final_energy = dirichlet_energy(system, result.f);
    report.energies = {report.final_energy};
    report.distortion = angle_distortion(mesh, result.f);
    report.flipped_triangles = count_flipped_triangles(mesh.faces, result.f);
    if (options.compute_certificate)
        report.certificate = convergence_certificate(result.defl, result.ops, report.eta);
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace sphereconf
