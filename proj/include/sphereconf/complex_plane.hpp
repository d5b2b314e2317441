#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace sphereconf {

using ComplexVector = Eigen::VectorXcd;

/// North-pole stereographic projection h_i = (f_i1 + i f_i2) / (1 - f_i3).
/// Rows must sit on the unit sphere (within 1e-8) and stay clear of the
/// projection pole: f_i3 > 1 - 1e-12 is rejected rather than clamped.
inline ComplexVector stereo_project(const Eigen::MatrixX3d& f) {
    ComplexVector h(f.rows());
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
        const double norm = f.row(i).norm();
        if (std::abs(norm - 1.0) > 1e-8)
            throw std::runtime_error("complex-plane: stereo_project row " +
                                     std::to_string(i) + " is off the unit sphere");
        if (f(i, 2) > 1.0 - 1e-12)
            throw std::runtime_error("complex-plane: stereo_project row " +
                                     std::to_string(i) + " is at the projection pole");
        h[i] = std::complex<double>(f(i, 0), f(i, 1)) / (1.0 - f(i, 2));
    }
    return h;
}

/// Inverse stereographic projection
/// (u, v) -> (2u, 2v, u^2 + v^2 - 1) / (u^2 + v^2 + 1); rows land on the
/// unit sphere to machine precision.
inline Eigen::MatrixX3d inverse_stereo(const ComplexVector& h) {
    Eigen::MatrixX3d f(h.size(), 3);
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        const double u = h[i].real();
        const double v = h[i].imag();
        if (!std::isfinite(u) || !std::isfinite(v))
            throw std::runtime_error("complex-plane: inverse_stereo entry " +
                                     std::to_string(i) + " is not finite");
        const double r2 = u * u + v * v;
        // For very large |h| form the row from 1/|h|^2 to avoid inf/inf.
        if (r2 > 1e300) {
            const double s = 1.0 / r2;
            f.row(i) << 2.0 * u * s, 2.0 * v * s, (1.0 - s) / (1.0 + s);
        } else {
            f.row(i) << 2.0 * u / (r2 + 1.0), 2.0 * v / (r2 + 1.0), (r2 - 1.0) / (r2 + 1.0);
        }
    }
    return f;
}

/// Planar inversion h_i <- h_i / |h_i|^2 = 1 / conj(h_i); swaps the images
/// of the two hemispheres on the sphere.
inline ComplexVector invert_plane(const ComplexVector& h) {
    ComplexVector out(h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        if (!(std::abs(h[i]) > 1e-300))
            throw std::runtime_error("complex-plane: invert_plane zero entry at index " +
                                     std::to_string(i));
        out[i] = 1.0 / std::conj(h[i]);
    }
    return out;
}

/// Median of |h|; even counts take the mean of the two middle values.
inline double median_abs(const ComplexVector& h) {
    if (h.size() == 0)
        throw std::runtime_error("complex-plane: median of an empty vector");
    std::vector<double> mags(h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i) mags[i] = std::abs(h[i]);
    std::sort(mags.begin(), mags.end());
    const size_t m = mags.size();
    return m % 2 == 1 ? mags[m / 2] : 0.5 * (mags[m / 2 - 1] + mags[m / 2]);
}

/// h <- h / median(|h|).
inline ComplexVector median_normalize(const ComplexVector& h) {
    const double med = median_abs(h);
    if (!(med > 0.0))
        throw std::runtime_error("complex-plane: median_normalize zero median");
    return h / med;
}

}  // namespace sphereconf
