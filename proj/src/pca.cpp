#include "c3p/pca.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace c3p {

PcaBasis fit_pca(const std::vector<Eigen::Vector3d>& positions) {
    if (positions.size() < 4) throw ValidationError("PCA needs at least 4 points");

    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& p : positions) mean += p;
    mean /= double(positions.size());

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    double max_dev = 0.0;
    for (const auto& p : positions) {
        Eigen::Vector3d d = p - mean;
        cov += d * d.transpose();
        max_dev = std::max(max_dev, d.cwiseAbs().maxCoeff());
    }
    if (max_dev == 0.0) throw ValidationError("all points identical; PCA is degenerate");
    cov /= double(positions.size());

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
    if (solver.info() != Eigen::Success) throw NumericError("eigendecomposition failed");

    PcaBasis basis;
    basis.mean = mean;
    // Eigen returns ascending eigenvalues; reverse to descending.
    for (int i = 0; i < 3; ++i) {
        double lambda = solver.eigenvalues()[2 - i];
        Eigen::Vector3d dir = solver.eigenvectors().col(2 - i);
        // Sign convention: first component of largest magnitude made positive.
        int arg = 0;
        double best = std::abs(dir[0]);
        for (int c = 1; c < 3; ++c) {
            if (std::abs(dir[c]) > best) {
                best = std::abs(dir[c]);
                arg = c;
            }
        }
        if (dir[arg] < 0) dir = -dir;
        basis.directions.row(i) = dir.transpose();
        basis.eigenvalues[i] = std::max(0.0, lambda);
    }
    return basis;
}

SceneBounds bounds_of(const PcaBasis& basis, const std::vector<Eigen::Vector3d>& positions) {
    if (positions.empty()) throw ValidationError("bounds of an empty set");
    SceneBounds b;
    b.min = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    b.max = -b.min;
    for (const auto& p : positions) {
        Eigen::Vector3d q = to_pca(basis, p);
        b.min = b.min.cwiseMin(q);
        b.max = b.max.cwiseMax(q);
    }
    return b;
}

PlaneCoords normalize_coords(const SceneBounds& bounds, const Eigen::Vector3d& p) {
    auto unit = [&](int axis) {
        double extent = bounds.max[axis] - bounds.min[axis];
        if (!(extent > 0)) return 0.5;
        double t = (p[axis] - bounds.min[axis]) / extent;
        return std::clamp(t, 0.0, 1.0);
    };
    PlaneCoords c;
    c.u = unit(0);
    c.v = unit(1);
    double extent = bounds.max[2] - bounds.min[2];
    if (!(extent > 0)) {
        c.w = 0.0;
    } else {
        double t = (p[2] - bounds.min[2]) / extent;
        c.w = std::clamp(2.0 * t - 1.0, -1.0, 1.0);
    }
    return c;
}

PcaBasis snap_to_f32(const PcaBasis& basis) {
    PcaBasis out = basis;
    for (int i = 0; i < 3; ++i) {
        out.mean[i] = double(float(basis.mean[i]));
        out.eigenvalues[i] = double(float(basis.eigenvalues[i]));
        for (int j = 0; j < 3; ++j) out.directions(i, j) = double(float(basis.directions(i, j)));
    }
    return out;
}

SceneBounds snap_to_f32(const SceneBounds& bounds) {
    SceneBounds out;
    for (int i = 0; i < 3; ++i) {
        out.min[i] = double(float(bounds.min[i]));
        out.max[i] = double(float(bounds.max[i]));
    }
    return out;
}

}  // namespace c3p
