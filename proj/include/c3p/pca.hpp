#pragma once

#include <Eigen/Core>
#include <vector>

#include "c3p/error.hpp"

namespace c3p {

// Principal frame of the anchor positions. Rows of `directions` are the
// principal directions ordered by descending eigenvalue; the sign of each
// row is fixed so its largest-magnitude component is positive (first such
// component on ties), which makes the decomposition deterministic.
struct PcaBasis {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    Eigen::Matrix3d directions = Eigen::Matrix3d::Identity();
    Eigen::Vector3d eigenvalues = Eigen::Vector3d::Zero();
};

// Componentwise min/max of the PCA-frame coordinates over the anchor set.
struct SceneBounds {
    Eigen::Vector3d min = Eigen::Vector3d::Zero();
    Eigen::Vector3d max = Eigen::Vector3d::Ones();
};

PcaBasis fit_pca(const std::vector<Eigen::Vector3d>& positions);

inline Eigen::Vector3d to_pca(const PcaBasis& basis, const Eigen::Vector3d& x) {
    return basis.directions * (x - basis.mean);
}

inline Eigen::Vector3d from_pca(const PcaBasis& basis, const Eigen::Vector3d& p) {
    return basis.directions.transpose() * p + basis.mean;
}

SceneBounds bounds_of(const PcaBasis& basis, const std::vector<Eigen::Vector3d>& positions);

// Maps PCA-frame coordinates into the query domains: the first two axes to
// the unit square, the third to [-1, 1]. Out-of-bounds inputs clamp; a
// zero-extent axis maps to its midpoint.
struct PlaneCoords {
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;
};

PlaneCoords normalize_coords(const SceneBounds& bounds, const Eigen::Vector3d& pca_point);

// Rounds the transmitted fields through fp32, the precision the container
// header stores. The coding path must use the snapped values on both sides.
PcaBasis snap_to_f32(const PcaBasis& basis);
SceneBounds snap_to_f32(const SceneBounds& bounds);

}  // namespace c3p
