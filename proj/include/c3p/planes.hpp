#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <vector>

#include "c3p/error.hpp"

namespace c3p {

constexpr int kPlaneChannels = 8;
constexpr int kPlaneScaleCount = 2;
constexpr std::array<int, kPlaneScaleCount> kPlaneScales = {1, 2};
constexpr int kPlaneFeatureDim = kPlaneChannels * kPlaneScaleCount;  // 16
constexpr int kFourierFreqs = 10;
constexpr int kFourierDim = 2 * kFourierFreqs;  // 20
constexpr int kMinPlaneRes = 64;
constexpr int kMaxPlaneRes = 128;
// Largest magnitude an integer plane symbol may take before coding refuses.
constexpr int kPlaneSymbolCap = (1 << 15) - 1;

// Dense 2D feature grids, one per scale r in {1,2}, each with 8 channels of
// shape (rB) x (rB). Grid node i sits at coordinate i/(rB-1) (align-corners).
struct MultiScalePlanes {
    int base_resolution = kMinPlaneRes;
    // scale-major, channel-major: grids[s][c] is an (rB x rB) matrix.
    std::array<std::vector<Eigen::MatrixXd>, kPlaneScaleCount> grids;

    void validate() const;
    int side(int scale_index) const { return base_resolution * kPlaneScales[size_t(scale_index)]; }
};

struct QuantizedPlanes {
    int base_resolution = kMinPlaneRes;
    std::array<std::vector<Eigen::MatrixXi>, kPlaneScaleCount> grids;

    int side(int scale_index) const { return base_resolution * kPlaneScales[size_t(scale_index)]; }
    bool operator==(const QuantizedPlanes& other) const;
};

using PlaneFeature = Eigen::Matrix<double, kPlaneFeatureDim, 1>;
using FourierVector = Eigen::Matrix<double, kFourierDim, 1>;

// Base resolution from the anchor count: linear between 64 at min_count and
// 128 at max_count, rounded to the nearest even integer, clamped to [64,128].
int resolution_for(uint32_t anchor_count, uint32_t min_count, uint32_t max_count);

MultiScalePlanes make_planes(int base_resolution);
void init_planes_uniform(MultiScalePlanes& planes, class Rng& rng, double half_width = 0.5);

// The four grid nodes and bilinear weights touched by a query on one grid.
struct BilinearTap {
    int ix[4];
    int iy[4];
    double w[4];
};
BilinearTap bilinear_tap(int side, double u, double v);

// Eq.-style plane feature: per scale, bilinear interpolation of every
// channel at (u*(rB-1), v*(rB-1)); outputs concatenated scale-major then
// channel-major.
PlaneFeature query_plane_features(const MultiScalePlanes& planes, double u, double v);

// Same query against integer (dequantized) grids; this is the decoder path.
PlaneFeature query_plane_features(const QuantizedPlanes& planes, double u, double v);

// gamma(w) = (sin(2^0 pi w), cos(2^0 pi w), ..., sin(2^(L-1) pi w),
// cos(2^(L-1) pi w)) with L = 10.
FourierVector fourier_encode(double w);

// Entrywise round-half-even; magnitudes above kPlaneSymbolCap raise
// RangeError (a sign training diverged).
QuantizedPlanes quantize_planes(const MultiScalePlanes& planes);

// Five streams of identical shape ch x B x B: the scale-1 plane plus the
// 2x2 polyphase decomposition of the scale-2 plane (sub-plane (a,b) holds
// entries (2i+a, 2j+b), ordered (0,0),(0,1),(1,0),(1,1)).
struct SubPlane {
    std::vector<Eigen::MatrixXi> channels;  // kPlaneChannels matrices, B x B
    int side() const { return int(channels.empty() ? 0 : channels[0].rows()); }
};

std::array<SubPlane, 5> split_high_res(const QuantizedPlanes& q);
QuantizedPlanes reassemble(const std::array<SubPlane, 5>& subs);

double round_half_even(double x);

}  // namespace c3p
