#include "c3p/planes.hpp"

#include <algorithm>
#include <cmath>

#include "c3p/rng.hpp"

namespace c3p {

double round_half_even(double x) {
    // nearbyint honors the default FE_TONEAREST mode (ties to even).
    return std::nearbyint(x);
}

void MultiScalePlanes::validate() const {
    if (base_resolution < kMinPlaneRes || base_resolution > kMaxPlaneRes)
        throw ValidationError("base resolution out of [64,128]");
    for (int s = 0; s < kPlaneScaleCount; ++s) {
        if (int(grids[size_t(s)].size()) != kPlaneChannels)
            throw ValidationError("plane must have 8 channels");
        for (const auto& g : grids[size_t(s)]) {
            if (g.rows() != side(s) || g.cols() != side(s))
                throw ValidationError("plane grid has wrong shape");
            if (!g.allFinite()) throw ValidationError("non-finite plane value");
        }
    }
}

bool QuantizedPlanes::operator==(const QuantizedPlanes& other) const {
    if (base_resolution != other.base_resolution) return false;
    for (int s = 0; s < kPlaneScaleCount; ++s)
        for (int c = 0; c < kPlaneChannels; ++c)
            if (grids[size_t(s)][size_t(c)] != other.grids[size_t(s)][size_t(c)]) return false;
    return true;
}

int resolution_for(uint32_t anchor_count, uint32_t min_count, uint32_t max_count) {
    if (max_count <= min_count) return kMinPlaneRes;
    double n = double(std::max(anchor_count, min_count));
    double t = (n - double(min_count)) / (double(max_count) - double(min_count));
    t = std::min(t, 1.0);
    double b = kMinPlaneRes + t * (kMaxPlaneRes - kMinPlaneRes);
    int even = 2 * int(round_half_even(b / 2.0));
    return std::clamp(even, kMinPlaneRes, kMaxPlaneRes);
}

MultiScalePlanes make_planes(int base_resolution) {
    MultiScalePlanes p;
    p.base_resolution = base_resolution;
    for (int s = 0; s < kPlaneScaleCount; ++s) {
        p.grids[size_t(s)].assign(kPlaneChannels, Eigen::MatrixXd::Zero(p.side(s), p.side(s)));
    }
    p.validate();
    return p;
}

void init_planes_uniform(MultiScalePlanes& planes, Rng& rng, double half_width) {
    for (int s = 0; s < kPlaneScaleCount; ++s)
        for (auto& g : planes.grids[size_t(s)])
            for (Eigen::Index i = 0; i < g.rows(); ++i)
                for (Eigen::Index j = 0; j < g.cols(); ++j)
                    g(i, j) = rng.uniform(-half_width, half_width);
}

BilinearTap bilinear_tap(int side, double u, double v) {
    // Continuous grid coordinates under align-corners; row index follows u.
    double x = u * double(side - 1);
    double y = v * double(side - 1);
    int i0 = std::clamp(int(std::floor(x)), 0, side - 2);
    int j0 = std::clamp(int(std::floor(y)), 0, side - 2);
    double fx = x - double(i0);
    double fy = y - double(j0);
    BilinearTap t;
    t.ix[0] = i0;     t.iy[0] = j0;     t.w[0] = (1 - fx) * (1 - fy);
    t.ix[1] = i0;     t.iy[1] = j0 + 1; t.w[1] = (1 - fx) * fy;
    t.ix[2] = i0 + 1; t.iy[2] = j0;     t.w[2] = fx * (1 - fy);
    t.ix[3] = i0 + 1; t.iy[3] = j0 + 1; t.w[3] = fx * fy;
    return t;
}

template <typename Grids>
static PlaneFeature query_impl(const Grids& grids, int base_resolution, double u, double v) {
    PlaneFeature out;
    int k = 0;
    for (int s = 0; s < kPlaneScaleCount; ++s) {
        int side = base_resolution * kPlaneScales[size_t(s)];
        BilinearTap t = bilinear_tap(side, u, v);
        for (int c = 0; c < kPlaneChannels; ++c) {
            const auto& g = grids[size_t(s)][size_t(c)];
            double acc = 0.0;
            for (int n = 0; n < 4; ++n) acc += t.w[n] * double(g(t.ix[n], t.iy[n]));
            out[k++] = acc;
        }
    }
    return out;
}

PlaneFeature query_plane_features(const MultiScalePlanes& planes, double u, double v) {
    return query_impl(planes.grids, planes.base_resolution, u, v);
}

PlaneFeature query_plane_features(const QuantizedPlanes& planes, double u, double v) {
    return query_impl(planes.grids, planes.base_resolution, u, v);
}

FourierVector fourier_encode(double w) {
    if (!std::isfinite(w)) throw NumericError("non-finite Fourier input");
    FourierVector out;
    constexpr double kPi = 3.14159265358979323846;
    double scale = kPi;
    for (int l = 0; l < kFourierFreqs; ++l) {
        out[2 * l] = std::sin(scale * w);
        out[2 * l + 1] = std::cos(scale * w);
        scale *= 2.0;
    }
    return out;
}

QuantizedPlanes quantize_planes(const MultiScalePlanes& planes) {
    planes.validate();
    QuantizedPlanes q;
    q.base_resolution = planes.base_resolution;
    for (int s = 0; s < kPlaneScaleCount; ++s) {
        q.grids[size_t(s)].assign(kPlaneChannels, Eigen::MatrixXi(planes.side(s), planes.side(s)));
        for (int c = 0; c < kPlaneChannels; ++c) {
            const Eigen::MatrixXd& g = planes.grids[size_t(s)][size_t(c)];
            Eigen::MatrixXi& o = q.grids[size_t(s)][size_t(c)];
            for (Eigen::Index i = 0; i < g.rows(); ++i) {
                for (Eigen::Index j = 0; j < g.cols(); ++j) {
                    double r = round_half_even(g(i, j));
                    if (std::abs(r) > double(kPlaneSymbolCap))
                        throw RangeError("plane value exceeds symbol range; training diverged?");
                    o(i, j) = int(r);
                }
            }
        }
    }
    return q;
}

std::array<SubPlane, 5> split_high_res(const QuantizedPlanes& q) {
    int b = q.base_resolution;
    int hi = q.side(1);
    if (hi % 2 != 0) throw ValidationError("high-resolution plane side must be even");

    std::array<SubPlane, 5> subs;
    subs[0].channels = q.grids[0];
    for (int a = 0; a < 2; ++a) {
        for (int c2 = 0; c2 < 2; ++c2) {
            SubPlane& sp = subs[size_t(1 + a * 2 + c2)];
            sp.channels.assign(kPlaneChannels, Eigen::MatrixXi(b, b));
            for (int ch = 0; ch < kPlaneChannels; ++ch) {
                const Eigen::MatrixXi& g = q.grids[1][size_t(ch)];
                Eigen::MatrixXi& o = sp.channels[size_t(ch)];
                for (int i = 0; i < b; ++i)
                    for (int j = 0; j < b; ++j) o(i, j) = g(2 * i + a, 2 * j + c2);
            }
        }
    }
    return subs;
}

QuantizedPlanes reassemble(const std::array<SubPlane, 5>& subs) {
    int b = subs[0].side();
    for (const SubPlane& sp : subs) {
        if (int(sp.channels.size()) != kPlaneChannels) throw ValidationError("sub-plane channel count");
        if (sp.side() != b) throw ValidationError("sub-plane shape mismatch");
        for (const auto& ch : sp.channels)
            if (ch.rows() != b || ch.cols() != b) throw ValidationError("sub-plane shape mismatch");
    }
    QuantizedPlanes q;
    q.base_resolution = b;
    q.grids[0] = subs[0].channels;
    q.grids[1].assign(kPlaneChannels, Eigen::MatrixXi(2 * b, 2 * b));
    for (int a = 0; a < 2; ++a)
        for (int c2 = 0; c2 < 2; ++c2)
            for (int ch = 0; ch < kPlaneChannels; ++ch) {
                const Eigen::MatrixXi& src = subs[size_t(1 + a * 2 + c2)].channels[size_t(ch)];
                Eigen::MatrixXi& dst = q.grids[1][size_t(ch)];
                for (int i = 0; i < b; ++i)
                    for (int j = 0; j < b; ++j) dst(2 * i + a, 2 * j + c2) = src(i, j);
            }
    return q;
}

}  // namespace c3p
