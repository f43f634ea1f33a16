#include "c3p/scene.hpp"

#include <cmath>
#include <utility>

#include "c3p/rng.hpp"
#include "c3p/serial.hpp"

namespace c3p {

namespace {

constexpr char kMagic[4] = {'A', 'N', 'C', 'H'};
constexpr uint16_t kVersion = 1;

bool all_finite(const Eigen::Ref<const Eigen::VectorXd>& v) {
    return v.allFinite();
}

}  // namespace

Eigen::Matrix<double, kAttrDim, 1> Anchor::attributes() const {
    Eigen::Matrix<double, kAttrDim, 1> a;
    a.segment<kFeatureDim>(0) = feature;
    a.segment<kOffsetDim>(kFeatureDim) = offsets;
    a.segment<kScalingDim>(kFeatureDim + kOffsetDim) = scaling;
    return a;
}

void Anchor::set_attributes(const Eigen::Matrix<double, kAttrDim, 1>& a) {
    feature = a.segment<kFeatureDim>(0);
    offsets = a.segment<kOffsetDim>(kFeatureDim);
    scaling = a.segment<kScalingDim>(kFeatureDim + kOffsetDim);
}

void AnchorSet::validate() const {
    if (anchors.size() < 4) throw ValidationError("anchor set needs at least 4 anchors");
    for (size_t i = 0; i < anchors.size(); ++i) {
        const Anchor& a = anchors[i];
        if (!a.position.allFinite() || !all_finite(a.feature) || !all_finite(a.offsets) ||
            !all_finite(a.scaling)) {
            throw ValidationError("non-finite value in anchor " + std::to_string(i));
        }
    }
    if (!mask.empty() && mask.size() != anchors.size() * kOffsetCount) {
        throw ValidationError("mask must have exactly N*K entries");
    }
}

void SyntheticSpec::validate() const {
    if (anchor_count < 4) throw ValidationError("synthetic spec needs at least 4 anchors");
    if (cluster_count == 0) throw ValidationError("cluster count must be positive");
    if (!(anisotropy[0] > 0 && anisotropy[1] > 0 && anisotropy[2] > 0))
        throw ValidationError("anisotropy ratios must be strictly positive");
    if (!(anisotropy[0] >= anisotropy[1] && anisotropy[1] >= anisotropy[2]))
        throw ValidationError("anisotropy ratios must be descending");
    if (!(cluster_spread >= 0) || !(falloff_radius >= 0))
        throw ValidationError("spread and falloff radius must be non-negative");
}

std::vector<uint8_t> serialize_anchor_set(const AnchorSet& set) {
    set.validate();
    ByteWriter w;
    w.bytes(reinterpret_cast<const uint8_t*>(kMagic), 4);
    w.u16(kVersion);
    w.u32(uint32_t(set.anchors.size()));
    w.u32(kOffsetCount);
    w.u8(set.has_mask() ? 1 : 0);
    for (const Anchor& a : set.anchors) {
        for (int i = 0; i < 3; ++i) w.f32(float(a.position[i]));
        for (int i = 0; i < kFeatureDim; ++i) w.f32(float(a.feature[i]));
        for (int i = 0; i < kOffsetDim; ++i) w.f32(float(a.offsets[i]));
        for (int i = 0; i < kScalingDim; ++i) w.f32(float(a.scaling[i]));
        w.u32(a.visibility);
    }
    if (set.has_mask()) {
        size_t bits = set.mask.size();
        std::vector<uint8_t> packed((bits + 7) / 8, 0);
        for (size_t i = 0; i < bits; ++i)
            if (set.mask[i]) packed[i / 8] |= uint8_t(1u << (i % 8));
        w.bytes(packed);
    }
    return w.take();
}

AnchorSet parse_anchor_set(const std::vector<uint8_t>& bytes) {
    ByteReader r(bytes);
    std::vector<uint8_t> magic;
    try {
        magic = r.bytes(4);
    } catch (const CorruptionError&) {
        throw FormatError("file too short for ANCH magic");
    }
    if (std::memcmp(magic.data(), kMagic, 4) != 0) throw FormatError("bad ANCH magic");
    uint16_t version = r.u16();
    if (version != kVersion) throw FormatError("unsupported ANCH version " + std::to_string(version));
    uint32_t n = r.u32();
    uint32_t k = r.u32();
    if (k != kOffsetCount) throw FormatError("unsupported offset count K=" + std::to_string(k));
    uint8_t flags = r.u8();

    AnchorSet set;
    set.anchors.resize(n);
    for (uint32_t i = 0; i < n; ++i) {
        Anchor& a = set.anchors[i];
        for (int c = 0; c < 3; ++c) a.position[c] = r.f32();
        for (int c = 0; c < kFeatureDim; ++c) a.feature[c] = r.f32();
        for (int c = 0; c < kOffsetDim; ++c) a.offsets[c] = r.f32();
        for (int c = 0; c < kScalingDim; ++c) a.scaling[c] = r.f32();
        a.visibility = r.u32();
    }
    if (flags & 1) {
        size_t bits = size_t(n) * kOffsetCount;
        std::vector<uint8_t> packed = r.bytes((bits + 7) / 8);
        set.mask.resize(bits);
        for (size_t i = 0; i < bits; ++i) set.mask[i] = (packed[i / 8] >> (i % 8)) & 1;
    }
    if (r.remaining() != 0) throw CorruptionError("trailing bytes after ANCH payload");
    set.validate();
    return set;
}

AnchorSet load_anchor_set(const std::string& path) {
    return parse_anchor_set(read_file(path));
}

void save_anchor_set(const AnchorSet& set, const std::string& path) {
    write_file(path, serialize_anchor_set(set));
}

AnchorSet gen_synthetic_scene(const SyntheticSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    // Cluster centers and anchor positions are standard-normal draws scaled
    // per axis, so the position covariance eigenvalues follow the squared
    // anisotropy ratios regardless of cluster shape.
    std::vector<Eigen::Vector3d> centers(spec.cluster_count);
    for (auto& c : centers)
        c = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal());

    // Values are snapped through fp32 so that saving to the fp32 ANCH format
    // and loading back reproduces the set bit-for-bit.
    auto f32 = [](double x) { return double(float(x)); };

    AnchorSet set;
    set.anchors.resize(spec.anchor_count);
    for (Anchor& a : set.anchors) {
        const Eigen::Vector3d& c = centers[rng.below(spec.cluster_count)];
        Eigen::Vector3d g(rng.normal(), rng.normal(), rng.normal());
        for (int d = 0; d < 3; ++d)
            a.position[d] = f32(spec.anisotropy[d] * (c[d] + spec.cluster_spread * g[d]));
    }

    // Attributes are smooth low-frequency functions of position plus a small
    // noise floor, giving the spatial correlation a hyperprior can exploit.
    struct Wave {
        Eigen::Vector3d k;
        double phase;
        double amp;
    };
    auto draw_waves = [&](int count) {
        std::vector<Wave> waves(count);
        for (Wave& wv : waves) {
            double inv = 1.0 / spec.anisotropy[0];
            wv.k = Eigen::Vector3d(rng.normal(0.0, inv), rng.normal(0.0, inv), rng.normal(0.0, inv));
            wv.phase = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            wv.amp = rng.uniform(0.5, 1.5);
        }
        return waves;
    };
    std::vector<Wave> feature_waves = draw_waves(kFeatureDim);
    std::vector<Wave> offset_waves = draw_waves(kOffsetDim);
    std::vector<Wave> scaling_waves = draw_waves(kScalingDim);
    const double noise = 0.05;

    for (Anchor& a : set.anchors) {
        for (int c = 0; c < kFeatureDim; ++c) {
            const Wave& wv = feature_waves[c];
            a.feature[c] = f32(wv.amp * std::sin(wv.k.dot(a.position) + wv.phase) + noise * rng.normal());
        }
        for (int c = 0; c < kOffsetDim; ++c) {
            const Wave& wv = offset_waves[c];
            a.offsets[c] = f32(wv.amp * std::sin(wv.k.dot(a.position) + wv.phase) + noise * rng.normal());
        }
        for (int c = 0; c < kScalingDim; ++c) {
            const Wave& wv = scaling_waves[c];
            a.scaling[c] = f32(wv.amp * std::sin(wv.k.dot(a.position) + wv.phase) + noise * rng.normal());
        }
    }

    // Visibility: radial falloff from the scene origin, strictly positive
    // inside the radius, zero at and beyond it.
    constexpr double kMaxViews = 64.0;
    for (Anchor& a : set.anchors) {
        double d = a.position.norm();
        if (d < spec.falloff_radius) {
            double t = 1.0 - d / spec.falloff_radius;
            a.visibility = uint32_t(std::max(1.0, std::round(kMaxViews * t)));
        } else {
            a.visibility = 0;
        }
    }
    return set;
}

std::pair<AnchorSet, NormStats> normalize_attributes(const AnchorSet& set) {
    if (set.anchors.empty()) throw ValidationError("cannot normalize an empty set");
    const size_t n = set.anchors.size();

    Eigen::Matrix<double, kAttrDim, 1> mean = Eigen::Matrix<double, kAttrDim, 1>::Zero();
    for (const Anchor& a : set.anchors) mean += a.attributes();
    mean /= double(n);

    Eigen::Matrix<double, kAttrDim, 1> var = Eigen::Matrix<double, kAttrDim, 1>::Zero();
    for (const Anchor& a : set.anchors) {
        Eigen::Matrix<double, kAttrDim, 1> d = a.attributes() - mean;
        var += d.cwiseProduct(d);
    }
    var /= double(n);

    NormStats stats;
    for (int c = 0; c < kAttrDim; ++c) {
        double s = std::sqrt(var[c]);
        if (!(s > 1e-12)) s = 1.0;  // zero-variance channel: scale clamps to 1
        // Snap to the fp32 precision the header transmits.
        stats.shift[c] = double(float(mean[c]));
        stats.scale[c] = double(float(s));
    }

    AnchorSet out = set;
    for (Anchor& a : out.anchors) {
        Eigen::Matrix<double, kAttrDim, 1> v = a.attributes();
        v = (v - stats.shift).cwiseQuotient(stats.scale);
        a.set_attributes(v);
    }
    return {std::move(out), stats};
}

AnchorSet denormalize_attributes(const AnchorSet& set, const NormStats& stats) {
    AnchorSet out = set;
    for (Anchor& a : out.anchors) {
        Eigen::Matrix<double, kAttrDim, 1> v = a.attributes();
        v = v.cwiseProduct(stats.scale) + stats.shift;
        a.set_attributes(v);
    }
    return out;
}

}  // namespace c3p
