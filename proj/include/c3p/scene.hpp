#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "c3p/error.hpp"

namespace c3p {

// Attribute layout shared across the codebase: a 50-d latent feature,
// K=10 offset vectors (stored flat, xyz-major), and a 6-d scaling factor,
// 86 scalars per anchor in total.
constexpr int kFeatureDim = 50;
constexpr int kOffsetCount = 10;
constexpr int kOffsetDim = 3 * kOffsetCount;
constexpr int kScalingDim = 6;
constexpr int kAttrDim = kFeatureDim + kOffsetDim + kScalingDim;

// Latent feature coding is chunked: 5 chunks of 10 channels.
constexpr int kFeatureChunks = 5;
constexpr int kFeatureChunkDim = kFeatureDim / kFeatureChunks;

struct Anchor {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Matrix<double, kFeatureDim, 1> feature = Eigen::Matrix<double, kFeatureDim, 1>::Zero();
    Eigen::Matrix<double, kOffsetDim, 1> offsets = Eigen::Matrix<double, kOffsetDim, 1>::Zero();
    Eigen::Matrix<double, kScalingDim, 1> scaling = Eigen::Matrix<double, kScalingDim, 1>::Zero();
    uint32_t visibility = 0;

    // One flat 86-d view in the canonical order feature | offsets | scaling.
    Eigen::Matrix<double, kAttrDim, 1> attributes() const;
    void set_attributes(const Eigen::Matrix<double, kAttrDim, 1>& a);
};

struct AnchorSet {
    std::vector<Anchor> anchors;
    // Optional per-anchor-per-offset binary flags, row-major N x K.
    std::vector<uint8_t> mask;

    size_t size() const { return anchors.size(); }
    bool has_mask() const { return !mask.empty(); }
    void validate() const;  // throws ValidationError on invariant breaks
};

// Per-channel shift/scale over the 86 attribute channels. Values are snapped
// to fp32 because they travel in the bitstream header and both codec sides
// must agree exactly.
struct NormStats {
    Eigen::Matrix<double, kAttrDim, 1> shift = Eigen::Matrix<double, kAttrDim, 1>::Zero();
    Eigen::Matrix<double, kAttrDim, 1> scale = Eigen::Matrix<double, kAttrDim, 1>::Ones();
};

struct SyntheticSpec {
    uint32_t anchor_count = 1000;
    uint32_t cluster_count = 5;
    double cluster_spread = 0.35;
    // Axis standard-deviation ratios; must be strictly positive, descending.
    std::array<double, 3> anisotropy = {10.0, 5.0, 1.0};
    // Anchors within this distance of the scene origin get a positive
    // visibility count; anchors outside get zero.
    double falloff_radius = 100.0;
    uint64_t seed = 1;

    void validate() const;
};

// ANCH binary file ingestion/emission (little-endian; see FORMAT.md).
AnchorSet load_anchor_set(const std::string& path);
void save_anchor_set(const AnchorSet& set, const std::string& path);

// In-memory equivalents, used by the file functions and by tests.
std::vector<uint8_t> serialize_anchor_set(const AnchorSet& set);
AnchorSet parse_anchor_set(const std::vector<uint8_t>& bytes);

AnchorSet gen_synthetic_scene(const SyntheticSpec& spec);

// Shifts each attribute channel to zero mean and scales it to unit standard
// deviation. Zero-variance channels keep scale 1. Returns the normalized set
// together with the stats needed to invert the map.
std::pair<AnchorSet, NormStats> normalize_attributes(const AnchorSet& set);
AnchorSet denormalize_attributes(const AnchorSet& set, const NormStats& stats);

}  // namespace c3p
