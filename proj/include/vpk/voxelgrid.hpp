#pragma once

#include <utility>
#include <vector>

#include "vpk/geom.hpp"
#include "vpk/skeleton.hpp"

namespace vpk {

// Discretized volume around the subject. The x-y grid spans the 2D bounding
// box; the z grid spans a metric window of +/- z_half_range centred on the
// root joint depth. Voxel (a,b,c) occupies the half-open cube
// [a,a+1)x[b,b+1)x[c,c+1) in voxel coordinates; voxel centres sit at
// half-integers. Axis convention: i follows image u, j follows image v,
// k grows away from the camera.
struct VoxelGrid {
  int w = 0;
  int h = 0;
  int d = 0;
  BBox bbox;                    // px
  double z_half_range = 1000.0; // mm
  double z_center = 0.0;        // mm, metric depth of the root joint

  void validate() const;  // throws ConfigError
};

// Continuous voxel-space coordinate. May lie outside [0,w)x[0,h)x[0,d);
// out-of-range is representable, callers decide about clipping.
struct VoxelCoord {
  double i = 0.0;
  double j = 0.0;
  double k = 0.0;
};

VoxelCoord metric_to_voxel(const VoxelGrid& grid, Vec2 joint_px,
                           double joint_z_mm);

// Exact inverse of metric_to_voxel: (pixel position, absolute depth mm).
std::pair<Vec2, double> voxel_to_metric(const VoxelGrid& grid,
                                        const VoxelCoord& vc);

// Decoded voxel coordinate to metric camera-frame position by inverse
// pinhole. Throws NonPositiveDepth when the recovered depth is <= 0.
Vec3 lift_to_3d(const VoxelGrid& grid, const VoxelCoord& vc, double focal,
                Vec2 principal_point);

// Clamps a voxel coordinate into the grid (onto the boundary voxel's
// centre line). Sets *clipped when clamping happened.
VoxelCoord clip_to_grid(const VoxelGrid& grid, VoxelCoord vc,
                        bool* clipped = nullptr);

struct RootDepthSearch {
  double z_min = 500.0;     // mm
  double z_max = 10000.0;   // mm
  double resolution = 1.0;  // mm
};

// Recovers the root depth that makes the reconstructed total limb length
// match the skeleton's reference total. The objective is minimized by
// golden-section search over [z_min, z_max] down to `resolution`.
// Throws DegenerateInput when all joints project to one point.
double estimate_root_depth(const Pose2D& pose_px,
                           const std::vector<double>& decoded_rel_z_mm,
                           const Skeleton& skeleton, double focal,
                           Vec2 principal_point,
                           const RootDepthSearch& search = {});

// Objective used by estimate_root_depth; exposed so tests can scan it.
double root_depth_objective(const Pose2D& pose_px,
                            const std::vector<double>& decoded_rel_z_mm,
                            const Skeleton& skeleton, double focal,
                            Vec2 principal_point, double z_center);

}  // namespace vpk
