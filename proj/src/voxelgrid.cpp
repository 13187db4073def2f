#include "vpk/voxelgrid.hpp"

#include <algorithm>
#include <cmath>

#include "vpk/error.hpp"

namespace vpk {

void VoxelGrid::validate() const {
  if (w < 1 || h < 1 || d < 1) throw ConfigError("grid axes must be >= 1");
  if (!(bbox.w > 0.0) || !(bbox.h > 0.0))
    throw ConfigError("grid bounding box must have positive size");
  if (!(z_half_range > 0.0))
    throw ConfigError("grid z_half_range must be positive");
}

VoxelCoord metric_to_voxel(const VoxelGrid& grid, Vec2 joint_px,
                           double joint_z_mm) {
  grid.validate();
  VoxelCoord vc;
  vc.i = (joint_px.x - grid.bbox.x) / grid.bbox.w * grid.w;
  vc.j = (joint_px.y - grid.bbox.y) / grid.bbox.h * grid.h;
  vc.k = (joint_z_mm - (grid.z_center - grid.z_half_range)) /
         (2.0 * grid.z_half_range) * grid.d;
  return vc;
}

std::pair<Vec2, double> voxel_to_metric(const VoxelGrid& grid,
                                        const VoxelCoord& vc) {
  grid.validate();
  Vec2 px{grid.bbox.x + vc.i / grid.w * grid.bbox.w,
          grid.bbox.y + vc.j / grid.h * grid.bbox.h};
  double z = (grid.z_center - grid.z_half_range) +
             vc.k / grid.d * (2.0 * grid.z_half_range);
  return {px, z};
}

Vec3 lift_to_3d(const VoxelGrid& grid, const VoxelCoord& vc, double focal,
                Vec2 principal_point) {
  auto [px, z] = voxel_to_metric(grid, vc);
  if (!(z > 0.0))
    throw NonPositiveDepth("recovered absolute depth must be positive");
  return {(px.x - principal_point.x) * z / focal,
          (px.y - principal_point.y) * z / focal, z};
}

VoxelCoord clip_to_grid(const VoxelGrid& grid, VoxelCoord vc, bool* clipped) {
  bool any = false;
  auto clamp1 = [&any](double v, double n) {
    // keep strictly inside so the boundary voxel (n-1) owns the value
    double lo = 0.0, hi = std::nextafter(n, 0.0);
    if (v < lo) {
      any = true;
      return lo;
    }
    if (v > hi) {
      any = true;
      return hi;
    }
    return v;
  };
  vc.i = clamp1(vc.i, grid.w);
  vc.j = clamp1(vc.j, grid.h);
  vc.k = clamp1(vc.k, grid.d);
  if (clipped) *clipped = any;
  return vc;
}

double root_depth_objective(const Pose2D& pose_px,
                            const std::vector<double>& decoded_rel_z_mm,
                            const Skeleton& skeleton, double focal,
                            Vec2 principal_point, double z_center) {
  const int n = skeleton.n_joints;
  std::vector<Vec3> rec(n);
  for (int j = 0; j < n; ++j) {
    double z = z_center + decoded_rel_z_mm[j];
    rec[j] = {(pose_px.coords[j].x - principal_point.x) * z / focal,
              (pose_px.coords[j].y - principal_point.y) * z / focal, z};
  }
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == skeleton.root_index) continue;
    total += norm(rec[j] - rec[skeleton.parent[j]]);
  }
  double diff = total - skeleton.total_limb_length();
  return diff * diff;
}

double estimate_root_depth(const Pose2D& pose_px,
                           const std::vector<double>& decoded_rel_z_mm,
                           const Skeleton& skeleton, double focal,
                           Vec2 principal_point, const RootDepthSearch& search) {
  skeleton.validate();
  if (skeleton.n_joints < 2)
    throw DegenerateInput("root depth recovery needs at least one limb");
  if (static_cast<int>(pose_px.coords.size()) != skeleton.n_joints ||
      static_cast<int>(decoded_rel_z_mm.size()) != skeleton.n_joints)
    throw ShapeMismatch("pose / relative depth sizes do not match skeleton");

  double spread = 0.0;
  for (const Vec2& p : pose_px.coords)
    spread = std::max(spread, norm(p - pose_px.coords[0]));
  if (spread < 1e-9)
    throw DegenerateInput("all joints project to a single image point");

  auto objective = [&](double z) {
    return root_depth_objective(pose_px, decoded_rel_z_mm, skeleton, focal,
                                principal_point, z);
  };

  // Golden-section search; the objective is unimodal on synthetic data
  // (verified against a brute-force scan in the tests).
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = search.z_min, b = search.z_max;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = objective(c), fd = objective(d);
  while (b - a > search.resolution) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = objective(d);
    }
  }
  return std::max(search.z_min, 0.5 * (a + b));
}

}  // namespace vpk
