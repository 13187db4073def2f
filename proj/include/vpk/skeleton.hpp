#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vpk/geom.hpp"

namespace vpk {

inline constexpr int kNoParent = -1;

// Body part (proximal joint, distal joint) used by the PCP metric. Parts
// sharing a group name are scored together (e.g. both lower arms).
struct BodyPart {
  std::string group;
  int proximal = 0;
  int distal = 0;
};

struct Skeleton {
  int n_joints = 0;
  std::vector<int> parent;          // kNoParent at the root
  std::vector<double> limb_length;  // mm; 0 at the root
  int root_index = 0;
  std::vector<BodyPart> parts;
  std::vector<std::pair<int, int>> left_right_pairs;

  // Throws ConfigError when the tree is malformed (cycles, unreachable
  // joints, non-positive limb lengths, non-involutive flip map).
  void validate() const;

  // Full permutation derived from left_right_pairs (identity elsewhere).
  std::vector<int> flip_map() const;

  double total_limb_length() const;
};

// Metric joint positions in the camera frame, millimetres.
struct Pose3D {
  std::vector<Vec3> coords;
  int n() const { return static_cast<int>(coords.size()); }
};

// Image-plane joint positions (pixels) plus the subject bounding box.
struct Pose2D {
  std::vector<Vec2> coords;
  BBox bbox;
};

enum ToyJoint {
  kPelvis = 0,
  kSpine,
  kNeck,
  kHead,
  kLeftElbow,
  kLeftWrist,
  kRightElbow,
  kRightWrist,
  kLeftKnee,
  kLeftAnkle,
  kRightKnee,
  kRightAnkle,
};

// The PCP reference joint ("chest") of the toy skeleton.
inline constexpr int kToyChestJoint = kNeck;

// Fixed 12-joint skeleton: pelvis root, spine/neck/head column, two
// 2-segment arms hanging off the neck, two 2-segment legs off the pelvis.
// Limb lengths sum to 1700 mm.
Skeleton make_toy_skeleton();

// Forward-kinematics pose with per-limb directions drawn uniformly inside
// fixed cones around anatomical rest directions, a whole-body yaw, and a
// jittered root placed around `root_distance_mm` in front of the camera.
// Deterministic in `seed`. Output limb lengths equal the skeleton's exactly.
Pose3D sample_pose(const Skeleton& skeleton, uint64_t seed,
                   double root_distance_mm = 3000.0);

// Pinhole projection u = f*x/z + cx, v = f*y/z + cy. The bounding box is the
// tight box around the projected joints (floored at 1 px per axis) expanded
// by 15% per side. Throws NonPositiveDepth when any joint has z <= 0.
Pose2D project_pose(const Pose3D& pose, double focal, Vec2 principal_point);

// Mirror about the vertical plane through the root (x -> 2*x_root - x) and
// relabel joints with the skeleton's left/right map.
Pose3D flip_pose(const Pose3D& pose, const Skeleton& skeleton);

std::string skeleton_to_json(const Skeleton& skeleton);
Skeleton skeleton_from_json(const std::string& text);

}  // namespace vpk
