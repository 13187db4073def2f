#include "vpk/skeleton.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "vpk/error.hpp"
#include "vpk/rng.hpp"

namespace vpk {
namespace {

using json = nlohmann::json;

constexpr double kDeg = M_PI / 180.0;

// Anatomical sampling ranges for the toy skeleton: rest direction of each
// limb and the half-angle of the uniform cone around it. A zero rest vector
// means "follow the parent limb's direction" (distal segments bend relative
// to their proximal segment).
struct LimbRange {
  Vec3 rest;
  double half_angle;
};

const LimbRange kToyRanges[12] = {
    {{0, 0, 0}, 0},               // pelvis (root, unused)
    {{0, -1, 0}, 20 * kDeg},      // spine
    {{0, -1, 0}, 15 * kDeg},      // neck
    {{0, -1, 0}, 15 * kDeg},      // head
    {{-1, 0.25, 0}, 55 * kDeg},   // left upper arm
    {{0, 0, 0}, 50 * kDeg},       // left lower arm
    {{1, 0.25, 0}, 55 * kDeg},    // right upper arm
    {{0, 0, 0}, 50 * kDeg},       // right lower arm
    {{-0.25, 1, 0}, 35 * kDeg},   // left upper leg
    {{0, 0, 0}, 40 * kDeg},       // left lower leg
    {{0.25, 1, 0}, 35 * kDeg},    // right upper leg
    {{0, 0, 0}, 40 * kDeg},       // right lower leg
};

constexpr double kBodyYawRange = 40 * kDeg;
constexpr double kRootJitterXY = 150.0;  // mm
constexpr double kRootJitterZ = 250.0;   // mm

bool is_toy_layout(const Skeleton& s) {
  static const Skeleton toy = make_toy_skeleton();
  return s.n_joints == toy.n_joints && s.parent == toy.parent;
}

Vec3 sample_cone(Vec3 axis, double half_angle, double u_cos, double u_phi) {
  Vec3 a = normalized(axis);
  double c = 1.0 - u_cos * (1.0 - std::cos(half_angle));
  double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  double phi = 2.0 * M_PI * u_phi;
  Vec3 e = std::fabs(a.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 u = normalized(cross(a, e));
  Vec3 v = cross(a, u);
  return c * a + (s * std::cos(phi)) * u + (s * std::sin(phi)) * v;
}

Vec3 rotate_yaw(Vec3 p, double yaw) {
  double cy = std::cos(yaw), sy = std::sin(yaw);
  return {cy * p.x + sy * p.z, p.y, -sy * p.x + cy * p.z};
}

std::vector<int> topo_order(const Skeleton& s) {
  std::vector<int> order;
  order.reserve(s.n_joints);
  std::vector<char> placed(s.n_joints, 0);
  order.push_back(s.root_index);
  placed[s.root_index] = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    for (int j = 0; j < s.n_joints; ++j) {
      if (!placed[j] && s.parent[j] == order[i]) {
        order.push_back(j);
        placed[j] = 1;
      }
    }
  }
  return order;
}

}  // namespace

void Skeleton::validate() const {
  if (n_joints <= 0) throw ConfigError("skeleton has no joints");
  if (static_cast<int>(parent.size()) != n_joints ||
      static_cast<int>(limb_length.size()) != n_joints)
    throw ConfigError("skeleton field sizes do not match n_joints");
  if (root_index < 0 || root_index >= n_joints)
    throw ConfigError("root_index out of range");
  if (parent[root_index] != kNoParent)
    throw ConfigError("root joint must have the no-parent sentinel");
  for (int j = 0; j < n_joints; ++j) {
    if (j == root_index) continue;
    if (parent[j] < 0 || parent[j] >= n_joints)
      throw ConfigError("parent index out of range");
    if (!(limb_length[j] > 0.0))
      throw ConfigError("non-root joint with non-positive limb length");
    int cur = j;
    int steps = 0;
    while (cur != root_index) {
      cur = parent[cur];
      if (cur < 0 || ++steps > n_joints)
        throw ConfigError("parent relation does not reach the root");
    }
  }
  std::vector<int> map = flip_map();
  for (int j = 0; j < n_joints; ++j) {
    if (map[map[j]] != j)
      throw ConfigError("left_right_pairs is not an involution");
  }
  for (const BodyPart& p : parts) {
    if (p.proximal < 0 || p.proximal >= n_joints || p.distal < 0 ||
        p.distal >= n_joints)
      throw ConfigError("part joint index out of range");
  }
}

std::vector<int> Skeleton::flip_map() const {
  std::vector<int> map(n_joints);
  for (int j = 0; j < n_joints; ++j) map[j] = j;
  for (auto [a, b] : left_right_pairs) {
    if (a < 0 || a >= n_joints || b < 0 || b >= n_joints)
      throw ConfigError("left_right pair index out of range");
    map[a] = b;
    map[b] = a;
  }
  return map;
}

double Skeleton::total_limb_length() const {
  double total = 0.0;
  for (int j = 0; j < n_joints; ++j) {
    if (j != root_index) total += limb_length[j];
  }
  return total;
}

Skeleton make_toy_skeleton() {
  Skeleton s;
  s.n_joints = 12;
  s.root_index = kPelvis;
  s.parent = {kNoParent, kPelvis, kSpine, kNeck,  kNeck,   kLeftElbow,
              kNeck,     kRightElbow, kPelvis, kLeftKnee, kPelvis, kRightKnee};
  // Sums to 1700 mm across the 11 limbs.
  s.limb_length = {0,   220, 150, 130, 150, 130,
                   150, 130, 170, 150, 170, 150};
  s.parts = {
      {"upper_arm", kNeck, kLeftElbow},
      {"upper_arm", kNeck, kRightElbow},
      {"lower_arm", kLeftElbow, kLeftWrist},
      {"lower_arm", kRightElbow, kRightWrist},
      {"upper_leg", kPelvis, kLeftKnee},
      {"upper_leg", kPelvis, kRightKnee},
      {"lower_leg", kLeftKnee, kLeftAnkle},
      {"lower_leg", kRightKnee, kRightAnkle},
  };
  s.left_right_pairs = {{kLeftElbow, kRightElbow},
                        {kLeftWrist, kRightWrist},
                        {kLeftKnee, kRightKnee},
                        {kLeftAnkle, kRightAnkle}};
  return s;
}

Pose3D sample_pose(const Skeleton& skeleton, uint64_t seed,
                   double root_distance_mm) {
  skeleton.validate();
  Rng rng(derive_seed(seed, 0x706f7365ULL));  // "pose"

  double yaw = rng.uniform(-kBodyYawRange, kBodyYawRange);
  Vec3 root{rng.uniform(-kRootJitterXY, kRootJitterXY),
            rng.uniform(-kRootJitterXY, kRootJitterXY),
            root_distance_mm + rng.uniform(-kRootJitterZ, kRootJitterZ)};

  // Draw all angle pairs in joint-index order so the stream layout does not
  // depend on tree traversal.
  std::vector<double> u_cos(skeleton.n_joints, 0.0);
  std::vector<double> u_phi(skeleton.n_joints, 0.0);
  for (int j = 0; j < skeleton.n_joints; ++j) {
    if (j == skeleton.root_index) continue;
    u_cos[j] = rng.uniform();
    u_phi[j] = rng.uniform();
  }

  const bool toy = is_toy_layout(skeleton);
  std::vector<Vec3> dir(skeleton.n_joints, Vec3{0, 0, 0});
  Pose3D pose;
  pose.coords.assign(skeleton.n_joints, Vec3{});
  pose.coords[skeleton.root_index] = root;

  for (int j : topo_order(skeleton)) {
    if (j == skeleton.root_index) continue;
    Vec3 rest{0, -1, 0};
    double half_angle = 60 * kDeg;
    if (toy) {
      rest = kToyRanges[j].rest;
      half_angle = kToyRanges[j].half_angle;
    }
    Vec3 axis = norm(rest) > 0.0 ? rest : dir[skeleton.parent[j]];
    if (norm(axis) == 0.0) axis = {0, -1, 0};
    dir[j] = sample_cone(axis, half_angle, u_cos[j], u_phi[j]);
    Vec3 step = rotate_yaw(dir[j], yaw);
    pose.coords[j] =
        pose.coords[skeleton.parent[j]] + skeleton.limb_length[j] * step;
  }
  return pose;
}

Pose2D project_pose(const Pose3D& pose, double focal, Vec2 principal_point) {
  Pose2D out;
  out.coords.reserve(pose.coords.size());
  double lo_u = 0, hi_u = 0, lo_v = 0, hi_v = 0;
  bool first = true;
  for (const Vec3& p : pose.coords) {
    if (!(p.z > 0.0))
      throw NonPositiveDepth("joint depth must be positive for projection");
    double u = focal * p.x / p.z + principal_point.x;
    double v = focal * p.y / p.z + principal_point.y;
    out.coords.push_back({u, v});
    if (first) {
      lo_u = hi_u = u;
      lo_v = hi_v = v;
      first = false;
    } else {
      lo_u = std::min(lo_u, u);
      hi_u = std::max(hi_u, u);
      lo_v = std::min(lo_v, v);
      hi_v = std::max(hi_v, v);
    }
  }
  if (pose.coords.empty()) throw DegenerateInput("cannot project empty pose");
  // Tight box floored at one pixel, then 15% margin per side.
  double w = std::max(hi_u - lo_u, 1.0);
  double h = std::max(hi_v - lo_v, 1.0);
  out.bbox = {lo_u - 0.15 * w, lo_v - 0.15 * h, 1.3 * w, 1.3 * h};
  return out;
}

Pose3D flip_pose(const Pose3D& pose, const Skeleton& skeleton) {
  if (pose.n() != skeleton.n_joints)
    throw ShapeMismatch("pose joint count does not match skeleton");
  std::vector<int> map = skeleton.flip_map();
  double xr = pose.coords[skeleton.root_index].x;
  Pose3D out;
  out.coords.assign(pose.n(), Vec3{});
  for (int j = 0; j < pose.n(); ++j) {
    const Vec3& p = pose.coords[j];
    out.coords[map[j]] = {2.0 * xr - p.x, p.y, p.z};
  }
  return out;
}

std::string skeleton_to_json(const Skeleton& s) {
  json j;
  j["n_joints"] = s.n_joints;
  j["parent"] = s.parent;
  j["limb_length_mm"] = s.limb_length;
  j["root_index"] = s.root_index;
  json parts = json::array();
  for (const BodyPart& p : s.parts)
    parts.push_back({{"group", p.group}, {"proximal", p.proximal}, {"distal", p.distal}});
  j["parts"] = parts;
  json pairs = json::array();
  for (auto [a, b] : s.left_right_pairs) pairs.push_back({a, b});
  j["left_right_pairs"] = pairs;
  return j.dump(2) + "\n";
}

Skeleton skeleton_from_json(const std::string& text) {
  json j = json::parse(text);
  Skeleton s;
  s.n_joints = j.at("n_joints").get<int>();
  s.parent = j.at("parent").get<std::vector<int>>();
  s.limb_length = j.at("limb_length_mm").get<std::vector<double>>();
  s.root_index = j.at("root_index").get<int>();
  for (const json& p : j.at("parts"))
    s.parts.push_back({p.at("group").get<std::string>(),
                       p.at("proximal").get<int>(), p.at("distal").get<int>()});
  for (const json& p : j.at("left_right_pairs"))
    s.left_right_pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  s.validate();
  return s;
}

}  // namespace vpk
