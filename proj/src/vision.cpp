/* Copyright 2026 The cvisac authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "cvisac/vision.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cvisac {

Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}

double vnorm(const Vec3& a) {
    return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
}

Vec3 Mat3::operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Mat3 Mat3::operator*(const Mat3& rhs) const {
    Mat3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += m[i][k] * rhs.m[k][j];
            out.m[i][j] = s;
        }
    return out;
}

Mat3 Mat3::transposed() const {
    Mat3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.m[i][j] = m[j][i];
    return out;
}

Mat3 Mat3::identity() {
    Mat3 out;
    out.m[0][0] = out.m[1][1] = out.m[2][2] = 1.0;
    return out;
}

Mat3 rotation_matrix(double roll, double pitch, double yaw) {
    const double cr = std::cos(roll), sr = std::sin(roll);
    const double cp = std::cos(pitch), sp = std::sin(pitch);
    const double cy = std::cos(yaw), sy = std::sin(yaw);
    Mat3 rx, ry, rz;
    rx.m = {{{1, 0, 0}, {0, cr, sr}, {0, -sr, cr}}};
    ry.m = {{{cp, 0, -sp}, {0, 1, 0}, {sp, 0, cp}}};
    rz.m = {{{cy, sy, 0}, {-sy, cy, 0}, {0, 0, 1}}};
    return rx * ry * rz;
}

Vec3 camera_coords(const Vec3& world_point, const CameraPose& pose) {
    const Mat3 r = rotation_matrix(pose.roll, pose.pitch, pose.yaw);
    return r * (world_point - pose.position);
}

ImagePoint project_to_image(const Vec3& world_point, const CameraPose& pose) {
    const Vec3 pc = camera_coords(world_point, pose);
    if (pc.z <= 0.0)
        throw std::domain_error("project_to_image: point behind the camera");
    return {pose.focal_length * pc.x / pc.z, pose.focal_length * pc.y / pc.z};
}

double estimate_distance(const BoundingBox& box, double focal_length,
                         double true_height) {
    if (box.bh <= 0.0)
        throw std::domain_error("estimate_distance: degenerate box height");
    if (focal_length <= 0.0 || true_height <= 0.0)
        throw std::domain_error("estimate_distance: focal length and height must be > 0");
    return true_height * focal_length / box.bh;
}

BearingAngles estimate_angles(const BoundingBox& box, double focal_length) {
    if (focal_length <= 0.0)
        throw std::domain_error("estimate_angles: focal length must be > 0");
    const double r = std::sqrt(box.bx * box.bx + box.by * box.by);
    return {std::atan(box.bx / focal_length), std::atan(box.by / focal_length),
            std::atan(r / focal_length)};
}

std::vector<Detection> detect_activities(const std::vector<SceneUser>& users,
                                         const CameraPose& pose,
                                         double target_height,
                                         double target_width, int n_classes,
                                         const DetectionNoise& noise,
                                         RandomStream& rng) {
    if (users.empty())
        throw std::invalid_argument("detect_activities: scene has no users");
    std::vector<Detection> out(users.size());
    for (std::size_t i = 0; i < users.size(); ++i) {
        const Vec3 pc = camera_coords(users[i].position, pose);
        if (pc.z <= 0.0) continue;  // out of frustum, skipped by the caller
        Detection& d = out[i];
        d.detected = true;

        const double dist = vnorm(users[i].position - pose.position);
        d.box.bx = pose.focal_length * pc.x / pc.z;
        d.box.by = pose.focal_length * pc.y / pc.z;
        d.box.bh = target_height * pose.focal_length / dist;
        d.box.bw = target_width * pose.focal_length / dist;
        if (noise.pixel_sigma > 0.0) {
            d.box.bx += rng.gaussian(0.0, noise.pixel_sigma);
            d.box.by += rng.gaussian(0.0, noise.pixel_sigma);
            d.box.bh = std::max(d.box.bh + rng.gaussian(0.0, noise.pixel_sigma),
                                1e-12);
            d.box.bw = std::max(d.box.bw + rng.gaussian(0.0, noise.pixel_sigma),
                                1e-12);
        }

        d.activity = users[i].activity;
        if (noise.activity_error_rate > 0.0 && n_classes >= 2 &&
            rng.bernoulli(noise.activity_error_rate)) {
            // uniform over the wrong classes
            int wrong = 1 + static_cast<int>(rng.uniform_index(
                                static_cast<std::uint64_t>(n_classes - 1)));
            if (wrong >= users[i].activity) ++wrong;
            d.activity = wrong;
        }
    }
    return out;
}

double min_rate_for_activity(int activity, const std::vector<double>& table) {
    if (activity < 1 || static_cast<std::size_t>(activity) > table.size())
        throw std::out_of_range("min_rate_for_activity: class id out of range");
    return table[static_cast<std::size_t>(activity - 1)];
}

std::vector<double> default_activity_table(int n_classes) {
    // Rate tiers in bps, round-robin from class 1.
    static constexpr double kTiers[4] = {1e6, 5e6, 2e7, 5e7};
    std::vector<double> table(static_cast<std::size_t>(n_classes));
    for (int a = 1; a <= n_classes; ++a)
        table[static_cast<std::size_t>(a - 1)] = kTiers[(a - 1) % 4];
    return table;
}

std::vector<double> load_activity_table(const std::string& path,
                                        int n_classes) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("activity table: cannot open " + path);
    std::vector<double> table = default_activity_table(n_classes);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        int cls = 0;
        char eq = 0;
        double rate = 0;
        if (!(ls >> cls >> eq >> rate) || eq != '=')
            throw std::runtime_error("activity table: parse error at " + path +
                                     ":" + std::to_string(lineno));
        if (cls < 1 || cls > n_classes)
            throw std::runtime_error("activity table: class id out of range at " +
                                     path + ":" + std::to_string(lineno));
        if (rate < 0)
            throw std::runtime_error("activity table: negative rate at " + path +
                                     ":" + std::to_string(lineno));
        table[static_cast<std::size_t>(cls - 1)] = rate;
    }
    return table;
}

}  // namespace cvisac
