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

#ifndef CVISAC_VISION_HPP
#define CVISAC_VISION_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "cvisac/rng.hpp"

// Camera-side user localization: pinhole geometry, the bounding-box based
// distance/bearing estimators, and a synthetic detector standing in for a
// video activity-recognition model. The detector emits ground truth
// perturbed by configurable box noise and a configurable class-error rate,
// so noise-free runs are exact.

namespace cvisac {

struct Vec3 {
    double x = 0, y = 0, z = 0;
    bool operator==(const Vec3&) const = default;
};

Vec3 operator-(const Vec3& a, const Vec3& b);
double vnorm(const Vec3& a);

struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};
    Vec3 operator*(const Vec3& v) const;
    Mat3 operator*(const Mat3& rhs) const;
    Mat3 transposed() const;
    static Mat3 identity();
};

// Extrinsic rotation composed from the three elementary blocks in order:
// R = R_x(roll) * R_y(pitch) * R_z(yaw). Always orthonormal with det +1.
Mat3 rotation_matrix(double roll, double pitch, double yaw);

struct BoundingBox {
    double bx = 0, by = 0;  // image-plane center, same unit as focal length
    double bh = 0, bw = 0;  // height/width in image units
    std::array<double, 8> corner_offsets{};  // carried, no consumer here
};

struct CameraPose {
    double roll = 0, pitch = 0, yaw = 0;  // radians
    double focal_length = 0.004;          // m
    Vec3 position;                        // world coordinates, m
};

struct ImagePoint {
    double x = 0, y = 0;
};

// World point -> camera frame. The z component is the depth along the
// optical axis.
Vec3 camera_coords(const Vec3& world_point, const CameraPose& pose);

// Pinhole projection (bx, by) = (fl*Xc/Zc, fl*Yc/Zc).
// Throws std::domain_error when the point is not in front of the camera.
ImagePoint project_to_image(const Vec3& world_point, const CameraPose& pose);

// d = true_height * fl / bh. Throws std::domain_error for degenerate bh.
double estimate_distance(const BoundingBox& box, double focal_length,
                         double true_height);

struct BearingAngles {
    double alpha, beta, gamma;  // arctan(bx/fl), arctan(by/fl), arctan(r/fl)
};
BearingAngles estimate_angles(const BoundingBox& box, double focal_length);

struct SceneUser {
    Vec3 position;
    int activity = 1;  // 1-based class id
};

struct DetectionNoise {
    double pixel_sigma = 0.0;        // additive Gaussian on box fields
    double activity_error_rate = 0.05;  // probability of a wrong class
};

struct Detection {
    bool detected = false;  // false when the user is behind the camera
    BoundingBox box;
    int activity = 0;
};

// Synthetic detector. Boxes: center from the pinhole projection; apparent
// height/width from target size scaled by the user-to-camera distance, so
// the distance estimator inverts them exactly in the noise-free case.
std::vector<Detection> detect_activities(const std::vector<SceneUser>& users,
                                         const CameraPose& pose,
                                         double target_height,
                                         double target_width, int n_classes,
                                         const DetectionNoise& noise,
                                         RandomStream& rng);

// Activity -> minimum rate table, 1-based class ids.
double min_rate_for_activity(int activity, const std::vector<double>& table);

// Default table: four rate tiers assigned round-robin over the classes.
std::vector<double> default_activity_table(int n_classes);

// Loads `class_id = min_rate_bps` lines over the default table.
// Throws std::runtime_error naming the offending line on parse errors.
std::vector<double> load_activity_table(const std::string& path,
                                        int n_classes);

}  // namespace cvisac

#endif  // CVISAC_VISION_HPP
