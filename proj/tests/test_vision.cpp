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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cvisac/vision.hpp"

using namespace cvisac;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("rotation matrix elementary cases") {
    const Mat3 id = rotation_matrix(0.0, 0.0, 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(id.m[i][j] == doctest::Approx(i == j ? 1.0 : 0.0));

    // yaw = pi/2 reproduces the elementary z-rotation block
    const Mat3 yaw = rotation_matrix(0.0, 0.0, kPi / 2.0);
    const double expect[3][3] = {{0, 1, 0}, {-1, 0, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(yaw.m[i][j] == doctest::Approx(expect[i][j]).epsilon(1e-15));
}

TEST_CASE("rotation matrices live in SO(3)") {
    RandomStream rng(21);
    for (int rep = 0; rep < 500; ++rep) {
        const Mat3 r = rotation_matrix(rng.uniform(-kPi, kPi),
                                       rng.uniform(-kPi, kPi),
                                       rng.uniform(-kPi, kPi));
        const Mat3 rrt = r * r.transposed();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(rrt.m[i][j] - (i == j ? 1.0 : 0.0)) <= 1e-12);
        const double det =
            r.m[0][0] * (r.m[1][1] * r.m[2][2] - r.m[1][2] * r.m[2][1]) -
            r.m[0][1] * (r.m[1][0] * r.m[2][2] - r.m[1][2] * r.m[2][0]) +
            r.m[0][2] * (r.m[1][0] * r.m[2][1] - r.m[1][1] * r.m[2][0]);
        CHECK(std::abs(det - 1.0) <= 1e-12);
    }
}

TEST_CASE("pinhole projection basics") {
    CameraPose pose;  // identity orientation, optical axis +z
    pose.focal_length = 0.004;

    // on-axis point projects to the image center
    const ImagePoint c = project_to_image({0, 0, 5}, pose);
    CHECK(c.x == doctest::Approx(0.0));
    CHECK(c.y == doctest::Approx(0.0));

    // doubling the depth at fixed lateral offset halves the coordinate
    const ImagePoint p1 = project_to_image({1, 0.5, 4}, pose);
    const ImagePoint p2 = project_to_image({1, 0.5, 8}, pose);
    CHECK(p1.x == doctest::Approx(2.0 * p2.x).epsilon(1e-14));
    CHECK(p1.y == doctest::Approx(2.0 * p2.y).epsilon(1e-14));

    CHECK_THROWS_AS(project_to_image({0, 0, -1}, pose), std::domain_error);
    CHECK_THROWS_AS(project_to_image({0, 0, 0}, pose), std::domain_error);
}

TEST_CASE("distance estimate closed form and round trip") {
    BoundingBox box;
    box.bh = 0.002;
    CHECK(estimate_distance(box, 0.004, 2.0) == doctest::Approx(4.0));
    box.bh = 0.001;
    CHECK(estimate_distance(box, 0.004, 2.0) == doctest::Approx(8.0));
    box.bh = 0.0;
    CHECK_THROWS_AS(estimate_distance(box, 0.004, 2.0), std::domain_error);

    // noise-free synthetic scene: estimator inverts the detector exactly
    RandomStream rng(22);
    CameraPose pose;
    pose.position = {0, 0, 12};
    pose.pitch = kPi;  // straight down
    DetectionNoise quiet{0.0, 0.0};
    for (int rep = 0; rep < 300; ++rep) {
        const Vec3 p{rng.uniform(-50, 50), rng.uniform(-50, 50), 0.0};
        const std::vector<SceneUser> scene = {{p, 3}};
        const auto det = detect_activities(scene, pose, 1.7, 0.5, 60, quiet, rng);
        REQUIRE(det[0].detected);
        const double est = estimate_distance(det[0].box, pose.focal_length, 1.7);
        const double truth = vnorm(p - pose.position);
        CHECK(std::abs(est - truth) <= 1e-9 * truth);
    }
}

TEST_CASE("bearing angles: closed forms, ordering, projection consistency") {
    BoundingBox b0;
    const BearingAngles z = estimate_angles(b0, 0.004);
    CHECK(z.alpha == 0.0);
    CHECK(z.beta == 0.0);
    CHECK(z.gamma == 0.0);

    BoundingBox b1;
    b1.bx = 0.004;
    const BearingAngles a1 = estimate_angles(b1, 0.004);
    CHECK(a1.alpha == doctest::Approx(kPi / 4.0));
    CHECK(a1.beta == doctest::Approx(0.0));
    CHECK(a1.gamma == doctest::Approx(kPi / 4.0));

    RandomStream rng(23);
    for (int rep = 0; rep < 200; ++rep) {
        BoundingBox b;
        b.bx = rng.uniform(-0.01, 0.01);
        b.by = rng.uniform(-0.01, 0.01);
        const BearingAngles a = estimate_angles(b, 0.004);
        CHECK(a.gamma >= std::abs(a.alpha) - 1e-15);
        CHECK(a.gamma >= std::abs(a.beta) - 1e-15);
        // gamma reconstructed from the raw coordinates
        const double expect =
            std::atan(std::hypot(b.bx, b.by) / 0.004);
        CHECK(std::abs(a.gamma - expect) <= 1e-12);
    }
}

TEST_CASE("bearing recovery through the forward model") {
    RandomStream rng(24);
    CameraPose pose;
    pose.position = {3, -2, 9};
    pose.roll = 0.2;
    pose.pitch = kPi - 0.3;
    pose.yaw = 0.5;
    for (int rep = 0; rep < 200; ++rep) {
        const Vec3 p{rng.uniform(-40, 40), rng.uniform(-40, 40), 0.0};
        const Vec3 pc = camera_coords(p, pose);
        if (pc.z <= 0.1) continue;
        const ImagePoint ip = project_to_image(p, pose);
        BoundingBox box;
        box.bx = ip.x;
        box.by = ip.y;
        const BearingAngles a = estimate_angles(box, pose.focal_length);
        CHECK(std::abs(std::tan(a.alpha) - pc.x / pc.z) <= 1e-9);
        CHECK(std::abs(std::tan(a.beta) - pc.y / pc.z) <= 1e-9);
    }
}

TEST_CASE("synthetic detector: exactness, forced flips, error rate") {
    CameraPose pose;
    pose.position = {0, 0, 10};
    pose.pitch = kPi;
    RandomStream rng(25);

    std::vector<SceneUser> scene;
    for (int i = 0; i < 8; ++i)
        scene.push_back({{rng.uniform(-30, 30), rng.uniform(-30, 30), 0.0},
                         1 + static_cast<int>(rng.uniform_index(60))});

    // p_err = 0, zero noise: exact ground truth
    DetectionNoise quiet{0.0, 0.0};
    auto det = detect_activities(scene, pose, 1.7, 0.5, 60, quiet, rng);
    for (std::size_t i = 0; i < scene.size(); ++i) {
        REQUIRE(det[i].detected);
        CHECK(det[i].activity == scene[i].activity);
    }

    // p_err = 1: never the true class
    DetectionNoise always{0.0, 1.0};
    for (int rep = 0; rep < 50; ++rep) {
        det = detect_activities(scene, pose, 1.7, 0.5, 60, always, rng);
        for (std::size_t i = 0; i < scene.size(); ++i) {
            CHECK(det[i].activity != scene[i].activity);
            CHECK(det[i].activity >= 1);
            CHECK(det[i].activity <= 60);
        }
    }

    // error rate concentrates near p_err
    DetectionNoise some{0.0, 0.05};
    int errors = 0, total = 0;
    for (int rep = 0; rep < 1250; ++rep) {
        det = detect_activities(scene, pose, 1.7, 0.5, 60, some, rng);
        for (std::size_t i = 0; i < scene.size(); ++i) {
            errors += det[i].activity != scene[i].activity;
            ++total;
        }
    }
    const double rate = static_cast<double>(errors) / total;
    CHECK(std::abs(rate - 0.05) <= 0.02);

    // users behind the camera are marked undetected
    CameraPose up = pose;
    up.pitch = 0.0;  // optical axis +z, ground users behind
    det = detect_activities(scene, up, 1.7, 0.5, 60, quiet, rng);
    for (const auto& d : det) CHECK(!d.detected);
    CHECK_THROWS_AS(detect_activities(std::vector<SceneUser>{}, pose, 1.7, 0.5,
                                      60, quiet, rng),
                    std::invalid_argument);
}

TEST_CASE("activity-rate table lookup and defaults") {
    std::vector<double> table(10, 7.5e6);
    for (int a = 1; a <= 10; ++a)
        CHECK(min_rate_for_activity(a, table) == 7.5e6);
    table[2] = 5e6;
    CHECK(min_rate_for_activity(3, table) == 5e6);
    CHECK_THROWS_AS(min_rate_for_activity(0, table), std::out_of_range);
    CHECK_THROWS_AS(min_rate_for_activity(11, table), std::out_of_range);

    // default tiers: recompute the round-robin assignment independently
    const auto def = default_activity_table(60);
    const double tiers[4] = {1e6, 5e6, 2e7, 5e7};
    for (int a = 1; a <= 60; ++a)
        CHECK(min_rate_for_activity(a, def) == tiers[(a - 1) % 4]);
}

TEST_CASE("activity table file loading") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "cvisac_vision_test";
    fs::create_directories(dir);
    const fs::path good = dir / "table.txt";
    {
        std::ofstream out(good);
        out << "# comment line\n";
        out << "3 = 5000000\n";
        out << "\n";
        out << "7 = 1.25e7\n";
    }
    const auto table = load_activity_table(good.string(), 60);
    CHECK(table[2] == doctest::Approx(5e6));
    CHECK(table[6] == doctest::Approx(1.25e7));
    CHECK(table[0] == doctest::Approx(1e6));  // untouched default

    const fs::path bad = dir / "bad.txt";
    {
        std::ofstream out(bad);
        out << "99 = 1e6\n";  // out of range for 60 classes
    }
    CHECK_THROWS_AS(load_activity_table(bad.string(), 60), std::runtime_error);
    CHECK_THROWS_AS(load_activity_table((dir / "missing.txt").string(), 60),
                    std::runtime_error);
    fs::remove_all(dir);
}
