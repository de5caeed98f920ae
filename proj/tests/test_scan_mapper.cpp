#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "navstack/scan_mapper.hpp"
#include "navstack/scenes.hpp"
#include "test_util.hpp"

using namespace navstack;

namespace {

// Single-linkage clustering of 2D points with the given linkage distance.
int cluster_count(const std::vector<Point2>& pts, double link) {
    std::vector<int> parent(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        parent[i] = static_cast<int>(i);
    }
    const auto find = [&](int a) {
        while (parent[a] != a) {
            a = parent[a] = parent[parent[a]];
        }
        return a;
    };
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (distance(pts[i], pts[j]) < link) {
                parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
            }
        }
    }
    std::set<int> roots;
    for (size_t i = 0; i < pts.size(); ++i) {
        roots.insert(find(static_cast<int>(i)));
    }
    return static_cast<int>(roots.size());
}

std::vector<ScanFrame> random_frames(Rng& rng, int n_frames, int n_points) {
    std::vector<ScanFrame> frames;
    for (int f = 0; f < n_frames; ++f) {
        ScanFrame frame;
        frame.tilt = testutil::uniform(rng, -0.1, 0.5);
        for (int i = 0; i < n_points; ++i) {
            frame.points.push_back({testutil::uniform(rng, -4, 4),
                                    testutil::uniform(rng, -4, 4),
                                    testutil::uniform(rng, 0.0, 2.0)});
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

bool contains_point(const ObstacleMap& m, const Point2& p) {
    return std::any_of(m.points.begin(), m.points.end(), [&](const Point2& q) {
        return q.x == p.x && q.y == p.y;
    });
}

}  // namespace

TEST_CASE("ground_intersection_distance") {
    TiltMount mount;
    mount.height = 0.40;
    SUBCASE("paper pairing: tan(alpha) = 0.1 -> 4.0 m") {
        mount.tilt_alpha = std::atan(0.1);
        CHECK(std::abs(ground_intersection_distance(mount) - 4.0) < 1e-12);
    }
    SUBCASE("45 degrees") {
        mount.tilt_alpha = kPi / 4;
        CHECK(ground_intersection_distance(mount) == doctest::Approx(0.40));
    }
    SUBCASE("30 degrees") {
        mount.tilt_alpha = kPi / 6;
        CHECK(ground_intersection_distance(mount) == doctest::Approx(0.40 * std::sqrt(3.0)));
    }
    SUBCASE("level or upward beam never meets the floor") {
        mount.tilt_alpha = 0.0;
        CHECK_THROWS_AS(ground_intersection_distance(mount), std::invalid_argument);
        mount.tilt_alpha = -0.1;
        CHECK_THROWS_AS(ground_intersection_distance(mount), std::invalid_argument);
    }
}

TEST_CASE("scan config") {
    ScanConfig cfg;
    CHECK(cfg.beam_count() == 101);  // 100 deg fov at 1 deg
    cfg.angular_resolution = 0.25 * kPi / 180.0;
    CHECK(cfg.beam_count() == 401);
    cfg.angular_resolution = 0.3 * kPi / 180.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("simulate_tilt_scan basic contracts") {
    TiltMount mount;
    ScanConfig cfg;
    SUBCASE("empty world gives empty frames") {
        const auto frames = simulate_tilt_scan({}, mount, cfg, {0, 0, 0});
        CHECK(frames.size() == 81);
        for (const auto& f : frames) {
            CHECK(f.points.empty());
        }
    }
    SUBCASE("frame count and beam budget") {
        World world;
        world.boxes.push_back({{1.0, -5.0, 0.0}, {1.2, 5.0, 3.0}});
        const auto frames = simulate_tilt_scan(world, mount, cfg, {0, 0, 0});
        CHECK(frames.size() == 81);
        for (const auto& f : frames) {
            CHECK(static_cast<int>(f.points.size()) <= cfg.beam_count());
        }
        CHECK(frames.front().tilt == doctest::Approx(mount.tilt_min));
        CHECK(frames.back().tilt == doctest::Approx(mount.tilt_max));
    }
}

TEST_CASE("wall scan against the ray-plane oracle") {
    // Tall wall 2 m ahead: each hit must satisfy x == 2 exactly and the
    // closed-form range 2 / (cos(tilt) cos(az)).
    World world;
    world.boxes.push_back({{2.0, -10.0, 0.0}, {2.001, 10.0, 3.0}});
    TiltMount mount;
    ScanConfig cfg;
    const auto frames = simulate_tilt_scan(world, mount, cfg, {0, 0, 0});
    int hits = 0;
    for (const auto& f : frames) {
        for (const auto& p : f.points) {
            ++hits;
            CHECK(std::abs(p.x - 2.0) < 1e-9);
            // z from the beam geometry at horizontal advance 2/cos(az).
            const double horiz = std::hypot(p.x, p.y);
            const double z_expected = mount.height - horiz * std::tan(f.tilt);
            CHECK(std::abs(p.z - z_expected) < 1e-9);
        }
    }
    CHECK(hits > 1000);
    // Boresight beam of every frame whose height at 2 m stays inside the wall.
    for (const auto& f : frames) {
        const double z_at_wall = mount.height - 2.0 * std::tan(f.tilt);
        if (z_at_wall > 0.01 && z_at_wall < 2.99) {
            const bool found = std::any_of(f.points.begin(), f.points.end(), [&](const Point3& p) {
                return std::abs(p.y) < 1e-9 && std::abs(std::hypot(p.x, p.y) - 2.0) < 1e-9;
            });
            CHECK(found);
        }
    }
}

TEST_CASE("cylinder hits lie on the surface") {
    World world;
    world.cylinders.push_back({{3.0, 0.0}, 0.2, 0.0, 2.0});
    TiltMount mount;
    ScanConfig cfg;
    const auto frames = simulate_tilt_scan(world, mount, cfg, {0, 0, 0});
    int hits = 0;
    for (const auto& f : frames) {
        for (const auto& p : f.points) {
            ++hits;
            CHECK(std::abs(std::hypot(p.x - 3.0, p.y - 0.0) - 0.2) < 1e-9);
            CHECK(p.z >= 0.0);
            CHECK(p.z <= 2.0);
        }
    }
    CHECK(hits > 50);
}

TEST_CASE("slice_reduce band semantics") {
    std::vector<ScanFrame> frames(2);
    frames[0].points = {{1.0, 0.0, 0.9}, {1.5, 0.0, 0.8}};   // 0.8 is on the boundary
    frames[1].points = {{2.0, 0.0, 1.2}, {2.5, 0.0, 1.19}};  // 1.2 is on the boundary
    const auto map = slice_reduce(frames, 0.8, 1.2);
    CHECK(map.points.size() == 2);
    CHECK(contains_point(map, {1.0, 0.0}));
    CHECK(contains_point(map, {2.5, 0.0}));
    CHECK_FALSE(contains_point(map, {1.5, 0.0}));
    CHECK_FALSE(contains_point(map, {2.0, 0.0}));
    SUBCASE("all frames below the band give an empty map") {
        const auto empty = slice_reduce(frames, 2.0, 3.0);
        CHECK(empty.points.empty());
    }
    SUBCASE("rejects inverted bands") {
        CHECK_THROWS_AS(slice_reduce(frames, 1.2, 0.8), std::invalid_argument);
    }
}

TEST_CASE("table scene: navigation band sees the tabletop edge") {
    const TableScene scene = make_table_scene();
    const auto frames = simulate_tilt_scan(scene.world, scene.mount, scene.scan, scene.sensor);
    CHECK(frames.size() == 81);

    const auto nav = slice_reduce(frames, 0.8, 1.2);
    REQUIRE(!nav.points.empty());
    // In-band hits at tabletop height lie on the slab's front or side faces;
    // hits below the slab are leg points inside the band's lower reach. The
    // span check uses the front face only.
    double y_lo = 1e9;
    double y_hi = -1e9;
    for (const auto& f : frames) {
        for (const auto& p : f.points) {
            if (!(p.z > 0.8 && p.z < 1.2)) {
                continue;
            }
            const bool on_front = std::abs(p.x - scene.top_front_x) < 1e-9;
            if (p.z >= scene.top_z_min - 1e-9) {
                const bool behind_front = p.x > scene.top_front_x - 1e-9;
                const bool on_side = std::abs(std::abs(p.y) - scene.top_y_max) < 1e-9 &&
                                     behind_front;
                // Rising beams can enter the slab through its underside.
                const bool on_bottom = std::abs(p.z - scene.top_z_min) < 1e-9 &&
                                       behind_front &&
                                       std::abs(p.y) <= scene.top_y_max + 1e-9;
                CHECK((on_front || on_side || on_bottom));
            }
            if (!on_front) {
                continue;
            }
            y_lo = std::min(y_lo, p.y);
            y_hi = std::max(y_hi, p.y);
        }
    }
    const double width = scene.top_y_max - scene.top_y_min;
    CHECK((y_hi - y_lo) / width >= 0.90);  // full leading edge, not 4 leg dots

    SUBCASE("low band resolves exactly the 4 legs") {
        const auto low = slice_reduce(frames, 0.0, 0.7);
        REQUIRE(!low.points.empty());
        CHECK(cluster_count(low.points, 0.3) == 4);
    }
    SUBCASE("band above the tabletop is empty (robot can pass under... or over nothing)") {
        const auto high = slice_reduce(frames, 1.3, 2.0);
        CHECK(high.points.empty());
    }
}

TEST_CASE("slice_reduce properties on random frames") {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        auto frames = random_frames(rng, 5, 20);
        double a = testutil::uniform(rng, 0.0, 1.0);
        double b = a + testutil::uniform(rng, 0.05, 1.0);
        const double grow = testutil::uniform(rng, 0.0, 0.5);

        const auto inner = slice_reduce(frames, a, b);
        const auto outer = slice_reduce(frames, a - grow, b + grow);
        // Monotone in the band.
        for (const auto& p : inner.points) {
            CHECK(contains_point(outer, p));
        }

        // Permutation invariance (as point sets).
        auto shuffled = frames;
        std::reverse(shuffled.begin(), shuffled.end());
        const auto reordered = slice_reduce(shuffled, a, b);
        CHECK(reordered.points.size() == inner.points.size());
        for (const auto& p : reordered.points) {
            CHECK(contains_point(inner, p));
        }

        // No synthesis: every output point appears verbatim in an input frame.
        for (const auto& p : inner.points) {
            bool found = false;
            for (const auto& f : frames) {
                for (const auto& q : f.points) {
                    if (q.x == p.x && q.y == p.y && q.z > a && q.z < b) {
                        found = true;
                    }
                }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("rasterize") {
    SUBCASE("empty map gives an empty grid") {
        const auto grid = rasterize({}, 0.1);
        CHECK(grid.nx == 0);
        CHECK(grid.ny == 0);
    }
    SUBCASE("floor convention") {
        ObstacleMap m;
        m.points = {{1.05, 2.51}};
        const auto grid = rasterize(m, 0.1);
        CHECK(grid.at(10, 25));
        CHECK_FALSE(grid.at(11, 25));
    }
    SUBCASE("boundary points land in the upper cell") {
        ObstacleMap m;
        m.points = {{0.2, 0.2}};
        const auto grid = rasterize(m, 0.1);
        CHECK(grid.at(2, 2));
    }
    SUBCASE("every point maps into an occupied cell") {
        Rng rng(55);
        ObstacleMap m;
        for (int i = 0; i < 200; ++i) {
            m.points.push_back({testutil::uniform(rng, -3, 3), testutil::uniform(rng, -3, 3)});
        }
        const auto grid = rasterize(m, 0.05);
        for (const auto& p : m.points) {
            CHECK(grid.at(static_cast<long>(std::floor(p.x / 0.05)),
                          static_cast<long>(std::floor(p.y / 0.05))));
        }
    }
    SUBCASE("rejects non-positive cell size") {
        CHECK_THROWS_AS(rasterize({}, 0.0), std::invalid_argument);
    }
}

TEST_CASE("point-cloud round trip") {
    Rng rng(7);
    const auto frames = random_frames(rng, 4, 15);
    std::stringstream ss;
    write_point_cloud(ss, frames);
    const auto back = read_point_cloud(ss);
    REQUIRE(back.size() == frames.size());
    for (size_t f = 0; f < frames.size(); ++f) {
        REQUIRE(back[f].points.size() == frames[f].points.size());
        for (size_t i = 0; i < frames[f].points.size(); ++i) {
            CHECK(back[f].points[i].x == frames[f].points[i].x);
            CHECK(back[f].points[i].y == frames[f].points[i].y);
            CHECK(back[f].points[i].z == frames[f].points[i].z);
        }
    }
    SUBCASE("malformed line throws") {
        std::stringstream bad("1.0 2.0 not-a-number\n");
        CHECK_THROWS_AS(read_point_cloud(bad), std::invalid_argument);
    }
}

TEST_CASE("pgm export shape") {
    ObstacleMap m;
    m.points = {{0.0, 0.0}, {0.25, 0.15}};
    const auto grid = rasterize(m, 0.1);
    std::stringstream ss;
    write_pgm(ss, grid);
    std::string magic;
    int nx = 0;
    int ny = 0;
    int maxval = 0;
    ss >> magic >> nx >> ny >> maxval;
    CHECK(magic == "P2");
    CHECK(nx == grid.nx);
    CHECK(ny == grid.ny);
    CHECK(maxval == 255);
    int v = 0;
    int zeros = 0;
    int total = 0;
    while (ss >> v) {
        ++total;
        if (v == 0) {
            ++zeros;
        }
    }
    CHECK(total == nx * ny);
    CHECK(zeros == 2);
}
