#include "navstack/scan_mapper.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace navstack {

namespace {

// Slab test for an axis-aligned box. Returns the smallest positive entry t.
bool ray_box(const Point3& o, const Point3& d, const Box& b, double& t_out) {
    double t0 = 0.0;
    double t1 = std::numeric_limits<double>::infinity();
    const double od[3] = {o.x, o.y, o.z};
    const double dd[3] = {d.x, d.y, d.z};
    const double lo[3] = {b.min.x, b.min.y, b.min.z};
    const double hi[3] = {b.max.x, b.max.y, b.max.z};
    for (int i = 0; i < 3; ++i) {
        if (std::abs(dd[i]) < 1e-15) {
            if (od[i] < lo[i] || od[i] > hi[i]) {
                return false;
            }
            continue;
        }
        double ta = (lo[i] - od[i]) / dd[i];
        double tb = (hi[i] - od[i]) / dd[i];
        if (ta > tb) {
            std::swap(ta, tb);
        }
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1) {
            return false;
        }
    }
    if (t0 <= 0.0) {
        return false;  // origin inside or box behind
    }
    t_out = t0;
    return true;
}

// Infinite-side intersection of a vertical cylinder, clipped to its z span.
bool ray_cylinder(const Point3& o, const Point3& d, const Cylinder& c, double& t_out) {
    const double ox = o.x - c.center.x;
    const double oy = o.y - c.center.y;
    const double a = d.x * d.x + d.y * d.y;
    if (a < 1e-15) {
        return false;  // vertical ray; side surface not hit
    }
    const double b = 2.0 * (ox * d.x + oy * d.y);
    const double cc = ox * ox + oy * oy - c.radius * c.radius;
    const double disc = b * b - 4.0 * a * cc;
    if (disc < 0.0) {
        return false;
    }
    const double sq = std::sqrt(disc);
    for (double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
        if (t > 0.0) {
            const double z = o.z + t * d.z;
            if (z >= c.z_min && z <= c.z_max) {
                t_out = t;
                return true;
            }
        }
    }
    return false;
}

}  // namespace

void TiltMount::validate() const {
    if (!(height > 0.0)) {
        throw std::invalid_argument("TiltMount: height must be positive");
    }
    if (!(tilt_min < tilt_max)) {
        throw std::invalid_argument("TiltMount: tilt range is empty");
    }
}

int ScanConfig::beam_count() const {
    const double n = fov / angular_resolution;
    return static_cast<int>(std::lround(n)) + 1;
}

void ScanConfig::validate() const {
    if (!(max_range > 0.0)) {
        throw std::invalid_argument("ScanConfig: max_range must be positive");
    }
    if (!(angular_resolution > 0.0) || !(fov > 0.0)) {
        throw std::invalid_argument("ScanConfig: fov and resolution must be positive");
    }
    const double n = fov / angular_resolution;
    if (std::abs(n - std::lround(n)) > 1e-9) {
        throw std::invalid_argument("ScanConfig: fov must be an integer multiple of the resolution");
    }
    if (n_frames < 1) {
        throw std::invalid_argument("ScanConfig: n_frames must be >= 1");
    }
}

double ground_intersection_distance(const TiltMount& mount) {
    mount.validate();
    if (!(mount.tilt_alpha > 0.0)) {
        throw std::invalid_argument(
            "ground_intersection_distance: beam meets the floor only for a downward tilt");
    }
    return mount.height / std::tan(mount.tilt_alpha);
}

bool raycast(const World& world, const Point3& origin, const Point3& dir,
             double max_range, double& t_hit) {
    double best = max_range;
    bool hit = false;
    double t = 0.0;
    for (const auto& b : world.boxes) {
        if (ray_box(origin, dir, b, t) && t <= best) {
            best = t;
            hit = true;
        }
    }
    for (const auto& c : world.cylinders) {
        if (ray_cylinder(origin, dir, c, t) && t <= best) {
            best = t;
            hit = true;
        }
    }
    t_hit = best;
    return hit;
}

std::vector<ScanFrame> simulate_tilt_scan(const World& world, const TiltMount& mount,
                                          const ScanConfig& config,
                                          const Pose& sensor_pose) {
    mount.validate();
    config.validate();

    const int beams = config.beam_count();
    const Point3 origin{sensor_pose.x, sensor_pose.y, mount.height};

    std::vector<ScanFrame> frames;
    frames.reserve(static_cast<size_t>(config.n_frames));
    for (int f = 0; f < config.n_frames; ++f) {
        const double tilt =
            config.n_frames == 1
                ? mount.tilt_min
                : mount.tilt_min + (mount.tilt_max - mount.tilt_min) * f / (config.n_frames - 1);
        ScanFrame frame;
        frame.tilt = tilt;
        const double ct = std::cos(tilt);
        const double st = std::sin(tilt);
        for (int b = 0; b < beams; ++b) {
            const double az = sensor_pose.theta - 0.5 * config.fov + b * config.angular_resolution;
            const Point3 dir{ct * std::cos(az), ct * std::sin(az), -st};
            double t = 0.0;
            if (raycast(world, origin, dir, config.max_range, t)) {
                frame.points.push_back(
                    {origin.x + t * dir.x, origin.y + t * dir.y, origin.z + t * dir.z});
            }
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

ObstacleMap slice_reduce(const std::vector<ScanFrame>& frames, double z_min, double z_max) {
    if (!(z_min < z_max)) {
        throw std::invalid_argument("slice_reduce: z_min must be below z_max");
    }
    ObstacleMap map;
    for (const auto& frame : frames) {
        for (const auto& p : frame.points) {
            if (p.z > z_min && p.z < z_max) {  // strict band
                map.points.push_back({p.x, p.y});
            }
        }
    }
    return map;
}

bool OccupancyGrid::at(long ix, long iy) const {
    if (ix < ix0 || iy < iy0 || ix >= ix0 + nx || iy >= iy0 + ny) {
        return false;
    }
    return occupied[static_cast<size_t>((iy - iy0) * nx + (ix - ix0))] != 0;
}

OccupancyGrid rasterize(const ObstacleMap& map, double cell_size) {
    if (!(cell_size > 0.0)) {
        throw std::invalid_argument("rasterize: cell_size must be positive");
    }
    OccupancyGrid grid;
    grid.cell_size = cell_size;
    if (map.points.empty()) {
        return grid;
    }
    long min_ix = std::numeric_limits<long>::max();
    long min_iy = std::numeric_limits<long>::max();
    long max_ix = std::numeric_limits<long>::min();
    long max_iy = std::numeric_limits<long>::min();
    std::vector<std::pair<long, long>> cells;
    cells.reserve(map.points.size());
    for (const auto& p : map.points) {
        const long ix = static_cast<long>(std::floor(p.x / cell_size));
        const long iy = static_cast<long>(std::floor(p.y / cell_size));
        cells.emplace_back(ix, iy);
        min_ix = std::min(min_ix, ix);
        min_iy = std::min(min_iy, iy);
        max_ix = std::max(max_ix, ix);
        max_iy = std::max(max_iy, iy);
    }
    grid.ix0 = min_ix;
    grid.iy0 = min_iy;
    grid.nx = static_cast<int>(max_ix - min_ix + 1);
    grid.ny = static_cast<int>(max_iy - min_iy + 1);
    grid.occupied.assign(static_cast<size_t>(grid.nx) * grid.ny, 0);
    for (const auto& [ix, iy] : cells) {
        grid.occupied[static_cast<size_t>((iy - min_iy) * grid.nx + (ix - min_ix))] = 1;
    }
    return grid;
}

void write_point_cloud(std::ostream& os, const std::vector<ScanFrame>& frames) {
    os.precision(17);
    bool first = true;
    for (const auto& frame : frames) {
        if (!first) {
            os << "\n";
        }
        first = false;
        for (const auto& p : frame.points) {
            os << p.x << " " << p.y << " " << p.z << "\n";
        }
    }
}

std::vector<ScanFrame> read_point_cloud(std::istream& is) {
    std::vector<ScanFrame> frames;
    ScanFrame current;
    bool any = false;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) {
            if (any) {
                frames.push_back(std::move(current));
                current = ScanFrame{};
            }
            continue;
        }
        std::istringstream ls(line);
        Point3 p;
        if (!(ls >> p.x >> p.y >> p.z)) {
            throw std::invalid_argument("read_point_cloud: bad line: " + line);
        }
        current.points.push_back(p);
        any = true;
    }
    if (any) {
        frames.push_back(std::move(current));
    }
    return frames;
}

void write_obstacle_map(std::ostream& os, const ObstacleMap& map) {
    os.precision(17);
    for (const auto& p : map.points) {
        os << p.x << " " << p.y << "\n";
    }
}

void write_pgm(std::ostream& os, const OccupancyGrid& grid) {
    const int nx = std::max(grid.nx, 1);
    const int ny = std::max(grid.ny, 1);
    os << "P2\n" << nx << " " << ny << "\n255\n";
    for (int iy = ny - 1; iy >= 0; --iy) {  // top row = max y
        for (int ix = 0; ix < nx; ++ix) {
            const bool occ = grid.nx > 0 && grid.at(grid.ix0 + ix, grid.iy0 + iy);
            os << (occ ? 0 : 255) << (ix + 1 == nx ? "" : " ");
        }
        os << "\n";
    }
}

}  // namespace navstack
