#include "navstack/scenario.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace navstack {

namespace {

using nlohmann::json;

constexpr double kDeg = kPi / 180.0;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument("scenario field '" + path + "': " + what);
}

double num(const json& j, const std::string& path, const char* key, double def) {
    if (!j.contains(key)) {
        return def;
    }
    const auto& v = j.at(key);
    if (!v.is_number()) {
        fail(path + "." + key, "expected a number");
    }
    return v.get<double>();
}

bool flag(const json& j, const std::string& path, const char* key, bool def) {
    if (!j.contains(key)) {
        return def;
    }
    const auto& v = j.at(key);
    if (!v.is_boolean()) {
        fail(path + "." + key, "expected a boolean");
    }
    return v.get<bool>();
}

const json& section(const json& j, const std::string& path, const char* key) {
    static const json empty = json::object();
    if (!j.contains(key)) {
        return empty;
    }
    const auto& v = j.at(key);
    if (!v.is_object()) {
        fail(path + "." + key, "expected an object");
    }
    return v;
}

Pose parse_pose(const json& j, const std::string& path) {
    if (!j.is_object()) {
        fail(path, "expected an object with x, y, theta_deg");
    }
    Pose p;
    p.x = num(j, path, "x", 0.0);
    p.y = num(j, path, "y", 0.0);
    p.theta = normalize_angle(num(j, path, "theta_deg", 0.0) * kDeg);
    return p;
}

Point3 parse_point3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_number()) {
        fail(path, "expected [x, y, z]");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

World parse_world(const json& j, const std::string& path) {
    World w;
    if (j.contains("boxes")) {
        const auto& arr = j.at("boxes");
        if (!arr.is_array()) {
            fail(path + ".boxes", "expected an array");
        }
        for (size_t i = 0; i < arr.size(); ++i) {
            const std::string bp = path + ".boxes[" + std::to_string(i) + "]";
            if (!arr[i].is_object()) {
                fail(bp, "expected an object with min and max");
            }
            Box b;
            b.min = parse_point3(arr[i].value("min", json()), bp + ".min");
            b.max = parse_point3(arr[i].value("max", json()), bp + ".max");
            w.boxes.push_back(b);
        }
    }
    if (j.contains("cylinders")) {
        const auto& arr = j.at("cylinders");
        if (!arr.is_array()) {
            fail(path + ".cylinders", "expected an array");
        }
        for (size_t i = 0; i < arr.size(); ++i) {
            const std::string cp = path + ".cylinders[" + std::to_string(i) + "]";
            const auto& cj = arr[i];
            if (!cj.is_object()) {
                fail(cp, "expected an object");
            }
            Cylinder c;
            c.center.x = num(cj, cp, "x", 0.0);
            c.center.y = num(cj, cp, "y", 0.0);
            c.radius = num(cj, cp, "radius", 0.1);
            c.z_min = num(cj, cp, "z_min", 0.0);
            c.z_max = num(cj, cp, "z_max", 1.0);
            w.cylinders.push_back(c);
        }
    }
    return w;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("scenario: top-level document must be an object");
    }
    Scenario s;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) {
            fail("name", "expected a string");
        }
        s.name = j.at("name").get<std::string>();
    }
    if (!j.contains("start")) {
        fail("start", "missing");
    }
    if (!j.contains("goal")) {
        fail("goal", "missing");
    }
    s.start = parse_pose(j.at("start"), "start");
    s.goal = parse_pose(j.at("goal"), "goal");

    {
        const auto& r = section(j, "", "robot");
        s.geom.wheel_radius = num(r, "robot", "wheel_radius", s.geom.wheel_radius);
        s.geom.wheelbase = num(r, "robot", "wheelbase", s.geom.wheelbase);
        s.geom.body_radius = num(r, "robot", "body_radius", s.geom.body_radius);
        s.geom.body_height = num(r, "robot", "body_height", s.geom.body_height);
    }
    {
        const auto& g = section(j, "", "gains");
        s.gains.k_v = num(g, "gains", "k_v", s.gains.k_v);
        s.gains.k_alpha = num(g, "gains", "k_alpha", s.gains.k_alpha);
        s.gains.h_weight = num(g, "gains", "h_weight", s.gains.h_weight);
    }
    {
        const auto& p = section(j, "", "potential_field");
        s.pf.k_att = num(p, "potential_field", "k_att", s.pf.k_att);
        s.pf.k_rep = num(p, "potential_field", "k_rep", s.pf.k_rep);
        s.pf.d0 = num(p, "potential_field", "d0", s.pf.d0);
        s.pf.sector_half_angle =
            num(p, "potential_field", "sector_half_angle_deg", s.pf.sector_half_angle / kDeg) * kDeg;
        s.pf.d_min = num(p, "potential_field", "d_min", s.pf.d_min);
    }
    {
        const auto& l = section(j, "", "limits");
        s.limits.v_max = num(l, "limits", "v_max", s.limits.v_max);
        s.limits.omega_max = num(l, "limits", "omega_max", s.limits.omega_max);
    }
    {
        const auto& n = section(j, "", "noise");
        s.noise.wheel_delta = num(n, "noise", "wheel_delta", 0.0);
        s.noise.compass_sigma = num(n, "noise", "compass_sigma", 0.0);
        s.noise.lrf_range_sigma = num(n, "noise", "lrf_range_sigma", 0.0);
        s.noise.lrf_bearing_sigma = num(n, "noise", "lrf_bearing_sigma", 0.0);
        s.noise.camera_bearing_sigma = num(n, "noise", "camera_bearing_sigma", 0.0);
    }
    {
        const auto& c = section(j, "", "sensors");
        s.sensors.compass = flag(c, "sensors", "compass", s.sensors.compass);
        s.sensors.lrf_range = flag(c, "sensors", "lrf_range", s.sensors.lrf_range);
        s.sensors.lrf_bearing = flag(c, "sensors", "lrf_bearing", s.sensors.lrf_bearing);
        s.sensors.camera_bearing = flag(c, "sensors", "camera_bearing", s.sensors.camera_bearing);
        s.sensors.lrf_max_range = num(c, "sensors", "lrf_max_range", s.sensors.lrf_max_range);
        s.sensors.lrf_fov = num(c, "sensors", "lrf_fov_deg", s.sensors.lrf_fov / kDeg) * kDeg;
        s.sensors.camera_fov = num(c, "sensors", "camera_fov_deg", s.sensors.camera_fov / kDeg) * kDeg;
    }
    {
        const auto& u = section(j, "", "ultrasonic");
        if (u.contains("bearings_deg")) {
            const auto& arr = u.at("bearings_deg");
            if (!arr.is_array()) {
                fail("ultrasonic.bearings_deg", "expected an array of degrees");
            }
            s.ultrasonic.bearings.clear();
            for (const auto& b : arr) {
                if (!b.is_number()) {
                    fail("ultrasonic.bearings_deg", "expected numbers");
                }
                s.ultrasonic.bearings.push_back(b.get<double>() * kDeg);
            }
        }
        s.ultrasonic.max_range = num(u, "ultrasonic", "max_range", s.ultrasonic.max_range);
        s.ultrasonic.height = num(u, "ultrasonic", "height", s.ultrasonic.height);
    }
    {
        const auto& m = section(j, "", "mapping");
        s.mapping.mount.height = num(m, "mapping", "height", s.mapping.mount.height);
        s.mapping.mount.tilt_alpha =
            num(m, "mapping", "tilt_alpha_deg", s.mapping.mount.tilt_alpha / kDeg) * kDeg;
        s.mapping.mount.tilt_min =
            num(m, "mapping", "tilt_min_deg", s.mapping.mount.tilt_min / kDeg) * kDeg;
        s.mapping.mount.tilt_max =
            num(m, "mapping", "tilt_max_deg", s.mapping.mount.tilt_max / kDeg) * kDeg;
        s.mapping.scan.max_range = num(m, "mapping", "max_range", s.mapping.scan.max_range);
        s.mapping.scan.fov = num(m, "mapping", "fov_deg", s.mapping.scan.fov / kDeg) * kDeg;
        s.mapping.scan.angular_resolution =
            num(m, "mapping", "resolution_deg", s.mapping.scan.angular_resolution / kDeg) * kDeg;
        s.mapping.scan.n_frames =
            static_cast<int>(num(m, "mapping", "n_frames", s.mapping.scan.n_frames));
        s.mapping.band_lo = num(m, "mapping", "band_lo", s.mapping.band_lo);
        s.mapping.band_hi = num(m, "mapping", "band_hi", s.mapping.band_hi);
    }
    {
        const auto& w = section(j, "", "world");
        s.mapped_world = parse_world(section(w, "world", "mapped"), "world.mapped");
        s.unexpected_world = parse_world(section(w, "world", "unexpected"), "world.unexpected");
    }
    if (j.contains("landmarks")) {
        const auto& arr = j.at("landmarks");
        if (!arr.is_array()) {
            fail("landmarks", "expected an array");
        }
        for (size_t i = 0; i < arr.size(); ++i) {
            const std::string lp = "landmarks[" + std::to_string(i) + "]";
            if (!arr[i].is_object()) {
                fail(lp, "expected an object");
            }
            Landmark lm;
            lm.id = static_cast<int>(num(arr[i], lp, "id", static_cast<double>(i)));
            lm.position.x = num(arr[i], lp, "x", 0.0);
            lm.position.y = num(arr[i], lp, "y", 0.0);
            s.landmarks.push_back(lm);
        }
    }
    s.avoidance_enabled = flag(j, "", "avoidance_enabled", s.avoidance_enabled);
    s.dt = num(j, "", "dt", s.dt);
    s.t_max = num(j, "", "t_max", s.t_max);
    s.goal_tolerance = num(j, "", "goal_tolerance", s.goal_tolerance);
    if (j.contains("seed")) {
        const auto& v = j.at("seed");
        if (!v.is_number_integer() && !v.is_number_unsigned()) {
            fail("seed", "expected an integer");
        }
        s.seed = v.get<uint64_t>();
    }
    if (j.contains("estimator")) {
        const auto& v = j.at("estimator");
        if (!v.is_string()) {
            fail("estimator", "expected \"ekf\" or \"odometry\"");
        }
        const std::string e = v.get<std::string>();
        if (e == "ekf") {
            s.estimator = EstimatorType::Ekf;
        } else if (e == "odometry") {
            s.estimator = EstimatorType::OdometryOnly;
        } else {
            fail("estimator", "expected \"ekf\" or \"odometry\", got \"" + e + "\"");
        }
    }
    if (j.contains("controller")) {
        const auto& v = j.at("controller");
        if (!v.is_string()) {
            fail("controller", "expected \"lyapunov\" or \"potential_field\"");
        }
        const std::string c = v.get<std::string>();
        if (c == "lyapunov") {
            s.controller = ControllerType::Lyapunov;
        } else if (c == "potential_field") {
            s.controller = ControllerType::PotentialField;
        } else {
            fail("controller", "expected \"lyapunov\" or \"potential_field\", got \"" + c + "\"");
        }
    }
    s.validate();
    return s;
}

json scenario_to_json(const Scenario& s) {
    json w_mapped{{"boxes", json::array()}, {"cylinders", json::array()}};
    json w_unexpected = w_mapped;
    auto dump_world = [](const World& w, json& out) {
        for (const auto& b : w.boxes) {
            out["boxes"].push_back({{"min", {b.min.x, b.min.y, b.min.z}},
                                    {"max", {b.max.x, b.max.y, b.max.z}}});
        }
        for (const auto& c : w.cylinders) {
            out["cylinders"].push_back({{"x", c.center.x},
                                        {"y", c.center.y},
                                        {"radius", c.radius},
                                        {"z_min", c.z_min},
                                        {"z_max", c.z_max}});
        }
    };
    dump_world(s.mapped_world, w_mapped);
    dump_world(s.unexpected_world, w_unexpected);

    json bearings = json::array();
    for (double b : s.ultrasonic.bearings) {
        bearings.push_back(b / kDeg);
    }
    json landmarks = json::array();
    for (const auto& lm : s.landmarks) {
        landmarks.push_back({{"id", lm.id}, {"x", lm.position.x}, {"y", lm.position.y}});
    }

    return json{
        {"name", s.name},
        {"start", {{"x", s.start.x}, {"y", s.start.y}, {"theta_deg", s.start.theta / kDeg}}},
        {"goal", {{"x", s.goal.x}, {"y", s.goal.y}, {"theta_deg", s.goal.theta / kDeg}}},
        {"robot",
         {{"wheel_radius", s.geom.wheel_radius},
          {"wheelbase", s.geom.wheelbase},
          {"body_radius", s.geom.body_radius},
          {"body_height", s.geom.body_height}}},
        {"gains",
         {{"k_v", s.gains.k_v}, {"k_alpha", s.gains.k_alpha}, {"h_weight", s.gains.h_weight}}},
        {"potential_field",
         {{"k_att", s.pf.k_att},
          {"k_rep", s.pf.k_rep},
          {"d0", s.pf.d0},
          {"sector_half_angle_deg", s.pf.sector_half_angle / kDeg},
          {"d_min", s.pf.d_min}}},
        {"limits", {{"v_max", s.limits.v_max}, {"omega_max", s.limits.omega_max}}},
        {"noise",
         {{"wheel_delta", s.noise.wheel_delta},
          {"compass_sigma", s.noise.compass_sigma},
          {"lrf_range_sigma", s.noise.lrf_range_sigma},
          {"lrf_bearing_sigma", s.noise.lrf_bearing_sigma},
          {"camera_bearing_sigma", s.noise.camera_bearing_sigma}}},
        {"sensors",
         {{"compass", s.sensors.compass},
          {"lrf_range", s.sensors.lrf_range},
          {"lrf_bearing", s.sensors.lrf_bearing},
          {"camera_bearing", s.sensors.camera_bearing},
          {"lrf_max_range", s.sensors.lrf_max_range},
          {"lrf_fov_deg", s.sensors.lrf_fov / kDeg},
          {"camera_fov_deg", s.sensors.camera_fov / kDeg}}},
        {"ultrasonic",
         {{"bearings_deg", bearings},
          {"max_range", s.ultrasonic.max_range},
          {"height", s.ultrasonic.height}}},
        {"mapping",
         {{"height", s.mapping.mount.height},
          {"tilt_alpha_deg", s.mapping.mount.tilt_alpha / kDeg},
          {"tilt_min_deg", s.mapping.mount.tilt_min / kDeg},
          {"tilt_max_deg", s.mapping.mount.tilt_max / kDeg},
          {"max_range", s.mapping.scan.max_range},
          {"fov_deg", s.mapping.scan.fov / kDeg},
          {"resolution_deg", s.mapping.scan.angular_resolution / kDeg},
          {"n_frames", s.mapping.scan.n_frames},
          {"band_lo", s.mapping.band_lo},
          {"band_hi", s.mapping.band_hi}}},
        {"world", {{"mapped", w_mapped}, {"unexpected", w_unexpected}}},
        {"landmarks", landmarks},
        {"avoidance_enabled", s.avoidance_enabled},
        {"dt", s.dt},
        {"t_max", s.t_max},
        {"goal_tolerance", s.goal_tolerance},
        {"seed", s.seed},
        {"estimator", s.estimator == EstimatorType::Ekf ? "ekf" : "odometry"},
        {"controller",
         s.controller == ControllerType::Lyapunov ? "lyapunov" : "potential_field"},
    };
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open scenario file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("scenario parse error in " + path + ": " + e.what());
    }
    return scenario_from_json(j);
}

}  // namespace navstack
