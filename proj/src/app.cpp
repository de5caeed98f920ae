#include "navstack/app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "navstack/plots.hpp"
#include "navstack/scenario.hpp"
#include "navstack/scenes.hpp"
#include "navstack/simulator.hpp"

namespace navstack {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const json& extra) {
    json m{{"command", command}, {"tool_version", kToolVersion}, {"out_dir", out_dir.string()}};
    m.update(extra);
    write_file(out_dir / "manifest.json", m.dump(2) + "\n");
}

Scenario load_scenario_or_manifest(const std::string& path) {
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
    if (j.is_object() && j.contains("scenario")) {
        return scenario_from_json(j.at("scenario"));  // manifest replay
    }
    return scenario_from_json(j);
}

}  // namespace

std::string default_out_dir() {
    if (const char* env = std::getenv("NAVSTACK_OUT")) {
        return env;
    }
    return "navstack_out";
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<uint64_t> seed_override) {
    Scenario s;
    try {
        s = load_scenario_or_manifest(scenario_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    if (seed_override) {
        s.seed = *seed_override;
    }

    const fs::path dir(out_dir);
    fs::create_directories(dir);

    const TrajectoryLog log = run_scenario(s);

    {
        std::ostringstream csv;
        write_csv(csv, log);
        write_file(dir / "trajectory.csv", csv.str());
    }

    // Plots are re-read from the CSV so they depend only on logged data.
    std::ifstream csv_in(dir / "trajectory.csv");
    const auto rows = parse_trajectory_csv(csv_in);
    {
        std::ostringstream svg;
        svg_trajectory(svg, rows, log.nav_map);
        write_file(dir / "trajectory.svg", svg.str());
    }
    {
        std::ostringstream svg;
        svg_velocities(svg, rows);
        write_file(dir / "velocities.svg", svg.str());
    }
    {
        std::ostringstream svg;
        svg_lyapunov(svg, rows);
        write_file(dir / "lyapunov.svg", svg.str());
    }

    write_manifest(dir, "run",
                   json{{"seed", s.seed},
                        {"goal_reached", log.goal_reached},
                        {"scenario", scenario_to_json(s)}});

    std::cout << (log.goal_reached ? "goal reached" : "t_max reached") << " after "
              << log.records.back().t << " s\n";
    return log.goal_reached ? kExitOk : kExitTimeout;
}

int cmd_map(const MapOptions& opts, const std::string& out_dir) {
    std::vector<ScanFrame> frames;
    json source;
    try {
        if (!opts.scene.empty()) {
            if (opts.scene != "table") {
                throw std::invalid_argument("unknown scene: " + opts.scene);
            }
            const TableScene scene = make_table_scene();
            frames = simulate_tilt_scan(scene.world, scene.mount, scene.scan, scene.sensor);
            source = {{"scene", opts.scene}};
        } else {
            std::ifstream in(opts.cloud_path);
            if (!in) {
                throw std::invalid_argument("cannot open cloud file: " + opts.cloud_path);
            }
            frames = read_point_cloud(in);
            source = {{"cloud", opts.cloud_path}};
        }
        if (!(opts.band_lo < opts.band_hi)) {
            throw std::invalid_argument("band: lower bound must be below upper bound");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }

    const fs::path dir(out_dir);
    fs::create_directories(dir);

    bool empty_input = true;
    for (const auto& f : frames) {
        if (!f.points.empty()) {
            empty_input = false;
        }
    }
    if (empty_input) {
        std::cerr << "warning: input cloud is empty; writing an empty map\n";
    }

    const ObstacleMap map = slice_reduce(frames, opts.band_lo, opts.band_hi);
    {
        std::ostringstream os;
        write_obstacle_map(os, map);
        write_file(dir / "map.txt", os.str());
    }
    {
        std::ostringstream os;
        write_pgm(os, rasterize(map, opts.cell_size));
        write_file(dir / "map.pgm", os.str());
    }
    {
        std::ostringstream os;
        svg_map(os, map);
        write_file(dir / "map.svg", os.str());
    }
    write_manifest(dir, "map",
                   json{{"source", source},
                        {"band", {opts.band_lo, opts.band_hi}},
                        {"cell_size", opts.cell_size},
                        {"n_points", map.points.size()}});
    std::cout << "map points in band: " << map.points.size() << "\n";
    return kExitOk;
}

int cmd_compare(const std::string& scenario_path, int n_runs, const std::string& out_dir) {
    if (n_runs < 2) {
        std::cerr << "error: compare needs --runs >= 2\n";
        return kExitError;
    }
    Scenario s;
    try {
        s = load_scenario_or_manifest(scenario_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }

    const fs::path dir(out_dir);
    fs::create_directories(dir);

    const MonteCarloSummary summary = monte_carlo(s, n_runs);
    {
        std::ostringstream os;
        os.precision(17);
        os << "config,final_rmse,trajectory_rmse,avg_nees\n";
        os << "odometry," << summary.odometry.final_rmse << ","
           << summary.odometry.trajectory_rmse << ",\n";
        os << "ekf," << summary.ekf.final_rmse << "," << summary.ekf.trajectory_rmse << ","
           << summary.ekf.avg_nees << "\n";
        write_file(dir / "rmse.csv", os.str());
    }

    // Overlay for the first derived seed.
    std::vector<LabelledPath> paths;
    {
        Scenario sc = s;
        sc.seed = Rng::derive_seed(s.seed, 10);
        sc.estimator = EstimatorType::OdometryOnly;
        const TrajectoryLog od = run_scenario(sc);
        sc.estimator = EstimatorType::Ekf;
        const TrajectoryLog ek = run_scenario(sc);
        LabelledPath truth{"true", {}};
        for (const auto& r : ek.records) {
            truth.points.push_back({r.truth.x, r.truth.y});
        }
        LabelledPath odp{"odometry estimate", {}};
        for (const auto& r : od.records) {
            odp.points.push_back({r.est.x, r.est.y});
        }
        LabelledPath ekp{"ekf estimate", {}};
        for (const auto& r : ek.records) {
            ekp.points.push_back({r.est.x, r.est.y});
        }
        paths = {truth, odp, ekp};
    }
    {
        std::ostringstream os;
        svg_overlay(os, paths);
        write_file(dir / "overlay.svg", os.str());
    }
    write_manifest(dir, "compare",
                   json{{"seed", s.seed},
                        {"n_runs", n_runs},
                        {"scenario", scenario_to_json(s)},
                        {"final_rmse",
                         {{"odometry", summary.odometry.final_rmse},
                          {"ekf", summary.ekf.final_rmse}}}});
    std::cout << "final-position RMSE over " << n_runs << " runs: odometry "
              << summary.odometry.final_rmse << " m, ekf " << summary.ekf.final_rmse << " m\n";
    return kExitOk;
}

int cmd_validate(const std::string& scenario_path) {
    try {
        (void)load_scenario_or_manifest(scenario_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    std::cout << "ok\n";
    return kExitOk;
}

}  // namespace navstack
