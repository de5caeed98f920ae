#include <CLI11.hpp>

#include "navstack/app.hpp"

int main(int argc, char** argv) {
    CLI::App app{"navstack: deterministic mobile-robot navigation simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = navstack::default_out_dir();
    std::optional<uint64_t> seed_override;

    auto* run = app.add_subcommand("run", "run a scenario and write CSV/SVG artifacts");
    run->add_option("scenario", scenario_path, "scenario or manifest JSON file")->required();
    run->add_option("--out", out_dir, "output directory");
    uint64_t seed_value = 0;
    auto* seed_opt = run->add_option("--seed", seed_value, "override the scenario seed");

    navstack::MapOptions map_opts;
    auto* map = app.add_subcommand("map", "slice-reduce a 3D cloud to a 2D map");
    auto* cloud = map->add_option("--cloud", map_opts.cloud_path, "point-cloud file (x y z lines)");
    auto* scene = map->add_option("--scene", map_opts.scene, "built-in scene (table)");
    cloud->excludes(scene);
    map->add_option("--band", [&map_opts](const std::vector<std::string>& vals) {
            map_opts.band_lo = std::stod(vals.at(0));
            map_opts.band_hi = std::stod(vals.at(1));
            return true;
        },
        "height band, two values in meters")->expected(2);
    map->add_option("--cell", map_opts.cell_size, "raster cell size [m]");
    map->add_option("--out", out_dir, "output directory");

    int n_runs = 100;
    auto* compare = app.add_subcommand("compare", "Monte-Carlo estimator comparison");
    compare->add_option("scenario", scenario_path, "scenario JSON file")->required();
    compare->add_option("--runs", n_runs, "number of Monte-Carlo runs");
    compare->add_option("--out", out_dir, "output directory");

    auto* validate = app.add_subcommand("validate", "schema-check a scenario file");
    validate->add_option("scenario", scenario_path, "scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (!seed_opt->empty()) {
            seed_override = seed_value;
        }
        return navstack::cmd_run(scenario_path, out_dir, seed_override);
    }
    if (map->parsed()) {
        if (map_opts.cloud_path.empty() && map_opts.scene.empty()) {
            std::cerr << "error: map needs --cloud or --scene\n";
            return navstack::kExitError;
        }
        return navstack::cmd_map(map_opts, out_dir);
    }
    if (compare->parsed()) {
        return navstack::cmd_compare(scenario_path, n_runs, out_dir);
    }
    return navstack::cmd_validate(scenario_path);
}
