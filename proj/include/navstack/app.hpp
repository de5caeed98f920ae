#ifndef NAVSTACK_APP_HPP_
#define NAVSTACK_APP_HPP_

#include <cstdint>
#include <optional>
#include <string>

namespace navstack {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success, 1 error, 2 t_max reached before the goal.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitTimeout = 2;

/// Default output directory: $NAVSTACK_OUT if set, else ./navstack_out.
std::string default_out_dir();

/// Runs a scenario file (or a previously written manifest, which embeds its
/// resolved scenario) and writes trajectory.csv, the three SVG panels, and
/// manifest.json into out_dir.
int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<uint64_t> seed_override);

struct MapOptions {
    std::string cloud_path;  // point-cloud file; empty when a scene is used
    std::string scene;       // "table" for the built-in synthetic scene
    double band_lo = 0.8;
    double band_hi = 1.2;
    double cell_size = 0.05;
};

/// Slice-reduces a 3D cloud (file or synthetic scene) and writes map.txt,
/// map.pgm, map.svg, and manifest.json.
int cmd_map(const MapOptions& opts, const std::string& out_dir);

/// Monte-Carlo estimator comparison: rmse.csv, overlay.svg, manifest.json.
int cmd_compare(const std::string& scenario_path, int n_runs, const std::string& out_dir);

/// Schema check only.
int cmd_validate(const std::string& scenario_path);

}  // namespace navstack

#endif  // NAVSTACK_APP_HPP_
