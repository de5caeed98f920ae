#ifndef NAVSTACK_SCENES_HPP_
#define NAVSTACK_SCENES_HPP_

#include "navstack/geometry.hpp"
#include "navstack/scan_mapper.hpp"

namespace navstack {

/// Desk-scale table: four legs under a raised tabletop slab. A horizontal
/// scan at leg height sees only the legs; the slab shows up in the
/// navigation band.
struct TableScene {
    World world;
    TiltMount mount;
    ScanConfig scan;
    Pose sensor;
    // Tabletop slab extents, for span checks.
    double top_front_x = 0.0;
    double top_y_min = 0.0;
    double top_y_max = 0.0;
    double top_z_min = 0.0;
    double top_z_max = 0.0;
};

TableScene make_table_scene();

/// Archway bar spanning the course at a height the robot cannot pass under.
/// Invisible to the low ultrasonic beams; only the slice-band map sees it.
Box make_gate_bar(double y_near, double half_width);

/// Low box obstacle: below the slice band, caught by the ultrasonics.
Box make_low_box(double x_min, double x_max, double y_min, double y_max);

}  // namespace navstack

#endif  // NAVSTACK_SCENES_HPP_
