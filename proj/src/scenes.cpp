#include "navstack/scenes.hpp"

namespace navstack {

TableScene make_table_scene() {
    TableScene scene;
    scene.sensor = {0.0, 0.0, 0.0};
    scene.mount.height = 0.40;
    scene.mount.tilt_min = -5.0 * kPi / 180.0;
    scene.mount.tilt_max = 30.0 * kPi / 180.0;
    scene.scan.max_range = 8.0;
    scene.scan.fov = 100.0 * kPi / 180.0;
    scene.scan.angular_resolution = 0.25 * kPi / 180.0;
    scene.scan.n_frames = 81;

    scene.top_front_x = 6.4;
    scene.top_y_min = -0.6;
    scene.top_y_max = 0.6;
    scene.top_z_min = 0.9;
    scene.top_z_max = 1.0;

    // Tabletop slab, 1.2 m wide, 0.8 m deep.
    scene.world.boxes.push_back(
        {{scene.top_front_x, scene.top_y_min, scene.top_z_min},
         {scene.top_front_x + 0.8, scene.top_y_max, scene.top_z_max}});

    // Four 6 cm legs at the corners, floor to the slab underside.
    const double leg = 0.06;
    for (double x0 : {scene.top_front_x, scene.top_front_x + 0.8 - leg}) {
        for (double y0 : {scene.top_y_min, scene.top_y_max - leg}) {
            scene.world.boxes.push_back({{x0, y0, 0.0}, {x0 + leg, y0 + leg, scene.top_z_min}});
        }
    }
    return scene;
}

Box make_gate_bar(double y_near, double half_width) {
    return {{-half_width, y_near, 0.9}, {half_width, y_near + 0.1, 1.0}};
}

Box make_low_box(double x_min, double x_max, double y_min, double y_max) {
    return {{x_min, y_min, 0.0}, {x_max, y_max, 0.5}};
}

}  // namespace navstack
