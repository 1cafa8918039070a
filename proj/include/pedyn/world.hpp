#ifndef PEDYN_WORLD_HPP
#define PEDYN_WORLD_HPP

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "pedyn/common.hpp"
#include "pedyn/encoder.hpp"

namespace pedyn {

/// One Gaussian intensity blob on the workspace plane.
struct Blob {
    double cx = 0.0;
    double cy = 0.0;
    double amplitude = 1.0;
    double radius = 0.1;
};

/// Procedurally generated planar scene: a handful of Gaussian blobs on a
/// dark background, fixed for the lifetime of an experiment series.
struct Scene {
    std::vector<Blob> blobs;
    std::uint64_t seed = 0;

    /// Blob centers uniform in [0,1]^2, amplitudes in [0.4,1.0), radii in
    /// [0.05,0.25). At least 3 blobs so images vary across the workspace.
    static Scene generate(std::size_t blob_count, std::uint64_t seed);

    nlohmann::json to_json() const;
    static Scene from_json(const nlohmann::json& j);
    bool operator==(const Scene& other) const;
};

/// Camera over the scene, driven by two motors in normalized bounds.
struct RobotState {
    MotorCommand position{0.5, 0.5};
};

struct WorldParams {
    std::size_t image_width = 16;
    std::size_t image_height = 16;
    /// Side length of the square view window, in workspace units.
    double window = 0.3;
    /// Waypoint spacing along movement trajectories.
    double traj_step = 0.02;
};

/// Fixed evaluation set shared by every experiment in a series.
struct TestSet {
    std::vector<VisuoMotorSample> samples;
};

/// View of the scene through a window of side params.window centered at
/// pos: each pixel is the clamped sum of blob intensities at its world
/// point. Pure function of (scene, pos). Throws on out-of-bounds pos.
Image render(const Scene& scene, MotorCommand pos, const WorldParams& params);

/// Straight-line waypoints from the current position to the target at
/// spacing `step`, ending exactly on the target; the robot ends up at the
/// target. A degenerate move (target equals the current position) yields
/// the single waypoint [target].
std::vector<MotorCommand> trajectory(RobotState& state, MotorCommand target, double step);

/// n uniform-random motor positions paired with the encoding of their
/// rendered images.
TestSet build_test_set(const Scene& scene, const WorldParams& params,
                       const SensoryEncoder& encoder, std::size_t n, std::uint64_t seed);

/// Images rendered on a grid_n x grid_n uniform grid over the workspace;
/// the autoencoder pretraining corpus.
std::vector<Image> render_grid_corpus(const Scene& scene, const WorldParams& params,
                                      std::size_t grid_n);

} // namespace pedyn

#endif // PEDYN_WORLD_HPP
