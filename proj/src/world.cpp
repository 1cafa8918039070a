#include "pedyn/world.hpp"

#include <cmath>
#include <stdexcept>

#include "pedyn/rng.hpp"

namespace pedyn {

Scene Scene::generate(std::size_t blob_count, std::uint64_t seed) {
    require(blob_count >= 3, "Scene: need at least 3 blobs");
    Scene scene;
    scene.seed = seed;
    RngStream rng(seed);
    scene.blobs.reserve(blob_count);
    for (std::size_t i = 0; i < blob_count; ++i) {
        Blob blob;
        blob.cx = rng.uniform();
        blob.cy = rng.uniform();
        blob.amplitude = rng.uniform(0.4, 1.0);
        blob.radius = rng.uniform(0.05, 0.25);
        scene.blobs.push_back(blob);
    }
    return scene;
}

nlohmann::json Scene::to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["blobs"] = nlohmann::json::array();
    for (const Blob& b : blobs) {
        j["blobs"].push_back({{"cx", b.cx}, {"cy", b.cy}, {"amplitude", b.amplitude},
                              {"radius", b.radius}});
    }
    return j;
}

Scene Scene::from_json(const nlohmann::json& j) {
    Scene scene;
    scene.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& bj : j.at("blobs")) {
        scene.blobs.push_back({bj.at("cx").get<double>(), bj.at("cy").get<double>(),
                               bj.at("amplitude").get<double>(), bj.at("radius").get<double>()});
    }
    return scene;
}

bool Scene::operator==(const Scene& other) const {
    if (seed != other.seed || blobs.size() != other.blobs.size()) return false;
    for (std::size_t i = 0; i < blobs.size(); ++i) {
        const Blob& a = blobs[i];
        const Blob& b = other.blobs[i];
        if (a.cx != b.cx || a.cy != b.cy || a.amplitude != b.amplitude ||
            a.radius != b.radius) {
            return false;
        }
    }
    return true;
}

Image render(const Scene& scene, MotorCommand pos, const WorldParams& params) {
    require(pos.x >= 0.0 && pos.x <= 1.0 && pos.y >= 0.0 && pos.y <= 1.0,
            "render: position out of bounds");
    require(params.image_width >= 1 && params.image_height >= 1,
            "render: image dimensions must be positive");
    require(params.window > 0.0, "render: window must be positive");
    Image img(params.image_width, params.image_height);
    const double x0 = pos.x - params.window / 2.0;
    const double y0 = pos.y - params.window / 2.0;
    for (std::size_t py = 0; py < params.image_height; ++py) {
        const double wy =
            y0 + (static_cast<double>(py) + 0.5) / static_cast<double>(params.image_height) *
                     params.window;
        for (std::size_t px = 0; px < params.image_width; ++px) {
            const double wx =
                x0 + (static_cast<double>(px) + 0.5) / static_cast<double>(params.image_width) *
                         params.window;
            double v = 0.0;
            for (const Blob& b : scene.blobs) {
                const double dx = wx - b.cx;
                const double dy = wy - b.cy;
                v += b.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * b.radius * b.radius));
            }
            img.at(px, py) = clamp01(v);
        }
    }
    return img;
}

std::vector<MotorCommand> trajectory(RobotState& state, MotorCommand target, double step) {
    require(target.x >= 0.0 && target.x <= 1.0 && target.y >= 0.0 && target.y <= 1.0,
            "trajectory: target out of bounds");
    require(step > 0.0, "trajectory: step must be positive");
    const double dx = target.x - state.position.x;
    const double dy = target.y - state.position.y;
    const double dist = std::sqrt(dx * dx + dy * dy);
    std::vector<MotorCommand> waypoints;
    if (dist < 1e-12) {
        waypoints.push_back(target);
        state.position = target;
        return waypoints;
    }
    // ceil with a small relief so an exact multiple of step does not gain
    // a spurious extra waypoint.
    const std::size_t count =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(dist / step - 1e-9)));
    waypoints.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
        const double along = std::min(static_cast<double>(i) * step, dist);
        const double frac = along / dist;
        waypoints.push_back({state.position.x + frac * dx, state.position.y + frac * dy});
    }
    waypoints.back() = target;
    state.position = target;
    return waypoints;
}

TestSet build_test_set(const Scene& scene, const WorldParams& params,
                       const SensoryEncoder& encoder, std::size_t n, std::uint64_t seed) {
    require(n >= 1, "build_test_set: need at least 1 sample");
    TestSet test;
    test.samples.reserve(n);
    RngStream rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        MotorCommand pos{rng.uniform(), rng.uniform()};
        test.samples.push_back({pos, encoder.encode(render(scene, pos, params))});
    }
    return test;
}

std::vector<Image> render_grid_corpus(const Scene& scene, const WorldParams& params,
                                      std::size_t grid_n) {
    require(grid_n >= 2, "render_grid_corpus: grid must be at least 2x2");
    std::vector<Image> corpus;
    corpus.reserve(grid_n * grid_n);
    const double denom = static_cast<double>(grid_n - 1);
    for (std::size_t gy = 0; gy < grid_n; ++gy) {
        for (std::size_t gx = 0; gx < grid_n; ++gx) {
            const MotorCommand pos{static_cast<double>(gx) / denom,
                                   static_cast<double>(gy) / denom};
            corpus.push_back(render(scene, pos, params));
        }
    }
    return corpus;
}

} // namespace pedyn
