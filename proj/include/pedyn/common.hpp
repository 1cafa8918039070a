#ifndef PEDYN_COMMON_HPP
#define PEDYN_COMMON_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pedyn {

/// Dense real vector; sensory states, network activations, codebook rows.
using Vec = std::vector<double>;

/// Absolute target position of the two motors, normalized to [0,1]^2.
struct MotorCommand {
    double x = 0.0;
    double y = 0.0;
};

/// One paired observation: the commanded motor position and the encoded
/// sensory state captured there.
struct VisuoMotorSample {
    MotorCommand motor;
    Vec sensory;
};

/// Row-major grayscale image, intensities in [0,1].
struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    Vec pixels;

    Image() = default;
    Image(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h, 0.0) {}

    double& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
    double at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
    std::size_t size() const { return pixels.size(); }
};

inline double clamp01(double v) {
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

inline MotorCommand clamp01(MotorCommand c) {
    return {clamp01(c.x), clamp01(c.y)};
}

inline void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

} // namespace pedyn

#endif // PEDYN_COMMON_HPP
