#pragma once

#include <limits>

#include "urbansim/core/math.hpp"

namespace urbansim {

struct Ray {
    Vec3 origin;
    Vec3 direction;  ///< unit length
    double tmin = 0.0;
    double tmax = std::numeric_limits<double>::infinity();

    Vec3 at(double t) const { return origin + t * direction; }
};

/// Pinhole camera, z-up world.
struct Camera {
    Vec3 position;
    Vec3 look_at;
    double vertical_fov = 1.0471975511965976;  ///< radians, 60 degrees
    int width = 128;
    int height = 128;

    /// Throws std::invalid_argument for a non-positive resolution, fov outside
    /// (0, pi), coincident position/look_at, or a vertical view direction.
    void validate() const;
};

class PinholeCamera {
public:
    explicit PinholeCamera(const Camera& camera);

    /// Ray through image-plane point (px, py) in pixel units, (0, 0) at the
    /// top-left corner; pixel centers sit at half-integers.
    Ray generate(double px, double py) const;

    const Camera& params() const { return camera_; }

private:
    Camera camera_;
    Vec3 forward_, right_, up_;
    double half_height_ = 0.0;
    double half_width_ = 0.0;
};

}  // namespace urbansim
