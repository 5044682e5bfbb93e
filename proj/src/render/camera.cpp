#include "urbansim/render/camera.hpp"

#include <stdexcept>

namespace urbansim {

void Camera::validate() const {
    if (width <= 0 || height <= 0) throw std::invalid_argument("Camera: resolution must be positive");
    if (!(vertical_fov > 0.0 && vertical_fov < kPi)) throw std::invalid_argument("Camera: fov must lie in (0, pi)");
    const Vec3 d = look_at - position;
    if (!(length(d) > 0.0)) throw std::invalid_argument("Camera: look_at coincides with position");
    const Vec3 f = normalize(d);
    if (length(cross(f, {0.0, 0.0, 1.0})) < 1e-9) throw std::invalid_argument("Camera: view direction is vertical");
}

PinholeCamera::PinholeCamera(const Camera& camera) : camera_(camera) {
    camera.validate();
    forward_ = normalize(camera.look_at - camera.position);
    right_ = normalize(cross(forward_, {0.0, 0.0, 1.0}));
    up_ = cross(right_, forward_);
    half_height_ = std::tan(0.5 * camera.vertical_fov);
    half_width_ = half_height_ * static_cast<double>(camera.width) / static_cast<double>(camera.height);
}

Ray PinholeCamera::generate(double px, double py) const {
    const double sx = (2.0 * px / camera_.width - 1.0) * half_width_;
    const double sy = (1.0 - 2.0 * py / camera_.height) * half_height_;
    return {camera_.position, normalize(forward_ + sx * right_ + sy * up_)};
}

}  // namespace urbansim
