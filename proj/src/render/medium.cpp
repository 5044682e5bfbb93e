#include "urbansim/render/medium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace urbansim {

void Medium::validate() const {
    if (!(scattering_coefficient >= 0.0) || !(absorption_coefficient >= 0.0) || !std::isfinite(extinction()))
        throw std::invalid_argument("Medium: coefficients must be finite and non-negative");
    if (!(anisotropy > -1.0 && anisotropy < 1.0)) throw std::invalid_argument("Medium: anisotropy must lie in (-1, 1)");
    if (!(top_height > 0.0)) throw std::invalid_argument("Medium: top_height must be positive");
}

std::pair<double, double> slab_interval(const Medium& medium, const Ray& ray, double tmax) {
    double t0 = ray.tmin, t1 = tmax;
    const double oz = ray.origin.z, dz = ray.direction.z;
    if (dz == 0.0) {
        if (oz < 0.0 || oz > medium.top_height) return {0.0, 0.0};
    } else {
        double a = (0.0 - oz) / dz, b = (medium.top_height - oz) / dz;
        if (a > b) std::swap(a, b);
        t0 = std::max(t0, a);
        t1 = std::min(t1, b);
    }
    if (!(t0 < t1)) return {0.0, 0.0};
    return {t0, t1};
}

double transmittance(const Medium& medium, const Ray& ray, double tmax) {
    if (!medium.active()) return 1.0;
    const auto [t0, t1] = slab_interval(medium, ray, tmax);
    if (!(t0 < t1)) return 1.0;
    return std::exp(-medium.extinction() * (t1 - t0));
}

double hg_phase(double cos_theta, double g) {
    const double denom = 1.0 + g * g - 2.0 * g * cos_theta;
    return (1.0 - g * g) / (4.0 * kPi * denom * std::sqrt(denom));
}

Vec3 sample_hg(Vec3 dir, double g, double u1, double u2) {
    double cos_theta;
    if (std::abs(g) < 1e-3) {
        cos_theta = 1.0 - 2.0 * u1;
    } else {
        const double s = (1.0 - g * g) / (1.0 - g + 2.0 * g * u1);
        cos_theta = (1.0 + g * g - s * s) / (2.0 * g);
    }
    cos_theta = std::clamp(cos_theta, -1.0, 1.0);
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    const double phi = kTwoPi * u2;
    return normalize(Frame(dir).to_world({sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta}));
}

}  // namespace urbansim
