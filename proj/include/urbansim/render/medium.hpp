#pragma once

#include <utility>

#include "urbansim/core/math.hpp"
#include "urbansim/render/camera.hpp"

namespace urbansim {

/// Homogeneous fog filling the horizontal slab 0 <= z <= top_height.
struct Medium {
    double scattering_coefficient = 0.0;  ///< 1/m
    double absorption_coefficient = 0.0;  ///< 1/m
    double anisotropy = 0.0;              ///< Henyey-Greenstein g in (-1, 1)
    bool enabled = false;
    double top_height = 60.0;  ///< m

    double extinction() const { return scattering_coefficient + absorption_coefficient; }
    bool active() const { return enabled && extinction() > 0.0; }
    void validate() const;
};

/// Parametric interval of `ray` inside the slab, clipped to [ray.tmin, tmax].
/// Returns an empty interval (first >= second) when the ray misses it.
std::pair<double, double> slab_interval(const Medium& medium, const Ray& ray, double tmax);

/// exp(-sigma_t * length inside the slab) over ray parameters [tmin, tmax].
double transmittance(const Medium& medium, const Ray& ray, double tmax);

/// Henyey-Greenstein phase function; cos_theta between the incoming and
/// outgoing propagation directions.
double hg_phase(double cos_theta, double g);

/// Samples an outgoing propagation direction for light travelling along `dir`.
Vec3 sample_hg(Vec3 dir, double g, double u1, double u2);

}  // namespace urbansim
