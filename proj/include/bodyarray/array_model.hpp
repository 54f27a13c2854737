// SPDX-License-Identifier: Apache-2.0
//
// Steering vectors (planar and spherical-wavefront), beamforming weights,
// array factor and main-lobe width of the uniform linear array.

#pragma once

#include <cmath>
#include <string>

#include "core.hpp"

namespace bodyarray {

enum class SteeringKind { planar, near_field };

struct SteeringVector {
    CVector elements; // m = -M..M
    double doa = 0.0; // gamma [rad], measured from the array axis
    SteeringKind kind = SteeringKind::planar;
};

struct BeamWeights {
    CVector w; // m = -M..M
};

namespace detail {

inline void check_doa(double gamma) {
    if (!(gamma > 0.0 && gamma < pi))
        throw invalid_argument("direction of arrival must lie in (0, pi)");
}

inline void check_array(int half_count, double spacing, double wavelength) {
    if (half_count < 0) throw invalid_argument("array half count M must be >= 0");
    if (!(spacing > 0.0)) throw invalid_argument("array spacing must be positive");
    if (!(wavelength > 0.0)) throw invalid_argument("wavelength must be positive");
}

} // namespace detail

// Far-field steering vector: element m = exp(+j m k d_a cos(gamma)).
inline SteeringVector planar_steering(int half_count, double spacing, double wavelength,
                                      double gamma) {
    detail::check_array(half_count, spacing, wavelength);
    detail::check_doa(gamma);
    const double psi = 2.0 * pi / wavelength * spacing * std::cos(gamma);
    SteeringVector a{CVector(2 * half_count + 1), gamma, SteeringKind::planar};
    for (int m = -half_count; m <= half_count; ++m)
        a.elements(m + half_count) = std::polar(1.0, m * psi);
    return a;
}

// Angle between the LoS of element m and the array axis when the central
// element sees the wavefront at gamma. phi_0 == gamma.
inline double element_los_angle(int m, double spacing, double central_distance, double gamma) {
    if (m == 0) return gamma;
    const double dm = std::hypot(central_distance, m * spacing);
    double arg = central_distance / dm * std::cos(gamma) - m * spacing / dm;
    if (std::abs(arg) > 1.0) {
        if (std::abs(arg) - 1.0 > 1e-12)
            throw geometry_error("invalid near-field geometry: arccos argument " +
                                 std::to_string(arg) + " for element " + std::to_string(m));
        arg = std::copysign(1.0, arg);
    }
    return std::acos(arg);
}

// Spherical-wavefront steering vector for an array at distance d_0:
//   a_m = (d_0/d_m) exp(+j m k d_a cos((gamma+phi_m)/2) / cos((gamma-phi_m)/2))
inline SteeringVector nearfield_steering(int half_count, double spacing, double central_distance,
                                         double wavelength, double gamma) {
    detail::check_array(half_count, spacing, wavelength);
    detail::check_doa(gamma);
    if (!(central_distance > 0.0)) throw invalid_argument("central distance must be positive");
    const double k = 2.0 * pi / wavelength;
    SteeringVector a{CVector(2 * half_count + 1), gamma, SteeringKind::near_field};
    for (int m = -half_count; m <= half_count; ++m) {
        const double dm = std::hypot(central_distance, m * spacing);
        const double phi = element_los_angle(m, spacing, central_distance, gamma);
        const double ratio = std::cos(0.5 * (gamma + phi)) / std::cos(0.5 * (gamma - phi));
        a.elements(m + half_count) = std::polar(central_distance / dm, m * k * spacing * ratio);
    }
    return a;
}

inline BeamWeights uniform_weights(int half_count) {
    if (half_count < 0) throw invalid_argument("array half count M must be >= 0");
    const int n = 2 * half_count + 1;
    return BeamWeights{CVector::Constant(n, cplx(1.0 / n, 0.0))};
}

// F_a = w^T a (plain transpose, no conjugation).
inline cplx array_factor(const BeamWeights& weights, const SteeringVector& steering) {
    if (weights.w.size() != steering.elements.size())
        throw invalid_argument("array factor: weight and steering lengths differ");
    return (weights.w.transpose() * steering.elements)(0);
}

struct LobeWidth {
    double literal = 0.0;         // 2 |arccos(lambda / L)|
    double about_broadside = 0.0; // 2 |arccos(lambda / L) - pi/2|
    double approximate = 0.0;     // 2 lambda / L
};

// First-lobe width of a uniform array of length L = (2M+1) d_a.
inline LobeWidth first_lobe_width(int half_count, double spacing, double wavelength) {
    detail::check_array(half_count, spacing, wavelength);
    const double length = (2 * half_count + 1) * spacing;
    double x = wavelength / length;
    if (x > 1.0) {
        if (x - 1.0 > 1e-12) throw invalid_argument("array too short: (2M+1) d_a < lambda");
        x = 1.0;
    }
    const double angle = std::acos(x);
    return {2.0 * std::abs(angle), 2.0 * std::abs(angle - 0.5 * pi), 2.0 * x};
}

inline const char* to_string(SteeringKind kind) {
    return kind == SteeringKind::planar ? "planar" : "near_field";
}

} // namespace bodyarray
