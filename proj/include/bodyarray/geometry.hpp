// SPDX-License-Identifier: Apache-2.0
//
// Link layout: transmitter, uniform linear receiving array orthogonal to the
// central line of sight, and the absorbing sheet that stands in for a body.
//
// Global frame: TX at tx_position (origin by default, at link height h),
// central LoS along +x, array axis along +y, z vertical.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "core.hpp"

namespace bodyarray {

struct ArraySpec {
    int half_count = 0;            // M; the array has 2M+1 elements m = -M..M
    double spacing = 0.0;          // d_a [m]
    double central_distance = 0.0; // d_0 [m], TX to RX_0 along the LoS

    int size() const noexcept { return 2 * half_count + 1; }
    // Position of element m in a length-size() vector.
    std::size_t slot(int m) const noexcept { return static_cast<std::size_t>(m + half_count); }
    int index_at(std::size_t slot) const noexcept { return static_cast<int>(slot) - half_count; }
};

struct Scene {
    double carrier_frequency = 0.0; // f_c [Hz]
    ArraySpec array;
    Vec3 tx_position = Vec3::Zero(); // z component is the link height h

    double wavelength() const noexcept { return speed_of_light / carrier_frequency; }
    double wavenumber() const noexcept { return 2.0 * pi / wavelength(); }
    double link_height() const noexcept { return tx_position.z(); }
};

struct TargetSheet {
    Vec2 barycenter = Vec2::Zero(); // (x, y) in the horizontal plane; vertical centre at h
    double half_width = 0.0;        // a_y
    double half_height = 0.0;       // a_z
    double rotation = 0.0;          // theta [rad] about the vertical axis; 0 = face orthogonal to LoS
};

struct LinkGeometry {
    std::vector<double> distances;   // d_m
    std::vector<Vec3> projections;   // O'_m
    std::vector<double> tx_to_projection; // d_1m
    std::vector<double> projection_to_rx; // d_2m
};

struct QuadratureNode {
    Vec3 position;
    double area;
};

// Midpoint-rule tiling of a target sheet.
struct QuadratureGrid {
    std::vector<QuadratureNode> nodes;
    Vec3 axis_u = Vec3::UnitY(); // horizontal in-plane axis of the sheet
    Vec3 axis_v = Vec3::UnitZ();
    double cell_u = 0.0; // cell size along axis_u [m]
    double cell_v = 0.0;
    int count_u = 0;
    int count_v = 0;

    double step() const noexcept { return std::max(cell_u, cell_v); }
    double total_area() const noexcept {
        compensated_sum<double> sum;
        for (const auto& n : nodes) sum.add(n.area);
        return sum.value();
    }
};

// Throws invalid_argument on the first violated invariant.
inline void validate(const Scene& scene) {
    if (!(scene.carrier_frequency > 0.0) || !std::isfinite(scene.carrier_frequency))
        throw invalid_argument("carrier frequency must be positive");
    if (scene.array.half_count < 0)
        throw invalid_argument("array half count M must be >= 0");
    if (!(scene.array.spacing > 0.0))
        throw invalid_argument("array spacing d_a must be positive");
    if (!(scene.array.central_distance > 0.0))
        throw invalid_argument("central distance d_0 must be positive");
}

inline void validate(const TargetSheet& target) {
    if (!(target.half_width >= 0.0) || !(target.half_height >= 0.0))
        throw invalid_argument("target half sizes must be non-negative");
    if (!std::isfinite(target.rotation))
        throw invalid_argument("target rotation must be finite");
}

// d_a <= lambda/4 breaks the no-mutual-coupling assumption of the model.
inline bool spacing_violates_coupling_limit(const Scene& scene) {
    return scene.array.spacing <= scene.wavelength() / 4.0 * (1.0 + 1e-12);
}

inline Scene make_scene(double carrier_frequency, int half_count, double spacing,
                        double central_distance, double link_height) {
    Scene scene;
    scene.carrier_frequency = carrier_frequency;
    scene.array = ArraySpec{half_count, spacing, central_distance};
    scene.tx_position = Vec3(0.0, 0.0, link_height);
    validate(scene);
    return scene;
}

inline Vec3 antenna_position(const Scene& scene, int m) {
    return scene.tx_position + Vec3(scene.array.central_distance, m * scene.array.spacing, 0.0);
}

// Positions of RX_-M .. RX_M.
inline std::vector<Vec3> antenna_positions(const Scene& scene) {
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(scene.array.size()));
    for (int m = -scene.array.half_count; m <= scene.array.half_count; ++m)
        out.push_back(antenna_position(scene, m));
    return out;
}

inline double antenna_distance(const Scene& scene, int m) {
    return std::hypot(scene.array.central_distance, m * scene.array.spacing);
}

// Barycenter of the sheet in 3-D; the sheet is vertically centred on the link plane.
inline Vec3 barycenter_3d(const Scene& scene, const TargetSheet& target) {
    return Vec3(target.barycenter.x(), target.barycenter.y(), scene.link_height());
}

inline Vec3 sheet_axis_u(const TargetSheet& target) {
    return Vec3(-std::sin(target.rotation), std::cos(target.rotation), 0.0);
}

inline LinkGeometry link_geometry(const Scene& scene, const TargetSheet& target) {
    validate(scene);
    const Vec3 p = barycenter_3d(scene, target);
    const Vec3& tx = scene.tx_position;
    constexpr double coincidence = 1e-12;
    if ((p - tx).norm() < coincidence)
        throw geometry_error("degenerate geometry: target barycenter coincides with TX");

    LinkGeometry g;
    const auto n = static_cast<std::size_t>(scene.array.size());
    g.distances.reserve(n);
    g.projections.reserve(n);
    g.tx_to_projection.reserve(n);
    g.projection_to_rx.reserve(n);
    for (int m = -scene.array.half_count; m <= scene.array.half_count; ++m) {
        const Vec3 rx = antenna_position(scene, m);
        if ((p - rx).norm() < coincidence)
            throw geometry_error("degenerate geometry: target barycenter coincides with RX_" +
                                 std::to_string(m));
        const Vec3 link = rx - tx;
        const double length = link.norm();
        const double t = std::clamp((p - tx).dot(link) / (length * length), 0.0, 1.0);
        const Vec3 proj = tx + t * link;
        g.distances.push_back(length);
        g.projections.push_back(proj);
        g.tx_to_projection.push_back(t * length);
        g.projection_to_rx.push_back((1.0 - t) * length);
    }
    return g;
}

namespace detail {

inline int cell_count(double extent, double step) {
    if (extent <= 0.0) return 0;
    // the small slack keeps exact tilings (extent an integer multiple of step) exact
    return std::max(1, static_cast<int>(std::ceil(extent / step - 1e-9)));
}

} // namespace detail

// Uniform midpoint tiling of the sheet. The actual cell size never exceeds
// min(step_hint, lambda/10). A sheet with a zero half size yields no nodes.
inline QuadratureGrid discretize_sheet(const TargetSheet& target, const Scene& scene,
                                       double step_hint) {
    if (!(step_hint > 0.0)) throw invalid_argument("quadrature step must be positive");
    validate(target);
    const double step = std::min(step_hint, scene.wavelength() / 10.0);

    QuadratureGrid grid;
    grid.axis_u = sheet_axis_u(target);
    grid.axis_v = Vec3::UnitZ();
    grid.count_u = detail::cell_count(2.0 * target.half_width, step);
    grid.count_v = detail::cell_count(2.0 * target.half_height, step);
    if (grid.count_u == 0 || grid.count_v == 0) return grid;

    grid.cell_u = 2.0 * target.half_width / grid.count_u;
    grid.cell_v = 2.0 * target.half_height / grid.count_v;
    const double area = grid.cell_u * grid.cell_v;
    const Vec3 centre = barycenter_3d(scene, target);

    grid.nodes.reserve(static_cast<std::size_t>(grid.count_u) * grid.count_v);
    for (int i = 0; i < grid.count_u; ++i) {
        const double u = -target.half_width + (i + 0.5) * grid.cell_u;
        for (int k = 0; k < grid.count_v; ++k) {
            const double v = -target.half_height + (k + 0.5) * grid.cell_v;
            grid.nodes.push_back({centre + u * grid.axis_u + v * grid.axis_v, area});
        }
    }
    return grid;
}

} // namespace bodyarray
