// SPDX-License-Identifier: Apache-2.0
//
// Diffraction field ratios of an absorbing sheet seen by each array element.
//
// For element m the ratio between the field with the sheet present and the
// free-space field is
//
//     E(m)/E_R(m) = 1 - j (d_m/lambda) * Int_S exp(-j k (r1 + r2 - d_m)) / (r1 r2) dS
//
// where r1, r2 are the distances of the surface element from TX and RX_m.
// The surface integral is evaluated on the midpoint grid of discretize_sheet().

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "core.hpp"
#include "geometry.hpp"

namespace bodyarray {

using FieldRatioVector = CVector; // ordered m = -M..M

enum class QuadratureRule {
    midpoint,            // plain f(centre) * dS
    curvature_corrected, // midpoint with per-cell linear-phase and phase-curvature correction
};

struct QuadratureOptions {
    double step_hint = 0.0; // [m]; <= 0 selects lambda/10
    QuadratureRule rule = QuadratureRule::curvature_corrected;
    bool converge = false;     // halve the step until the ratios settle
    double tolerance = 1e-4;   // max relative change between successive halvings
    int max_refinements = 6;
};

struct ConvergedRatios {
    FieldRatioVector ratios;
    double step = 0.0;        // cell size of the grid that produced `ratios`
    int refinements = 0;
    double last_change = 0.0; // relative change of the last halving
    bool converged = false;
};

namespace detail {

inline void check_antenna_index(const Scene& scene, int m) {
    if (std::abs(m) > scene.array.half_count)
        throw invalid_argument("antenna index " + std::to_string(m) + " outside -M..M");
}

inline double sinc(double x) {
    return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

// Average of exp(-j(g s + c s^2 / 2)) over a cell of width h centred at s = 0,
// to second order in h.
inline cplx cell_phase_factor(double gradient, double curvature, double h) {
    return {sinc(0.5 * gradient * h), -curvature * h * h / 24.0};
}

} // namespace detail

inline cplx field_ratio(const Scene& scene, int m, const QuadratureGrid& grid,
                        QuadratureRule rule = QuadratureRule::curvature_corrected) {
    detail::check_antenna_index(scene, m);
    const double lambda = scene.wavelength();
    const double k = scene.wavenumber();
    const Vec3& tx = scene.tx_position;
    const Vec3 rx = antenna_position(scene, m);
    const double dm = antenna_distance(scene, m);
    constexpr double contact = 1e-9;

    compensated_sum<cplx> sum;
    for (const auto& node : grid.nodes) {
        const Vec3 to_tx = node.position - tx;
        const Vec3 to_rx = node.position - rx;
        const double r1 = to_tx.norm();
        const double r2 = to_rx.norm();
        if (r1 < contact || r2 < contact)
            throw geometry_error("target intersects antenna");

        const double phase = k * (r1 + r2 - dm);
        cplx weight = node.area;
        if (rule == QuadratureRule::curvature_corrected) {
            const double t1u = to_tx.dot(grid.axis_u) / r1, t2u = to_rx.dot(grid.axis_u) / r2;
            const double t1v = to_tx.dot(grid.axis_v) / r1, t2v = to_rx.dot(grid.axis_v) / r2;
            const double gu = k * (t1u + t2u);
            const double gv = k * (t1v + t2v);
            const double cu = k * ((1.0 - t1u * t1u) / r1 + (1.0 - t2u * t2u) / r2);
            const double cv = k * ((1.0 - t1v * t1v) / r1 + (1.0 - t2v * t2v) / r2);
            weight *= detail::cell_phase_factor(gu, cu, grid.cell_u) *
                      detail::cell_phase_factor(gv, cv, grid.cell_v);
        }
        sum.add(std::polar(1.0 / (r1 * r2), -phase) * weight);
    }
    return 1.0 - cplx(0.0, dm / lambda) * sum.value();
}

// The grid must have been built from `target`.
inline cplx field_ratio(const Scene& scene, const TargetSheet& target, int m,
                        const QuadratureGrid& grid,
                        QuadratureRule rule = QuadratureRule::curvature_corrected) {
    validate(target);
    return field_ratio(scene, m, grid, rule);
}

// E_r for every element; the grid is shared by all antennas.
inline FieldRatioVector field_ratios(const Scene& scene, const QuadratureGrid& grid,
                                     QuadratureRule rule = QuadratureRule::curvature_corrected) {
    FieldRatioVector out(scene.array.size());
    for (int m = -scene.array.half_count; m <= scene.array.half_count; ++m)
        out(static_cast<Eigen::Index>(scene.array.slot(m))) = field_ratio(scene, m, grid, rule);
    return out;
}

inline double relative_change(const FieldRatioVector& prev, const FieldRatioVector& next) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < next.size(); ++i) {
        const double scale = std::max(std::abs(next(i)), std::numeric_limits<double>::min());
        worst = std::max(worst, std::abs(next(i) - prev(i)) / scale);
    }
    return worst;
}

inline double resolved_step(const Scene& scene, const QuadratureOptions& options) {
    const double cap = scene.wavelength() / 10.0;
    return options.step_hint > 0.0 ? std::min(options.step_hint, cap) : cap;
}

// Halves the grid step until successive ratio vectors differ by less than
// options.tolerance (relative, worst element) or max_refinements is hit.
inline ConvergedRatios converged_field_ratios(const Scene& scene, const TargetSheet& target,
                                              const QuadratureOptions& options = {}) {
    double step = resolved_step(scene, options);
    ConvergedRatios out;
    out.ratios = field_ratios(scene, discretize_sheet(target, scene, step), options.rule);
    out.step = step;
    for (int i = 0; i < options.max_refinements; ++i) {
        step *= 0.5;
        FieldRatioVector finer =
            field_ratios(scene, discretize_sheet(target, scene, step), options.rule);
        out.last_change = relative_change(out.ratios, finer);
        out.ratios = std::move(finer);
        out.step = step;
        out.refinements = i + 1;
        if (out.last_change < options.tolerance) {
            out.converged = true;
            break;
        }
    }
    return out;
}

// Entry point used by the sensing and runner layers.
inline FieldRatioVector compute_field_ratios(const Scene& scene, const TargetSheet& target,
                                             const QuadratureOptions& options = {}) {
    if (options.converge) return converged_field_ratios(scene, target, options).ratios;
    return field_ratios(scene, discretize_sheet(target, scene, resolved_step(scene, options)),
                        options.rule);
}

// E_R(m)/E_R(0) in free space.
inline cplx free_space_ratio(const Scene& scene, int m) {
    detail::check_antenna_index(scene, m);
    const double d0 = scene.array.central_distance;
    const double dm = antenna_distance(scene, m);
    return std::polar(d0 / dm, -scene.wavenumber() * (dm - d0));
}

// E(m)/E_R(0): free-space element ratio times the diffraction ratio.
inline cplx field_vs_central(const Scene& scene, int m, cplx field_ratio_m) {
    return free_space_ratio(scene, m) * field_ratio_m;
}

inline cplx field_vs_central(const Scene& scene, const TargetSheet& target, int m,
                             const QuadratureGrid& grid) {
    return field_vs_central(scene, m, field_ratio(scene, target, m, grid));
}

// Excess attenuation in dB; +infinity marks total blockage.
inline double excess_attenuation_db(cplx field_ratio_m) {
    const double mag = std::abs(field_ratio_m);
    if (mag == 0.0) return std::numeric_limits<double>::infinity();
    return -db_from_amplitude_ratio(mag);
}

inline double excess_attenuation_antenna(const Scene& scene, const TargetSheet& target, int m,
                                         const QuadratureGrid& grid) {
    return excess_attenuation_db(field_ratio(scene, target, m, grid));
}

inline bool is_total_blockage(double attenuation_db) {
    return std::isinf(attenuation_db) && attenuation_db > 0.0;
}

} // namespace bodyarray
