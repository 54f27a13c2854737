// SPDX-License-Identifier: Apache-2.0
//
// Reference computations used to cross-check the numeric core. Nothing in
// this header calls into geometry/em_model/sensing arithmetic: antenna
// positions, sheet tiling, quadrature and transforms are all recoded here.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "core.hpp"
#include "geometry.hpp" // Scene / TargetSheet data types only

namespace bodyarray::oracles {

// Fresnel integrals C(x) = int_0^x cos(pi t^2 / 2) dt, S(x) = int_0^x sin(pi t^2 / 2) dt.
// Power series below |x| = 1.5, continued fraction (modified Lentz) above.
inline std::pair<double, double> fresnel_integrals(double x) {
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;
    constexpr int max_iter = 200;
    const double ax = std::abs(x);
    double c = 0.0, s = 0.0;

    if (ax < 1e-150) {
        c = ax;
    } else if (ax <= 1.5) {
        const double z = 0.5 * pi * ax * ax; // C = sum (-1)^n z^{2n} x/((2n)!(4n+1)), S likewise
        double term = ax;                    // x z^k / k!
        for (int k = 0; k < max_iter; ++k) {
            const double contrib = term / (2 * k + 1);
            const int phase = k % 4; // +C, +S, -C, -S
            if (phase == 0) c += contrib;
            else if (phase == 1) s += contrib;
            else if (phase == 2) c -= contrib;
            else s -= contrib;
            if (std::abs(contrib) < eps * std::max(std::abs(c), std::abs(s))) break;
            term *= z / (k + 1);
        }
    } else {
        const double pix2 = pi * ax * ax;
        cplx b(1.0, -pix2);
        cplx cc = 1.0 / tiny;
        cplx d = 1.0 / b;
        cplx h = d;
        int n = -1;
        for (int k = 2; k <= max_iter; ++k) {
            n += 2;
            const double a = -static_cast<double>(n) * (n + 1);
            b += 4.0;
            d = 1.0 / (a * d + b);
            cc = b + a / cc;
            const cplx del = cc * d;
            h *= del;
            if (std::abs(del - 1.0) < eps) break;
        }
        h *= cplx(ax, -ax);
        const cplx cs = cplx(0.5, 0.5) * (1.0 - std::polar(1.0, 0.5 * pix2) * h);
        c = cs.real();
        s = cs.imag();
    }
    if (x < 0.0) {
        c = -c;
        s = -s;
    }
    return {c, s};
}

// Field behind an absorbing half-plane relative to free space.
inline double knife_edge_field_magnitude(double nu) {
    const auto [c, s] = fresnel_integrals(nu);
    return 0.5 * std::abs(cplx(1.0 - c - s, c - s));
}

inline double knife_edge_attenuation(double nu) {
    return -20.0 * std::log10(knife_edge_field_magnitude(nu));
}

// Diffraction parameter of an edge at signed transverse offset `edge_offset`
// from a link split into d1 (TX side) and d2 (RX side). Positive offsets put
// the line of sight in shadow.
inline double knife_edge_nu(double edge_offset, double d1, double d2, double wavelength) {
    return edge_offset * std::sqrt(2.0 * (d1 + d2) / (wavelength * d1 * d2));
}

// A sheet whose upper (+y) vertical edge sits at `edge_offset` from the central
// LoS, standing at distance d1 from TX. `half_height` and `depth` should be
// many Fresnel radii for the half-plane limit to hold.
inline TargetSheet knife_edge_sheet(double d1, double edge_offset, double depth,
                                    double half_height) {
    TargetSheet t;
    t.barycenter = Vec2(d1, edge_offset - 0.5 * depth);
    t.half_width = 0.5 * depth;
    t.half_height = half_height;
    t.rotation = 0.0;
    return t;
}

inline double fresnel_radius(double d1, double d2, double wavelength) {
    return std::sqrt(wavelength * d1 * d2 / (d1 + d2));
}

// The same surface integral as the model's field ratio, evaluated with a
// 2x2 Gauss-Legendre rule on cells of lambda/40 and plain summation.
inline cplx dense_quadrature_field_ratio(const Scene& scene, const TargetSheet& target, int m) {
    if (std::abs(m) > scene.array.half_count) throw invalid_argument("antenna index out of range");
    const double lambda = speed_of_light / scene.carrier_frequency;
    const double k = 2.0 * pi / lambda;
    const double tx[3] = {scene.tx_position.x(), scene.tx_position.y(), scene.tx_position.z()};
    const double rx[3] = {tx[0] + scene.array.central_distance, tx[1] + m * scene.array.spacing,
                          tx[2]};
    const double dm = std::sqrt((rx[0] - tx[0]) * (rx[0] - tx[0]) + (rx[1] - tx[1]) * (rx[1] - tx[1]));
    if (target.half_width <= 0.0 || target.half_height <= 0.0) return {1.0, 0.0};

    const double cell = lambda / 40.0;
    const int nu = static_cast<int>(std::ceil(2.0 * target.half_width / cell));
    const int nv = static_cast<int>(std::ceil(2.0 * target.half_height / cell));
    const double hu = 2.0 * target.half_width / nu;
    const double hv = 2.0 * target.half_height / nv;
    const double gl = 0.5 / std::sqrt(3.0); // Gauss points at centre +- gl * h
    const double ux = -std::sin(target.rotation), uy = std::cos(target.rotation);
    const double px = target.barycenter.x(), py = target.barycenter.y(), pz = tx[2];

    cplx sum = 0.0;
    for (int i = 0; i < nu; ++i) {
        const double uc = -target.half_width + (i + 0.5) * hu;
        for (int j = 0; j < nv; ++j) {
            const double vc = -target.half_height + (j + 0.5) * hv;
            for (int a = -1; a <= 1; a += 2) {
                const double u = uc + a * gl * hu;
                for (int b = -1; b <= 1; b += 2) {
                    const double v = vc + b * gl * hv;
                    const double x = px + u * ux, y = py + u * uy, z = pz + v;
                    const double r1 = std::sqrt((x - tx[0]) * (x - tx[0]) + (y - tx[1]) * (y - tx[1]) +
                                                (z - tx[2]) * (z - tx[2]));
                    const double r2 = std::sqrt((x - rx[0]) * (x - rx[0]) + (y - rx[1]) * (y - rx[1]) +
                                                (z - rx[2]) * (z - rx[2]));
                    if (r1 == 0.0 || r2 == 0.0) throw geometry_error("target intersects antenna");
                    const double ph = k * (r1 + r2 - dm);
                    sum += cplx(std::cos(ph), -std::sin(ph)) * (0.25 * hu * hv / (r1 * r2));
                }
            }
        }
    }
    return cplx(1.0, 0.0) - cplx(0.0, dm / lambda) * sum;
}

// O(N^2) transform: Y_k = sum_m x_m exp(-j 2 pi k m / n_fft), x indexed m = -M..M.
inline CVector naive_dft(const CVector& x, int n_fft) {
    const auto n = static_cast<int>(x.size());
    if (n_fft < n) throw invalid_argument("n_fft must be >= input length");
    const int half = n / 2;
    CVector out(n_fft);
    for (int k = 0; k < n_fft; ++k) {
        cplx acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const int m = i - half;
            const double ang = -2.0 * pi * static_cast<double>(k) * m / n_fft;
            acc += x(i) * cplx(std::cos(ang), std::sin(ang));
        }
        out(k) = acc;
    }
    return out;
}

// Closed-form uniform-weight array factor of a (2M+1)-element planar ULA:
// sin(N x) / (N sin x), x = pi d_a cos(gamma) / lambda. The removable
// singularities (sin x = 0) evaluate to 1 for odd N.
inline double dirichlet_array_factor(int half_count, double spacing, double wavelength,
                                     double gamma) {
    const int n = 2 * half_count + 1;
    const double x = pi * spacing * std::cos(gamma) / wavelength;
    const double den = std::sin(x);
    if (std::abs(den) < 1e-12) return 1.0;
    return std::sin(n * x) / (n * den);
}

} // namespace bodyarray::oracles
