// SPDX-License-Identifier: Apache-2.0
//
// Received-signal model of the array with and without the target, beamformed
// power, mean excess attenuation and the FFT-based excess-attenuation-vs-DoA
// spectrum.
//
// The free-space field of the central element E_R(0) defaults to 1; every
// reported quantity is a ratio in which it cancels.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "array_model.hpp"
#include "core.hpp"
#include "em_model.hpp"
#include "geometry.hpp"

namespace bodyarray {

enum class Occupancy { empty = 0, occupied = 1 };

struct Snapshot {
    CVector r; // m = -M..M
    Occupancy occupancy = Occupancy::empty;
    double noise_std = 0.0; // sigma_n; total complex variance sigma_n^2
    std::optional<std::uint64_t> seed;
};

struct DoaSpectrum {
    std::vector<double> gamma;                // [rad], strictly increasing in (0, pi)
    std::vector<double> excess_attenuation_db; // 20 log10(|Y_empty| / |Y_occupied|)
    std::vector<double> empty_response_db;     // 20 log10 |Y_empty|
    std::vector<double> occupied_response_db;  // 20 log10 |Y_occupied|
    int n_fft = 0;
};

inline constexpr int default_n_fft = 257;

// Steering vector of the empty scene: the spherical wavefront from TX seen
// at broadside. Equals the vector of free-space ratios E_R(m)/E_R(0).
inline CVector reference_steering(const Scene& scene) {
    return nearfield_steering(scene.array.half_count, scene.array.spacing,
                              scene.array.central_distance, scene.wavelength(), 0.5 * pi)
        .elements;
}

// Circularly-symmetric complex Gaussian noise, covariance sigma^2 I.
inline CVector complex_awgn(Eigen::Index n, double noise_std, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, noise_std / std::sqrt(2.0));
    CVector out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        out(i) = cplx(re, im);
    }
    return out;
}

inline Snapshot snapshot_from_ratios(const Scene& scene, const FieldRatioVector* ratios,
                                     Occupancy occupancy, double noise_std,
                                     std::optional<std::uint64_t> seed = std::nullopt,
                                     cplx reference_field = 1.0) {
    if (noise_std < 0.0 || !std::isfinite(noise_std))
        throw invalid_argument("noise standard deviation must be >= 0");
    const CVector a = reference_steering(scene);
    Snapshot s;
    s.occupancy = occupancy;
    s.noise_std = noise_std;
    s.seed = seed;
    if (occupancy == Occupancy::occupied) {
        if (ratios == nullptr) throw invalid_argument("occupied snapshot requires a target");
        if (ratios->size() != a.size())
            throw invalid_argument("field ratio vector length does not match the array");
        s.r = reference_field * a.cwiseProduct(*ratios);
    } else {
        s.r = reference_field * a;
    }
    if (noise_std > 0.0) {
        const std::uint64_t used = seed ? *seed : std::random_device{}();
        s.r += complex_awgn(s.r.size(), noise_std, used);
    }
    return s;
}

inline Snapshot snapshot(const Scene& scene, const std::optional<TargetSheet>& target,
                         Occupancy occupancy, double noise_std,
                         std::optional<std::uint64_t> seed = std::nullopt,
                         const QuadratureOptions& quadrature = {}) {
    if (occupancy == Occupancy::occupied && !target)
        throw invalid_argument("occupied snapshot requires a target");
    if (occupancy == Occupancy::empty)
        return snapshot_from_ratios(scene, nullptr, occupancy, noise_std, seed);
    const FieldRatioVector ratios = compute_field_ratios(scene, *target, quadrature);
    return snapshot_from_ratios(scene, &ratios, occupancy, noise_std, seed);
}

// R_E = E_r E_r^H.
inline CMatrix field_autocorrelation(const FieldRatioVector& ratios) {
    return ratios * ratios.adjoint();
}

// y = w^H r.
inline cplx beamform(const BeamWeights& weights, const CVector& r) {
    if (weights.w.size() != r.size()) throw invalid_argument("beamform: dimension mismatch");
    return weights.w.dot(r); // Eigen's dot conjugates the left operand
}

inline cplx beamform(const BeamWeights& weights, const Snapshot& s) {
    return beamform(weights, s.r);
}

// P_y = w^H R w.
inline double beamformed_power(const BeamWeights& weights, const CMatrix& covariance) {
    if (covariance.rows() != weights.w.size() || covariance.cols() != weights.w.size())
        throw invalid_argument("beamformed power: dimension mismatch");
    return (weights.w.adjoint() * covariance * weights.w)(0).real();
}

// Noise-free A_T = (w^H a a^H w) / (w^H diag(a) R_E diag(a)^H w), in dB.
inline double mean_excess_attenuation(const BeamWeights& weights, const Scene& scene,
                                      const FieldRatioVector& ratios) {
    const CVector a = reference_steering(scene);
    if (weights.w.size() != a.size() || ratios.size() != a.size())
        throw invalid_argument("mean excess attenuation: dimension mismatch");
    const CMatrix empty = a * a.adjoint();
    const CMatrix occupied =
        a.asDiagonal() * field_autocorrelation(ratios) * a.conjugate().asDiagonal();
    const double num = beamformed_power(weights, empty);
    const double den = beamformed_power(weights, occupied);
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return db_from_power_ratio(num / den);
}

inline double mean_excess_attenuation(const BeamWeights& weights, const Scene& scene,
                                      const TargetSheet& target,
                                      const QuadratureOptions& quadrature = {}) {
    return mean_excess_attenuation(weights, scene, compute_field_ratios(scene, target, quadrature));
}

// Normalised spatial frequency of FFT bin k, wrapped to [-1/2, 1/2).
inline double bin_frequency(int k, int n_fft) {
    const double f = static_cast<double>(k) / n_fft;
    return f >= 0.5 ? f - 1.0 : f;
}

// Y(f_k) = sum_m r_m exp(-j 2 pi f_k m) for k = 0..n_fft-1, with r indexed
// m = -M..M. Element m is placed at FFT position m mod n_fft.
inline CVector spatial_dft(const CVector& centered, int n_fft) {
    const auto n = static_cast<int>(centered.size());
    if (n % 2 == 0) throw invalid_argument("spatial DFT expects an odd-length centred vector");
    if (n_fft < n) throw invalid_argument("n_fft must be >= 2M+1");
    const int half = n / 2;
    std::vector<cplx> padded(static_cast<std::size_t>(n_fft), cplx{});
    for (int m = -half; m <= half; ++m)
        padded[static_cast<std::size_t>((m + n_fft) % n_fft)] = centered(m + half);
    std::vector<cplx> out;
    Eigen::FFT<double> fft;
    fft.fwd(out, padded);
    return Eigen::Map<const CVector>(out.data(), n_fft);
}

inline DoaSpectrum doa_attenuation_spectrum(const Scene& scene, const FieldRatioVector& ratios,
                                            int n_fft = default_n_fft,
                                            cplx reference_field = 1.0) {
    if (n_fft < scene.array.size()) throw invalid_argument("n_fft must be >= 2M+1");
    const Snapshot empty = snapshot_from_ratios(scene, nullptr, Occupancy::empty, 0.0,
                                                std::nullopt, reference_field);
    const Snapshot occupied = snapshot_from_ratios(scene, &ratios, Occupancy::occupied, 0.0,
                                                   std::nullopt, reference_field);
    const CVector y0 = spatial_dft(empty.r, n_fft);
    const CVector y1 = spatial_dft(occupied.r, n_fft);

    // gamma = arccos(lambda f / d_a) decreases with f: walk bins from the
    // highest frequency down so gamma comes out increasing.
    std::vector<int> bins(static_cast<std::size_t>(n_fft));
    for (int k = 0; k < n_fft; ++k) bins[static_cast<std::size_t>(k)] = k;
    std::sort(bins.begin(), bins.end(), [n_fft](int a, int b) {
        return bin_frequency(a, n_fft) > bin_frequency(b, n_fft);
    });

    const double scale = scene.wavelength() / scene.array.spacing;
    DoaSpectrum spec;
    spec.n_fft = n_fft;
    for (int k : bins) {
        const double c = scale * bin_frequency(k, n_fft);
        if (!(std::abs(c) < 1.0)) continue; // direction not reachable
        const double m0 = std::abs(y0(k));
        const double m1 = std::abs(y1(k));
        spec.gamma.push_back(std::acos(c));
        spec.empty_response_db.push_back(db_from_amplitude_ratio(m0));
        spec.occupied_response_db.push_back(db_from_amplitude_ratio(m1));
        spec.excess_attenuation_db.push_back(m1 == 0.0 ? std::numeric_limits<double>::infinity()
                                                       : db_from_amplitude_ratio(m0 / m1));
    }
    return spec;
}

inline DoaSpectrum doa_attenuation_spectrum(const Scene& scene, const TargetSheet& target,
                                            int n_fft = default_n_fft,
                                            const QuadratureOptions& quadrature = {}) {
    return doa_attenuation_spectrum(scene, compute_field_ratios(scene, target, quadrature), n_fft);
}

struct SpectrumPeak {
    double excess_db = 0.0;
    double gamma = 0.0;     // [rad]
    std::size_t index = 0;  // into DoaSpectrum::gamma
};

// Drop of the array response peak caused by the target,
// max|Y_empty| / max|Y_occupied| in dB, located at the occupied-response peak.
inline SpectrumPeak peak_excess_attenuation(const DoaSpectrum& spec) {
    if (spec.gamma.empty()) throw invalid_argument("empty DoA spectrum");
    const auto e = std::max_element(spec.empty_response_db.begin(), spec.empty_response_db.end());
    const auto o =
        std::max_element(spec.occupied_response_db.begin(), spec.occupied_response_db.end());
    const auto i = static_cast<std::size_t>(o - spec.occupied_response_db.begin());
    return {*e - *o, spec.gamma[i], i};
}

// Bin-wise excess attenuation at the main-lobe peak of the empty response.
inline SpectrumPeak main_lobe_excess_attenuation(const DoaSpectrum& spec) {
    if (spec.gamma.empty()) throw invalid_argument("empty DoA spectrum");
    const auto e = std::max_element(spec.empty_response_db.begin(), spec.empty_response_db.end());
    const auto i = static_cast<std::size_t>(e - spec.empty_response_db.begin());
    return {spec.excess_attenuation_db[i], spec.gamma[i], i};
}

// Diameter of the first Fresnel zone at the middle of the central link, sqrt(lambda d_0).
inline double fresnel_first_zone_minor_axis(const Scene& scene) {
    return std::sqrt(scene.wavelength() * scene.array.central_distance);
}

} // namespace bodyarray
