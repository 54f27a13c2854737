// SPDX-License-Identifier: Apache-2.0
//
// bodyarray - body-induced perturbation of RF links received by a linear array.
// Common types, constants and the exception hierarchy.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace bodyarray {

inline constexpr const char* version = "0.1.0";

inline constexpr double speed_of_light = 299'792'458.0; // m/s
inline constexpr double pi = std::numbers::pi;

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Base for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (bad sizes, out-of-range angles).
class invalid_argument : public error {
public:
    using error::error;
};

// Layout is geometrically degenerate (target on an antenna, bad arccos domain...).
class geometry_error : public error {
public:
    using error::error;
};

// One or more configuration problems; all of them are listed in problems().
class validation_error : public error {
public:
    explicit validation_error(std::vector<std::string> problems)
        : error(join(problems)), problems_(std::move(problems)) {}

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out;
        for (const auto& s : items) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> problems_;
};

// Neumaier-compensated accumulator; works for double and std::complex<double>.
template <typename T>
class compensated_sum {
public:
    void add(const T& x) {
        if constexpr (std::is_same_v<T, double>) {
            add_component(sum_, comp_, x);
        } else {
            double re = sum_.real(), ce = comp_.real();
            double im = sum_.imag(), ci = comp_.imag();
            add_component(re, ce, x.real());
            add_component(im, ci, x.imag());
            sum_ = T(re, im);
            comp_ = T(ce, ci);
        }
    }
    T value() const { return sum_ + comp_; }

private:
    static void add_component(double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    T sum_{};
    T comp_{};
};

inline double db_from_power_ratio(double ratio) { return 10.0 * std::log10(ratio); }
inline double db_from_amplitude_ratio(double ratio) { return 20.0 * std::log10(ratio); }

inline double deg_to_rad(double deg) { return deg * pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / pi; }

} // namespace bodyarray
