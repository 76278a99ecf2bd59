#pragma once

// Closed forms used as independent references by the tests.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "schauder/operator_spec.hpp"

namespace oracle {

/// (1 - (z/R)^2)^4 on |z| < R: C^3 with compact support.
struct PolyBump {
    double R = 1.0;
    double c = 0.0;

    double s(double z) const { return 1.0 - (z - c) * (z - c) / (R * R); }
    double v(double z) const { return std::abs(z - c) < R ? std::pow(s(z), 4) : 0.0; }
    double d1(double z) const {
        if (std::abs(z - c) >= R) return 0.0;
        return 4.0 * std::pow(s(z), 3) * (-2.0 * (z - c) / (R * R));
    }
    double d2(double z) const {
        if (std::abs(z - c) >= R) return 0.0;
        const double q = 2.0 * (z - c) / (R * R);
        return 12.0 * s(z) * s(z) * q * q - 8.0 * std::pow(s(z), 3) / (R * R);
    }
};

/// Backward heat kernel (4 pi tau)^{-1/2} exp(-x^2 / (4 tau)) with tau = t* - t.
struct HeatKernel1d {
    double t_star = 0.0;

    double tau(double t) const { return t_star - t; }
    double v(double t, double x) const {
        const double s = tau(t);
        return std::exp(-x * x / (4.0 * s)) / std::sqrt(4.0 * std::numbers::pi * s);
    }
    double xx(double t, double x) const {
        const double s = tau(t);
        return v(t, x) * (x * x / (4.0 * s * s) - 1.0 / (2.0 * s));
    }
    /// u_t = -u_xx.
    double t(double t, double x) const { return -xx(t, x); }
};

inline schauder::OperatorSpec spec_from(int d, std::vector<std::vector<std::string>> a, std::vector<std::string> b,
                                        std::string c, std::string f, double T, double S, double alpha = 0.5,
                                        std::vector<double> breaks = {}) {
    schauder::OperatorText text;
    text.d = d;
    text.a = std::move(a);
    text.b = std::move(b);
    text.c = std::move(c);
    text.f = std::move(f);
    text.T = T;
    text.S = S;
    text.alpha = alpha;
    text.t_breakpoints = std::move(breaks);
    return schauder::build_spec(text);
}

inline std::vector<std::vector<std::string>> identity_a(int d) {
    std::vector<std::vector<std::string>> a(static_cast<std::size_t>(d), std::vector<std::string>(static_cast<std::size_t>(d), "0"));
    for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = "1";
    return a;
}

}  // namespace oracle
