#pragma once

// Deliberately naive reference computations. They share no code with the
// library: fixed-step RK4 instead of the adaptive integrator, Gauss-Legendre
// instead of Gauss-Kronrod, second moments instead of classical trajectories.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double coth(double x) { return std::cosh(x) / std::sinh(x); }

struct Quintic {
    double wi, wf, tau;

    double w(double t) const {
        const double s = t / tau;
        return wi + (wf - wi) * s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
    }
};

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

inline double second_diff(const std::function<double(double)>& f, double x, double h) {
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

/// n-point Gauss-Legendre rule on [-1, 1]; nodes by Newton on P_n.
class GaussLegendre {
public:
    explicit GaussLegendre(int n) : x_(n), w_(n) {
        const double pi = std::acos(-1.0);
        for (int i = 0; i < n; ++i) {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x_[i] = z;
            w_[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }

    /// Composite rule over `panels` equal sub-intervals of [a, b].
    double integrate(const std::function<double(double)>& f, double a, double b, int panels = 8) const {
        double sum = 0.0;
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (p + 0.5) * h;
            for (std::size_t i = 0; i < x_.size(); ++i) sum += w_[i] * f(mid + 0.5 * h * x_[i]);
        }
        return 0.5 * h * sum;
    }

private:
    std::vector<double> x_, w_;
};

/// Q* from the second-moment equations of the driven oscillator, started in
/// the thermal state at w_i, integrated by classical RK4 with step dt.
inline double qstar_moments(const Quintic& r, double beta, double dt = 1e-4) {
    const double c = coth(0.5 * beta * r.wi);
    // m = (<x^2>, <xp + px>, <p^2>)
    std::array<double, 3> m{c / (2.0 * r.wi), 0.0, r.wi * c / 2.0};
    auto rhs = [&](double t, const std::array<double, 3>& y) {
        const double w2 = r.w(t) * r.w(t);
        return std::array<double, 3>{y[1], 2.0 * y[2] - 2.0 * w2 * y[0], -w2 * y[1]};
    };
    const int n = static_cast<int>(std::ceil(r.tau / dt));
    const double h = r.tau / n;
    for (int i = 0; i < n; ++i) {
        const double t = i * h;
        auto k1 = rhs(t, m);
        std::array<double, 3> y;
        for (int j = 0; j < 3; ++j) y[j] = m[j] + 0.5 * h * k1[j];
        auto k2 = rhs(t + 0.5 * h, y);
        for (int j = 0; j < 3; ++j) y[j] = m[j] + 0.5 * h * k2[j];
        auto k3 = rhs(t + 0.5 * h, y);
        for (int j = 0; j < 3; ++j) y[j] = m[j] + h * k3[j];
        auto k4 = rhs(t + h, y);
        for (int j = 0; j < 3; ++j) m[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    }
    const double energy = 0.5 * (m[2] + r.wf * r.wf * m[0]);
    return 2.0 * energy / (r.wf * c);
}

/// Mean energy of a thermal oscillator: (w/2) coth(beta w / 2).
inline double thermal_energy(double beta, double w) { return 0.5 * w * coth(0.5 * beta * w); }

}  // namespace oracle
