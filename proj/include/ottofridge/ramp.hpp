#pragma once

#include "ottofridge/special.hpp"

namespace ottofridge {

/// Protocol family of a frequency ramp. Only the quintic ships.
enum class RampShape { quintic };

/// Frequency protocol omega(t) on [0, tau] for one unitary stroke.
///
/// The quintic family omega(t) = omega_i + (omega_f - omega_i)(10 s^3 - 15 s^4 + 6 s^5),
/// s = t / tau, has vanishing first and second derivatives at both ends, which is
/// what makes the local counterdiabatic frequency coincide with the bare one there.
class Ramp {
public:
    /// Throws InvalidParameter unless all three arguments are positive.
    static Ramp quintic(double omega_i, double omega_f, double tau);

    double omega_i() const noexcept { return omega_i_; }
    double omega_f() const noexcept { return omega_f_; }
    double tau() const noexcept { return tau_; }
    RampShape shape() const noexcept { return shape_; }
    bool is_constant() const noexcept { return omega_i_ == omega_f_; }

    // Unchecked evaluation, used in inner loops. t is expected in [0, tau].
    double omega(double t) const noexcept;
    double d_omega(double t) const noexcept;
    double dd_omega(double t) const noexcept;

private:
    Ramp(double omega_i, double omega_f, double tau, RampShape shape)
        : omega_i_(omega_i), omega_f_(omega_f), tau_(tau), shape_(shape) {}

    double omega_i_;
    double omega_f_;
    double tau_;
    RampShape shape_;
};

inline Ramp make_quintic(double omega_i, double omega_f, double tau) {
    return Ramp::quintic(omega_i, omega_f, tau);
}

/// Everything the LCD construction needs at one instant.
struct LcdSample {
    double t;
    double omega;
    double domega;
    double ddomega;
    double omega_lcd_sq;  ///< Omega^2 = w^2 - 3 w'^2 / (4 w^2) + w'' / (2 w)
    double qstar_lcd;     ///< 1 - w'^2 / (4 w^4) + w'' / (4 w^3)
};

/// Throws DomainError if t lies outside [0, tau].
LcdSample evaluate(const Ramp& ramp, double t);

struct LcdMinimum {
    double value;
    double time;
};

/// Minimum of Omega^2(t): uniform grid scan refined by golden-section search
/// around the best grid point. A negative value means the trap inverts.
LcdMinimum min_lcd_frequency_sq(const Ramp& ramp, int grid_points = 10000);

/// Instantaneous control-field energy <H_STA^LCD(t)> for a stroke that starts
/// in a thermal state at inverse temperature beta and frequency omega_i.
double sta_cost_instant(const Ramp& ramp, double t, double beta);

/// Both quadrature routes to the time-averaged STA cost.
struct StaCostRoutes {
    double direct;    ///< time average of sta_cost_instant
    double by_parts;  ///< (coth / 2) * (1/tau) * int w'^2 / (4 w^3) dt
};

StaCostRoutes sta_cost_routes(const Ramp& ramp, double beta, const QuadratureTolerances& tol = {});

/// Time-averaged STA cost. The direct and by-parts routes must agree to 1e-8
/// relative, otherwise NumericalAccuracyError carries both estimates.
double sta_cost_avg(const Ramp& ramp, double beta, const QuadratureTolerances& tol = {});

}  // namespace ottofridge
