#include "ottofridge/fock_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "ottofridge/error.hpp"

namespace ottofridge::fock {

namespace {

using cplx = std::complex<double>;

constexpr double kSupportFloor = 1e-14;
constexpr double kKeepWeight = 1e-13;

// Symmetric matrix with bandwidth <= 2; band[k][i] = H(i, i + k).
struct Banded {
    int n = 0;
    std::array<std::vector<double>, 3> band;

    static Banded from_parts(const RealMatrix& p2, const RealMatrix& x2, double omega) {
        Banded h;
        h.n = static_cast<int>(p2.rows());
        for (int k = 0; k < 3; ++k) {
            h.band[k].assign(h.n, 0.0);
            for (int i = 0; i + k < h.n; ++i) {
                h.band[k][i] = 0.5 * p2(i, i + k) + 0.5 * omega * omega * x2(i, i + k);
            }
        }
        return h;
    }

    // Gershgorin enclosure of the spectrum.
    std::pair<double, double> spectral_bounds() const {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int i = 0; i < n; ++i) {
            double r = 0.0;
            for (int k = 1; k < 3; ++k) {
                if (i + k < n) r += std::abs(band[k][i]);
                if (i - k >= 0) r += std::abs(band[k][i - k]);
            }
            lo = std::min(lo, band[0][i] - r);
            hi = std::max(hi, band[0][i] + r);
        }
        return {lo, hi};
    }

    // out = alpha * (H - shift) * in - prev   (prev may be null)
    //
    // H is real, so real and imaginary parts decouple: each column is walked as
    // 2n interleaved doubles with neighbour offsets of 2 and 4.
    void apply(const ComplexMatrix& in, double shift, double alpha, const ComplexMatrix* prev,
               ComplexMatrix& out) const {
        const int m = 2 * n;
        thread_local std::vector<double> e0, e1, e2;
        e0.resize(m);
        e1.assign(m, 0.0);
        e2.assign(m, 0.0);
        for (int i = 0; i < n; ++i) {
            e0[2 * i] = e0[2 * i + 1] = alpha * (band[0][i] - shift);
            if (i + 1 < n) e1[2 * i] = e1[2 * i + 1] = alpha * band[1][i];
            if (i + 2 < n) e2[2 * i] = e2[2 * i + 1] = alpha * band[2][i];
        }
        for (Eigen::Index j = 0; j < in.cols(); ++j) {
            const double* v = reinterpret_cast<const double*>(in.col(j).data());
            double* o = reinterpret_cast<double*>(out.col(j).data());
            const double* q = prev ? reinterpret_cast<const double*>(prev->col(j).data()) : nullptr;
            auto edge = [&](int k) {
                double s = e0[k] * v[k];
                if (k + 2 < m) s += e1[k] * v[k + 2];
                if (k >= 2) s += e1[k - 2] * v[k - 2];
                if (k + 4 < m) s += e2[k] * v[k + 4];
                if (k >= 4) s += e2[k - 4] * v[k - 4];
                o[k] = q ? s - q[k] : s;
            };
            const int lo = std::min(4, m);
            const int hi = std::max(lo, m - 4);
            for (int k = 0; k < lo; ++k) edge(k);
            if (q) {
                for (int k = lo; k < hi; ++k) {
                    o[k] = e0[k] * v[k] + e1[k] * v[k + 2] + e1[k - 2] * v[k - 2] +
                           e2[k] * v[k + 4] + e2[k - 4] * v[k - 4] - q[k];
                }
            } else {
                for (int k = lo; k < hi; ++k) {
                    o[k] = e0[k] * v[k] + e1[k] * v[k + 2] + e1[k - 2] * v[k - 2] +
                           e2[k] * v[k + 4] + e2[k - 4] * v[k - 4];
                }
            }
            for (int k = hi; k < m; ++k) edge(k);
        }
    }
};

// psi <- exp(-i H dt) psi by Chebyshev expansion on the Gershgorin interval.
void chebyshev_exp(const Banded& h, double dt, ComplexMatrix& psi, std::array<ComplexMatrix, 3>& work) {
    const auto [lo, hi] = h.spectral_bounds();
    const double half_width = std::max(0.5 * (hi - lo), 1e-300);
    const double center = 0.5 * (hi + lo);
    const double z = half_width * dt;

    ComplexMatrix& t_prev = work[0];
    ComplexMatrix& t_cur = work[1];
    ComplexMatrix& t_next = work[2];
    t_prev = psi;
    t_cur.resize(psi.rows(), psi.cols());
    t_next.resize(psi.rows(), psi.cols());

    ComplexMatrix acc = std::cyl_bessel_j(0.0, z) * psi;
    h.apply(t_prev, center, 1.0 / half_width, nullptr, t_cur);
    cplx phase(0.0, -1.0);
    acc += 2.0 * phase * std::cyl_bessel_j(1.0, z) * t_cur;

    int quiet = 0;
    for (int k = 2; k < 100000; ++k) {
        h.apply(t_cur, center, 2.0 / half_width, &t_prev, t_next);
        phase *= cplx(0.0, -1.0);
        const double jk = std::cyl_bessel_j(static_cast<double>(k), z);
        acc += (2.0 * jk) * phase * t_next;
        std::swap(t_prev, t_cur);
        std::swap(t_cur, t_next);
        if (k > z && std::abs(jk) < 1e-17) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
    }
    psi = std::polar(1.0, -center * dt) * acc;
}

// Square parts of x and p; the propagation only needs these.
struct SquaredOperators {
    RealMatrix p2;
    RealMatrix x2;
};

SquaredOperators squared_operators(int dim, double omega_ref) {
    const OscillatorOperators ops = build_operators(dim, omega_ref);
    return {ops.p2, ops.x2};
}

bool is_real(const ComplexMatrix& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

bool is_diagonal(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j && m(i, j) != cplx(0.0, 0.0)) return false;
        }
    }
    return true;
}

// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix, with a real
// fast path for real symmetric input.
struct Eigen_ {
    Eigen::VectorXd values;
    ComplexMatrix vectors;
};

Eigen_ hermitian_eigen(const ComplexMatrix& m) {
    if (is_diagonal(m)) {
        const auto n = m.rows();
        std::vector<Eigen::Index> order(n);
        for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](auto a, auto b) { return m(a, a).real() < m(b, b).real(); });
        Eigen_ e;
        e.values.resize(n);
        e.vectors = ComplexMatrix::Zero(n, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            e.values[k] = m(order[k], order[k]).real();
            e.vectors(order[k], k) = 1.0;
        }
        return e;
    }
    if (is_real(m)) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(m.real());
        return {es.eigenvalues(), es.eigenvectors().cast<cplx>()};
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    return {es.eigenvalues(), es.eigenvectors()};
}

double gibbs_tail(double beta, double omega, int dim) { return std::exp(-beta * omega * dim); }

}  // namespace

void TruncatedDensityMatrix::validate() const {
    if (elements.rows() != elements.cols() || elements.rows() < 1) {
        throw InvalidState("density matrix: not square");
    }
    if ((elements - elements.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw InvalidState("density matrix: not Hermitian");
    }
    if (std::abs(trace() - 1.0) > 1e-10) {
        throw InvalidState("density matrix: trace differs from one");
    }
    if (hermitian_eigen(elements).values.minCoeff() < -1e-10) {
        throw InvalidState("density matrix: negative eigenvalue");
    }
}

OscillatorOperators build_operators(int dim, double omega_ref) {
    if (dim < 2) throw InvalidParameter("build_operators: dim must be >= 2");
    if (!(omega_ref > 0.0)) throw InvalidParameter("build_operators: omega_ref must be positive");
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const ComplexMatrix ad = a.adjoint();
    OscillatorOperators ops;
    ops.x = (a + ad) / std::sqrt(2.0 * omega_ref);
    ops.p = cplx(0.0, std::sqrt(0.5 * omega_ref)) * (ad - a);

    // Squares from the normal-ordered forms a^2 + a+^2 +/- (2 a+a + 1), so the
    // highest kept level is not corrupted by the missing |N> component.
    RealMatrix a2 = RealMatrix::Zero(dim, dim);
    for (int n = 2; n < dim; ++n) a2(n - 2, n) = std::sqrt(static_cast<double>(n) * (n - 1));
    RealMatrix number = RealMatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) number(n, n) = 2.0 * n + 1.0;
    const RealMatrix pairs = a2 + a2.transpose();
    ops.x2 = (pairs + number) / (2.0 * omega_ref);
    ops.p2 = 0.5 * omega_ref * (number - pairs);
    return ops;
}

RealMatrix hamiltonian(const OscillatorOperators& ops, double omega) {
    return 0.5 * ops.p2 + 0.5 * omega * omega * ops.x2;
}

int required_dim(double beta, double omega, double max_tail) {
    if (!(beta > 0.0) || !(omega > 0.0)) {
        throw InvalidParameter("required_dim: beta and omega must be positive");
    }
    return std::max(2, static_cast<int>(std::ceil(-std::log(max_tail) / (beta * omega))));
}

TruncatedDensityMatrix thermal_density(double beta, double omega, int dim, double max_tail) {
    if (dim < 2) throw InvalidParameter("thermal_density: dim must be >= 2");
    if (!(beta > 0.0) || !(omega > 0.0)) {
        throw InvalidParameter("thermal_density: beta and omega must be positive");
    }
    const double tail = gibbs_tail(beta, omega, dim);
    if (tail > max_tail) {
        throw TruncationError("thermal_density: discarded Gibbs tail " + std::to_string(tail) +
                                  " exceeds " + std::to_string(max_tail),
                              required_dim(beta, omega, max_tail));
    }
    Eigen::VectorXd w(dim);
    for (int n = 0; n < dim; ++n) w[n] = std::exp(-beta * omega * n);
    w /= w.sum();
    return {omega, w.cast<cplx>().asDiagonal()};
}

TruncatedDensityMatrix gibbs_density(double beta, double omega, int dim, double omega_ref) {
    if (omega == omega_ref) {
        return thermal_density(beta, omega, dim, 1.0);
    }
    const RealMatrix h = hamiltonian(build_operators(dim, omega_ref), omega);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(h);
    const Eigen::VectorXd& e = es.eigenvalues();
    Eigen::VectorXd w = (-beta * (e.array() - e[0])).exp().matrix();
    w /= w.sum();
    const RealMatrix rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
    return {omega_ref, (0.5 * (rho + rho.transpose())).cast<cplx>()};
}

double mean_energy(const TruncatedDensityMatrix& rho, double omega) {
    const RealMatrix h = hamiltonian(build_operators(rho.dim(), rho.omega_ref), omega);
    return (rho.elements * h.cast<cplx>()).trace().real();
}

TruncatedDensityMatrix propagate(const Ramp& ramp, const TruncatedDensityMatrix& rho0, int steps) {
    if (steps < 1) throw InvalidParameter("propagate: steps must be >= 1");
    const int n = rho0.dim();
    const Eigen_ eig = hermitian_eigen(rho0.elements);

    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        if (eig.values[k] > kKeepWeight) kept.push_back(k);
    }
    ComplexMatrix psi(n, static_cast<Eigen::Index>(kept.size()));
    Eigen::VectorXd weights(static_cast<Eigen::Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) {
        psi.col(c) = eig.vectors.col(kept[c]);
        weights[c] = eig.values[kept[c]];
    }

    const SquaredOperators sq = squared_operators(n, rho0.omega_ref);
    const double dt = ramp.tau() / steps;
    std::array<ComplexMatrix, 3> work;
    for (int m = 0; m < steps; ++m) {
        const double t_mid = (m + 0.5) * dt;
        chebyshev_exp(Banded::from_parts(sq.p2, sq.x2, ramp.omega(t_mid)), dt, psi, work);
    }

    ComplexMatrix rho = psi * weights.cast<cplx>().asDiagonal() * psi.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return {rho0.omega_ref, rho};
}

double qstar_from_energy(double final_energy, double beta, double omega_i, double omega_f) {
    if (!(final_energy > 0.0) || !(beta > 0.0) || !(omega_i > 0.0) || !(omega_f > 0.0)) {
        throw InvalidParameter("qstar_from_energy: inputs must be positive");
    }
    return 2.0 * final_energy / (omega_f * coth(0.5 * beta * omega_i));
}

double matrix_fidelity(const TruncatedDensityMatrix& a, const TruncatedDensityMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidParameter("matrix_fidelity: dimension mismatch");
    const Eigen_ ea = hermitian_eigen(a.elements);
    if (ea.values.minCoeff() < -1e-10) throw InvalidState("matrix_fidelity: a is not positive");
    Eigen::VectorXd root = ea.values.cwiseMax(0.0).cwiseSqrt();
    const ComplexMatrix sqrt_a = ea.vectors * root.cast<cplx>().asDiagonal() * ea.vectors.adjoint();
    ComplexMatrix m = sqrt_a * b.elements * sqrt_a;
    m = 0.5 * (m + m.adjoint()).eval();
    const Eigen_ em = hermitian_eigen(m);
    if (em.values.minCoeff() < -1e-10) throw InvalidState("matrix_fidelity: b is not positive");
    const double tr = em.values.cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(tr * tr, 0.0, 1.0);
}

double relative_entropy(const TruncatedDensityMatrix& a, const TruncatedDensityMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidParameter("relative_entropy: dimension mismatch");
    const Eigen_ ea = hermitian_eigen(a.elements);
    const Eigen_ eb = hermitian_eigen(b.elements);
    if (ea.values.minCoeff() < -1e-10 || eb.values.minCoeff() < -1e-10) {
        throw InvalidState("relative_entropy: negative eigenvalue");
    }

    double s_a = 0.0;
    for (Eigen::Index k = 0; k < ea.values.size(); ++k) {
        const double l = ea.values[k];
        if (l > 0.0) s_a += l * std::log(l);
    }
    // Tr(a ln b) = sum_k ln(mu_k) <w_k|a|w_k>. A diagonal b has exact
    // eigenvalues, so only true zeros fall outside its support.
    const double floor = is_diagonal(b.elements) ? 0.0 : kSupportFloor;
    double cross = 0.0;
    for (Eigen::Index k = 0; k < eb.values.size(); ++k) {
        const auto w = eb.vectors.col(k);
        const double overlap = (w.adjoint() * a.elements * w).value().real();
        if (eb.values[k] <= floor) {
            if (overlap > kSupportFloor) {
                throw DivergentRelativeEntropy(
                    "relative_entropy: support of a not contained in support of b");
            }
            continue;
        }
        cross += std::log(eb.values[k]) * overlap;
    }
    return std::max(0.0, s_a - cross);
}

namespace {

double run_qstar(const Ramp& ramp, double beta, int dim, int steps, double omega_ref) {
    const TruncatedDensityMatrix rho0 = gibbs_density(beta, ramp.omega_i(), dim, omega_ref);
    const TruncatedDensityMatrix rho = propagate(ramp, rho0, steps);
    return qstar_from_energy(mean_energy(rho, ramp.omega_f()), beta, ramp.omega_i(),
                             ramp.omega_f());
}

int initial_steps(const Ramp& ramp) {
    const double w_max = std::max(ramp.omega_i(), ramp.omega_f());
    return std::max(16, static_cast<int>(std::ceil(8.0 * ramp.tau() * w_max)));
}

OracleReport unconverged(int dim) {
    OracleReport r;
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.truncation_error = std::numeric_limits<double>::infinity();
    r.dim_used = dim;
    r.converged = false;
    return r;
}

}  // namespace

double oracle_reference_frequency(const Ramp& ramp) {
    const double wi = ramp.omega_i();
    const double wf = ramp.omega_f();
    return std::sqrt(wi * wf) * std::cbrt((wi * wi + wf * wf) / (2.0 * wi * wf));
}

OracleReport oracle_qstar(const Ramp& ramp, double beta, const OracleOptions& options) {
    const double omega_ref = oracle_reference_frequency(ramp);
    int dim = options.dim;
    for (;;) {
        const bool can_grow = options.auto_escalate && 2 * dim <= options.max_dim;
        if (gibbs_tail(beta, ramp.omega_i(), dim) > 1e-12) {
            if (can_grow) {
                dim *= 2;
                continue;
            }
            return unconverged(dim);
        }

        OracleReport r;
        r.dim_used = dim;
        int steps = initial_steps(ramp);
        double coarse = run_qstar(ramp, beta, dim, steps, omega_ref);
        r.truncation_error = std::abs(coarse - run_qstar(ramp, beta, dim / 2, steps, omega_ref));
        if (r.truncation_error > options.tolerance && can_grow) {
            dim *= 2;
            continue;
        }

        double fine = run_qstar(ramp, beta, dim, 2 * steps, omega_ref);
        steps *= 2;
        r.step_error = std::abs(fine - coarse) / 3.0;
        while (r.step_error > 0.2 * options.tolerance && 2 * steps <= options.max_steps) {
            coarse = fine;
            fine = run_qstar(ramp, beta, dim, 2 * steps, omega_ref);
            steps *= 2;
            r.step_error = std::abs(fine - coarse) / 3.0;
        }
        r.steps_used = steps;
        r.value = fine;
        r.converged = r.step_error + r.truncation_error <= options.tolerance;
        if (r.converged || !can_grow) {
            return r;
        }
        dim *= 2;
    }
}

OracleReport oracle_fidelity(const GibbsSpec& a, const GibbsSpec& b, const OracleOptions& options) {
    const double omega_ref = std::sqrt(a.omega * b.omega);
    int dim = options.dim;
    for (;;) {
        auto at = [&](int d) {
            return matrix_fidelity(gibbs_density(a.beta, a.omega, d, omega_ref),
                                   gibbs_density(b.beta, b.omega, d, omega_ref));
        };
        OracleReport r;
        r.dim_used = dim;
        r.value = at(dim);
        r.truncation_error = std::abs(r.value - at(dim / 2));
        r.converged = r.truncation_error <= options.tolerance;
        if (r.converged || !options.auto_escalate || 2 * dim > options.max_dim) {
            return r;
        }
        dim *= 2;
    }
}

OracleReport oracle_isochore_entropy(const CycleConfig& c, const OracleOptions& options) {
    int dim = options.dim;
    for (;;) {
        auto at = [&](int d, double max_tail) {
            // B, C live in the omega2 basis; D, A in the omega1 basis.
            const auto rho_b = thermal_density(c.beta1 * c.omega1 / c.omega2, c.omega2, d, max_tail);
            const auto rho_c = thermal_density(c.beta2, c.omega2, d, max_tail);
            const auto rho_d = thermal_density(c.beta2 * c.omega2 / c.omega1, c.omega1, d, max_tail);
            const auto rho_a = thermal_density(c.beta1, c.omega1, d, max_tail);
            return relative_entropy(rho_b, rho_c) + relative_entropy(rho_d, rho_a);
        };
        try {
            OracleReport r;
            r.dim_used = dim;
            r.value = at(dim, 1e-12);
            r.truncation_error = std::abs(r.value - at(dim / 2, 1.0));
            r.converged = r.truncation_error <= options.tolerance;
            if (r.converged || !options.auto_escalate || 2 * dim > options.max_dim) {
                return r;
            }
        } catch (const TruncationError&) {
            if (!options.auto_escalate || 2 * dim > options.max_dim) {
                return unconverged(dim);
            }
        }
        dim *= 2;
    }
}

}  // namespace ottofridge::fock
