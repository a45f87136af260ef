#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "specrv/classical_rv.hpp"
#include "specrv/grid.hpp"
#include "specrv/matrix_spectral.hpp"

namespace specrv {

// Harmonic oscillator in natural units, with the derived length and
// momentum scales q0 = sqrt(hbar/(m omega)) and p0 = hbar/q0.
struct OscillatorParams {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;

    void validate() const {
        if (!(hbar > 0.0 && mass > 0.0 && omega > 0.0))
            throw std::invalid_argument("OscillatorParams: requires positive hbar, mass, omega");
        if (!(std::abs(q0() * p0() - hbar) <= 1e-14 * hbar))
            throw std::logic_error("OscillatorParams: q0 * p0 != hbar");
    }

    double q0() const { return std::sqrt(hbar / (mass * omega)); }
    double p0() const { return hbar / q0(); }
};

// Ground-state position density |psi_Q(q)|^2: normal with variance q0^2/2.
inline double ground_density_q(const OscillatorParams& par, double q) {
    par.validate();
    const double q0 = par.q0();
    return std::exp(-q * q / (q0 * q0)) / (q0 * std::sqrt(pi));
}

// Ground-state momentum density |psi_P(p)|^2: normal with variance p0^2/2.
inline double ground_density_p(const OscillatorParams& par, double p) {
    par.validate();
    const double p0 = par.p0();
    return std::exp(-p * p / (p0 * p0)) / (p0 * std::sqrt(pi));
}

// Position-momentum eigenvector overlap <q|p> = (2 pi hbar)^{-1/2} e^{iqp/hbar};
// constant modulus, so the two bases are mutually unbiased.
inline std::complex<double> overlap_qp(const OscillatorParams& par, double q, double p) {
    par.validate();
    return std::polar(1.0 / std::sqrt(2.0 * pi * par.hbar), q * p / par.hbar);
}

// The ground-state two-basis kernel in dimensionless variables
// (x, y) = (q/q0, p/p0), hbar-scaled:
//   hbar z(x, y) = (1 / (sqrt(2) pi)) exp(-(x^2 + y^2)/2 + i x y).
inline std::complex<double> quasi_z(double x, double y) {
    const double mag = std::exp(-0.5 * (x * x + y * y)) / (std::sqrt(2.0) * pi);
    return std::polar(mag, x * y);
}

// Quasi-probability f = Re z: normalized and correctly marginalizing, but
// genuinely signed (cos(xy) changes sign), so not a PDF.
inline double quasi_f(double x, double y) {
    return std::exp(-0.5 * (x * x + y * y)) * std::cos(x * y) / (std::sqrt(2.0) * pi);
}

// Companion g = Im z: integrates to zero, not a quasi-probability.
inline double quasi_g(double x, double y) {
    return std::exp(-0.5 * (x * x + y * y)) * std::sin(x * y) / (std::sqrt(2.0) * pi);
}

// Signed quasi-probability values on a 2-D grid in the dimensionless
// variables; hbar records the scale that restores f(q, p) = values / hbar.
struct QuasiDensity2D {
    GridSpec grid_x;
    GridSpec grid_y;
    std::vector<double> values;
    double hbar = 1.0;

    double at(int ix, int iy) const {
        return values[std::size_t(ix) * std::size_t(grid_y.n) + std::size_t(iy)];
    }

    double integral() const {
        const double hx = grid_x.step();
        const double hy = grid_y.step();
        double acc = 0.0;
        for (int i = 0; i < grid_x.n; ++i) {
            const double wx = (i == 0 || i == grid_x.n - 1) ? 0.5 : 1.0;
            double row = 0.0;
            for (int j = 0; j < grid_y.n; ++j)
                row += ((j == 0 || j == grid_y.n - 1) ? 0.5 : 1.0) * at(i, j);
            acc += wx * row;
        }
        return acc * hx * hy;
    }

    double min_value() const {
        double m = values.front();
        for (double v : values) m = std::min(m, v);
        return m;
    }
};

inline QuasiDensity2D sampled_quasi_f(const GridSpec& gx, const GridSpec& gy, double hbar = 1.0) {
    gx.validate();
    gy.validate();
    QuasiDensity2D d;
    d.grid_x = gx;
    d.grid_y = gy;
    d.hbar = hbar;
    d.values.resize(std::size_t(gx.n) * std::size_t(gy.n));
    for (int i = 0; i < gx.n; ++i)
        for (int j = 0; j < gy.n; ++j)
            d.values[std::size_t(i) * std::size_t(gy.n) + std::size_t(j)] =
                quasi_f(gx.point(i), gy.point(j));
    return d;
}

inline QuasiDensity2D sampled_quasi_g(const GridSpec& gx, const GridSpec& gy, double hbar = 1.0) {
    gx.validate();
    gy.validate();
    QuasiDensity2D d;
    d.grid_x = gx;
    d.grid_y = gy;
    d.hbar = hbar;
    d.values.resize(std::size_t(gx.n) * std::size_t(gy.n));
    for (int i = 0; i < gx.n; ++i)
        for (int j = 0; j < gy.n; ++j)
            d.values[std::size_t(i) * std::size_t(gy.n) + std::size_t(j)] =
                quasi_g(gx.point(i), gy.point(j));
    return d;
}

// <X + Y> through the quasi-probability: the integrand (x + y) f(x, y) is
// odd under (x, y) -> (-x, -y), so this vanishes for the ground state.
inline double sum_expectation_via_quasi(const GridSpec& grid) {
    return integrate_2d([](double x, double y) { return (x + y) * quasi_f(x, y); }, grid, grid)
        .value;
}

// <U> = iint x y f dx dy (the symmetrized product): zero for the ground state.
inline double u_expectation_via_quasi(const GridSpec& grid) {
    return integrate_2d([](double x, double y) { return x * y * quasi_f(x, y); }, grid, grid)
        .value;
}

// <V> = iint x y g dx dy: one half, fixed by the canonical commutator.
inline double v_expectation_via_quasi(const GridSpec& grid) {
    return integrate_2d([](double x, double y) { return x * y * quasi_g(x, y); }, grid, grid)
        .value;
}

// phi_W(s) for W = X + Y in the ground state, closed form exp(-s^2/2)
// (operator splitting turns the exponential of the sum into a product and a
// central phase e^{i s^2 / 2}).
inline std::complex<double> sum_charfn_quantum_closed(double s) {
    return {std::exp(-0.5 * s * s), 0.0};
}

// Same object by quadrature: e^{i s^2/2} iint e^{i s (x + y)} z(x, y) dx dy.
// A Richardson estimate above tol flags a non-converged quadrature.
inline std::complex<double> sum_charfn_quantum_quadrature(double s, const GridSpec& grid,
                                                          double tol = 1e-6) {
    const auto integral = integrate_2d(
        [s](double x, double y) {
            return std::polar(1.0, s * (x + y)) * quasi_z(x, y);
        },
        grid, grid);
    if (!(integral.error_estimate <= tol))
        throw std::runtime_error("sum_charfn_quantum_quadrature: error estimate " +
                                 detail::fmt(integral.error_estimate));
    return std::polar(1.0, 0.5 * s * s) * integral.value;
}

// Position matrix on the lowest n_max + 1 Fock levels:
// <n'|Q|n> = q0/sqrt(2) (sqrt(n) delta_{n',n-1} + sqrt(n+1) delta_{n',n+1}).
inline Matrix position_matrix(const OscillatorParams& par, int n_max) {
    par.validate();
    if (n_max < 1) throw std::invalid_argument("position_matrix: requires n_max >= 1");
    Matrix q = Matrix::Zero(n_max + 1, n_max + 1);
    const double c = par.q0() / std::sqrt(2.0);
    for (int n = 1; n <= n_max; ++n) {
        q(n - 1, n) = c * std::sqrt(double(n));
        q(n, n - 1) = c * std::sqrt(double(n));
    }
    return q;
}

// <n'|P|n> = p0/(sqrt(2) i) (sqrt(n) delta_{n',n-1} - sqrt(n+1) delta_{n',n+1}).
inline Matrix momentum_matrix(const OscillatorParams& par, int n_max) {
    par.validate();
    if (n_max < 1) throw std::invalid_argument("momentum_matrix: requires n_max >= 1");
    Matrix p = Matrix::Zero(n_max + 1, n_max + 1);
    const double c = par.p0() / std::sqrt(2.0);
    for (int n = 1; n <= n_max; ++n) {
        p(n - 1, n) = std::complex<double>(0.0, -c * std::sqrt(double(n)));
        p(n, n - 1) = std::complex<double>(0.0, c * std::sqrt(double(n)));
    }
    return p;
}

// <0|X Y|0> for X = Q/q0, Y = P/p0 via the ladder matrix elements: only the
// n = 1 term of the completeness sum survives, giving exactly i/2.
inline std::complex<double> xy_expectation(const OscillatorParams& par, int n_max = 8) {
    if (n_max < 2) throw std::invalid_argument("xy_expectation: requires n_max >= 2");
    const Matrix x = position_matrix(par, n_max) / par.q0();
    const Matrix y = momentum_matrix(par, n_max) / par.p0();
    std::complex<double> acc = 0.0;
    for (int n = 0; n <= n_max; ++n) acc += x(0, n) * y(n, 0);
    return acc;
}

// V = (XY - YX)/(2i) is half the identity in the ground state (and any
// other): its value 1/2 occurs with certainty.
inline DiscreteDistribution v_pdf() {
    DiscreteDistribution d;
    d.points = {0.5};
    d.masses = {1.0};
    return d;
}

struct truncation_error : std::runtime_error {
    double tail_mass;
    truncation_error(const std::string& what, double tail)
        : std::runtime_error(what), tail_mass(tail) {}
};

// Squeezed-vacuum expansion over even Fock levels: coeffs[n] multiplies
// |2n>. Evaluated by the term ratio
//   c_n / c_{n-1} = sqrt(2n (2n-1)) / n * (-(e^{i phi}/2) tanh r),
// which keeps every intermediate bounded (no factorial overflow) out to
// n_max of several hundred.
struct FockCoeffs {
    int n_max = 0;
    std::vector<std::complex<double>> coeffs;

    double norm_sq() const {
        double s = 0.0;
        for (const auto& c : coeffs) s += std::norm(c);
        return s;
    }

    double tail_mass() const { return 1.0 - norm_sq(); }
};

inline FockCoeffs squeezed_vacuum_coeffs(double r, double phi_angle, int n_max,
                                         double tail_tol = 1e-6) {
    if (!(r >= 0.0)) throw std::invalid_argument("squeezed_vacuum_coeffs: requires r >= 0");
    if (n_max < 1) throw std::invalid_argument("squeezed_vacuum_coeffs: requires n_max >= 1");
    FockCoeffs fc;
    fc.n_max = n_max;
    fc.coeffs.resize(std::size_t(n_max) + 1);
    const std::complex<double> ratio_base =
        -0.5 * std::tanh(r) * std::polar(1.0, phi_angle);
    std::complex<double> c = 1.0 / std::sqrt(std::cosh(r));
    fc.coeffs[0] = c;
    for (int n = 1; n <= n_max; ++n) {
        c *= ratio_base * std::sqrt(2.0 * n * (2.0 * n - 1.0)) / double(n);
        fc.coeffs[std::size_t(n)] = c;
    }
    const double tail = fc.tail_mass();
    if (!(tail <= tail_tol))
        throw truncation_error("squeezed_vacuum_coeffs: tail mass " + detail::fmt(tail) +
                                   " at r = " + detail::fmt(r) +
                                   ", n_max = " + std::to_string(n_max),
                               tail);
    return fc;
}

// phi_U(s) = <0|S(s)|0> = (cosh s)^{-1/2}: the vacuum component of the
// squeezed vacuum at squeeze parameter s.
inline double u_charfn(double s) { return 1.0 / std::sqrt(std::cosh(s)); }

// The same value through the Fock expansion: c_0 of the squeezed vacuum,
// with the truncation adequacy of the expansion verified as a side effect.
inline double u_charfn_via_fock(double s, int n_max = 80, double tail_tol = 1e-6) {
    const FockCoeffs fc = squeezed_vacuum_coeffs(std::abs(s), 0.0, n_max, tail_tol);
    return fc.coeffs[0].real();
}

// Density of U by Fourier inversion of (cosh s)^{-1/2}. The integrand decays
// like e^{-s/2}, so s_max >= 40 puts the truncated tail below 1e-9.
inline GridDensity u_pdf(const GridSpec& grid, double s_max = 60.0) {
    if (!(s_max >= 40.0)) throw std::invalid_argument("u_pdf: requires s_max >= 40");
    CharFn phi;
    phi.evaluator = [](double s) { return std::complex<double>(u_charfn(s), 0.0); };
    InversionOptions opt;
    opt.renormalize = false;
    return pdf_from_charfn(phi, grid, s_max, opt);
}

}  // namespace specrv
