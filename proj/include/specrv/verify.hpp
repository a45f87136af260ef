#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "specrv/classical_rv.hpp"
#include "specrv/io.hpp"
#include "specrv/matrix_spectral.hpp"
#include "specrv/oscillator.hpp"

namespace specrv {

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
};

struct VerificationReport {
    std::vector<Check> checks;

    bool overall() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void add(const std::string& name, double measured, double expected, double tolerance) {
        checks.push_back(
            {name, std::abs(measured - expected) <= tolerance, measured, expected, tolerance});
    }

    // for one-sided conditions; measured and expected are still reported
    void add_flag(const std::string& name, bool pass, double measured, double expected,
                  double tolerance) {
        checks.push_back({name, pass, measured, expected, tolerance});
    }

    void print(std::ostream& os) const {
        for (const auto& c : checks)
            os << c.name << ": " << (c.pass ? "pass" : "FAIL")
               << " (measured=" << format_g17(c.measured) << ", expected=" << format_g17(c.expected)
               << ", tolerance=" << format_g17(c.tolerance) << ")\n";
        os << "overall: " << (overall() ? "pass" : "FAIL") << "\n";
    }
};

namespace detail {

inline Matrix random_hermitian(NormalStream& rng, int dim) {
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Complex(rng(), rng());
    return 0.5 * (g + g.adjoint()).eval();
}

inline StateVector random_state(NormalStream& rng, int dim) {
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = Complex(rng(), rng());
    v /= std::sqrt(v.squaredNorm());
    return StateVector(std::move(v));
}

// real-coefficient cubic in h; commutes with any other polynomial of h
inline Matrix polynomial_of(const Matrix& h, NormalStream& rng) {
    const int dim = int(h.rows());
    const Matrix id = Matrix::Identity(dim, dim);
    const Matrix h2 = h * h;
    return rng() * id + rng() * h + rng() * h2 + rng() * (h2 * h);
}

// Largest mass discrepancy between two discrete distributions whose points
// agree up to rounding: cluster the union of points by gap, compare the
// per-cluster masses.
inline double distribution_difference(const DiscreteDistribution& a,
                                      const DiscreteDistribution& b, double cluster_tol) {
    struct Tagged {
        double point;
        double mass;
        int side;
    };
    std::vector<Tagged> all;
    for (std::size_t i = 0; i < a.points.size(); ++i) all.push_back({a.points[i], a.masses[i], 0});
    for (std::size_t i = 0; i < b.points.size(); ++i) all.push_back({b.points[i], b.masses[i], 1});
    std::sort(all.begin(), all.end(),
              [](const Tagged& x, const Tagged& y) { return x.point < y.point; });
    double worst = 0.0;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i + 1;
        double m[2] = {0.0, 0.0};
        m[std::size_t(all[i].side)] += all[i].mass;
        while (j < all.size() && all[j].point - all[j - 1].point <= cluster_tol) {
            m[std::size_t(all[j].side)] += all[j].mass;
            ++j;
        }
        worst = std::max(worst, std::abs(m[0] - m[1]));
        i = j;
    }
    return worst;
}

inline Matrix pauli(int k) {
    Matrix m(2, 2);
    switch (k) {
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        default:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

}  // namespace detail

// Spectral-theorem battery: projector algebra, reconstruction, measurement
// statistics, compatibility gates.
inline VerificationReport verify_spectral(std::uint64_t seed = 12345) {
    VerificationReport rep;
    NormalStream rng(seed);

    // Pauli-Y: eigenvalues -1, +1 with projectors (I -+ A)/2
    {
        const HermitianOperator a(detail::pauli(2));
        const auto d = eigendecompose(a);
        const Matrix id = Matrix::Identity(2, 2);
        double ev = std::abs(d.eigenvalues[0] + 1.0) + std::abs(d.eigenvalues[1] - 1.0);
        rep.add("pauli_y_eigenvalues", ev, 0.0, 1e-12);
        const double pdev =
            std::max(max_abs(d.projectors[0] - 0.5 * (id - a.matrix())),
                     max_abs(d.projectors[1] - 0.5 * (id + a.matrix())));
        rep.add("pauli_y_projectors", pdev, 0.0, 1e-12);
        rep.add("pauli_y_reconstruction", d.reconstruction_defect(a), 0.0, 1e-12);

        const StateVector v((CVector(2) << 1.0, 0.0).finished());
        const auto dist = measurement_distribution(d, v);
        rep.add("pauli_y_masses", std::abs(dist.masses[0] - 0.5) + std::abs(dist.masses[1] - 0.5),
                0.0, 1e-12);
        rep.add("pauli_y_cdf_at_zero", cdf_at(d, v, 0.0), 0.5, 1e-12);
    }

    // identity merges into a single projector
    {
        const HermitianOperator a(Matrix::Identity(2, 2));
        const auto d = eigendecompose(a);
        rep.add("identity_degeneracy_merge", double(d.eigenvalues.size()), 1.0, 0.0);
    }

    // commutator of the first two Pauli matrices is 2i times the third
    {
        const HermitianOperator x(detail::pauli(1)), y(detail::pauli(2));
        const Matrix c = commutator(x, y);
        rep.add("pauli_commutator", max_abs(c - Complex(0, 2) * detail::pauli(3)), 0.0, 1e-14);
    }

    // random seeded operators: reconstruction, projector algebra, spectral
    // family nesting, dual-route expectation
    {
        double worst_rec = 0.0, worst_proj = 0.0, worst_nest = 0.0, worst_dual = 0.0;
        for (int trial = 0; trial < 25; ++trial) {
            const int dim = 2 + trial % 5;
            const HermitianOperator a(detail::random_hermitian(rng, dim));
            const auto d = eigendecompose(a);
            worst_rec = std::max(worst_rec, d.reconstruction_defect(a));
            worst_proj = std::max(worst_proj, d.projector_defect());

            const double lam1 = d.eigenvalues.front() + 0.3;
            const double lam2 = d.eigenvalues.back() - 0.1;
            const Matrix e1 = spectral_family_at(d, std::min(lam1, lam2));
            const Matrix e2 = spectral_family_at(d, std::max(lam1, lam2));
            worst_nest = std::max(worst_nest, max_abs(e1 * e2 - e1));

            const StateVector v = detail::random_state(rng, dim);
            const auto dist = measurement_distribution(d, v);
            worst_dual = std::max(worst_dual, std::abs(dist.mean() - expectation(a, v)));
        }
        rep.add("random_reconstruction", worst_rec, 0.0, 1e-10);
        rep.add("random_projector_algebra", worst_proj, 0.0, 1e-10);
        rep.add("spectral_family_nesting", worst_nest, 0.0, 1e-10);
        rep.add("expectation_dual_route", worst_dual, 0.0, 1e-10);
    }

    // hand-checked joint distribution for diagonal operators
    {
        Matrix a(2, 2), b(2, 2);
        a << 1, 0, 0, 2;
        b << 3, 0, 0, 4;
        const StateVector v((CVector(2) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)).finished());
        const auto joint = joint_distribution(HermitianOperator(a), HermitianOperator(b), v);
        double dev = std::abs(joint.entries[0].mass - 0.5) + std::abs(joint.entries[1].mass - 0.5) +
                     std::abs(joint.entries[0].b - 3.0) + std::abs(joint.entries[1].b - 4.0);
        rep.add("joint_diagonal_example", dev, 0.0, 1e-12);
    }

    // compatibility gate: commuting polynomial pairs pass with matching
    // marginals, independent random pairs are rejected
    {
        double worst_marg = 0.0;
        int accepted = 0;
        for (int trial = 0; trial < 20; ++trial) {
            const int dim = 2 + trial % 4;
            const Matrix h = detail::random_hermitian(rng, dim);
            const HermitianOperator a(detail::polynomial_of(h, rng));
            const HermitianOperator b(detail::polynomial_of(h, rng));
            const StateVector v = detail::random_state(rng, dim);
            try {
                const auto joint = joint_distribution(a, b, v);
                ++accepted;
                const double scale_b =
                    std::max(1.0, max_abs(b.matrix()));
                worst_marg = std::max(
                    worst_marg,
                    detail::distribution_difference(joint.marginal_a(),
                                                    measurement_distribution(eigendecompose(a), v),
                                                    1e-8 * std::max(1.0, max_abs(a.matrix()))));
                worst_marg = std::max(
                    worst_marg,
                    detail::distribution_difference(joint.marginal_b(1e-9 * scale_b),
                                                    measurement_distribution(eigendecompose(b), v),
                                                    1e-8 * scale_b));
            } catch (const incompatibility_error&) {
            }
        }
        rep.add("joint_commuting_accepted", double(accepted), 20.0, 0.0);
        rep.add("joint_marginal_consistency", worst_marg, 0.0, 1e-10);

        int rejected = 0;
        for (int trial = 0; trial < 20; ++trial) {
            const int dim = 2 + trial % 4;
            const HermitianOperator a(detail::random_hermitian(rng, dim));
            const HermitianOperator b(detail::random_hermitian(rng, dim));
            const StateVector v = detail::random_state(rng, dim);
            try {
                joint_distribution(a, b, v);
            } catch (const incompatibility_error&) {
                ++rejected;
            }
        }
        rep.add("joint_noncommuting_rejected", double(rejected), 20.0, 0.0);
    }

    return rep;
}

// Classical random-variable battery: quadrature identities, characteristic
// functions, the Gaussian sum/product case studies, seeded Monte Carlo.
inline VerificationReport verify_classical(std::uint64_t seed = 12345,
                                           std::int64_t mc_n = 1000000) {
    VerificationReport rep;

    const auto normal_pdf = [](double mu, double sig, double x) {
        const double t = (x - mu) / sig;
        return std::exp(-0.5 * t * t) / (std::sqrt(2.0 * pi) * sig);
    };

    const GridSpec g_std{-8.0, 8.0, 4001};
    const GridDensity std_normal =
        sample_density([&](double x) { return normal_pdf(0.0, 1.0, x); }, g_std);

    rep.add("gaussian_cdf_at_zero", cdf_from_pdf(std_normal, 0.0), 0.5, 1e-6);
    rep.add("expect_const", expect_g(std_normal, [](double) { return 1.0; }), 1.0, 1e-6);

    {
        const GridDensity shifted =
            sample_density([&](double x) { return normal_pdf(1.3, 0.7, x); },
                           GridSpec{1.3 - 8.0 * 0.7, 1.3 + 8.0 * 0.7, 4001});
        rep.add("expect_mean", expect_g(shifted, [](double x) { return x; }), 1.3, 1e-6);
        rep.add("expect_variance",
                expect_g(shifted, [](double x) { return (x - 1.3) * (x - 1.3); }),
                0.7 * 0.7, 1e-5);

        NormalStream rng(seed ^ 0x5eedULL);
        const double alpha = rng(), beta = rng();
        const double lhs =
            expect_g(shifted, [&](double x) { return alpha + beta * (x * x - 2.0 * x); });
        const double rhs =
            alpha + beta * expect_g(shifted, [](double x) { return x * x - 2.0 * x; });
        rep.add("expectation_linearity", lhs - rhs, 0.0, 1e-10);
    }

    {
        const CharFn phi = charfn_from_pdf(std_normal);
        double worst = 0.0;
        for (double s : {0.0, 1.0, 2.0})
            worst = std::max(worst, std::abs(phi(s) - Complex(std::exp(-0.5 * s * s), 0.0)));
        rep.add("gaussian_charfn", worst, 0.0, 1e-6);

        const GridDensity back = pdf_from_charfn(phi, g_std, 7.0);
        double dev = 0.0;
        for (int i = 0; i < g_std.n; ++i)
            dev = std::max(dev, std::abs(back.values[std::size_t(i)] -
                                         std_normal.values[std::size_t(i)]));
        rep.add("charfn_roundtrip_maxabs", dev, 0.0, 1e-6);

        rep.add("moment_n1", moment_from_charfn(phi, 1), 0.0, 1e-8);
        rep.add("moment_n2", moment_from_charfn(phi, 2), 1.0, 1e-6);
    }

    // the constant characteristic function (a point mass) has not decayed
    {
        CharFn flat;
        flat.evaluator = [](double) { return Complex(1.0, 0.0); };
        bool rejected = false;
        try {
            pdf_from_charfn(flat, g_std, 7.0);
        } catch (const std::invalid_argument&) {
            rejected = true;
        }
        rep.add_flag("delta_limit_rejected", rejected, rejected ? 1.0 : 0.0, 1.0, 0.0);
    }

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const BivariateGaussianParams fig1{0.0, 0.0, inv_sqrt2, inv_sqrt2, 0.0};

    {
        const BivariateGaussianParams p{0.0, 0.0, 1.0, 1.0, 0.0};
        rep.add("bivariate_pdf_origin", bivariate_gaussian_pdf(p, 0.0, 0.0), 1.0 / (2.0 * pi),
                1e-12);
        // marginal by quadrature at x1 = mu1
        const auto marg = integrate_1d(
            [&](double x2) { return bivariate_gaussian_pdf(p, 0.0, x2); }, GridSpec{-8, 8, 2001});
        rep.add("bivariate_marginal", marg.value, normal_pdf(0.0, 1.0, 0.0), 1e-6);
    }

    {
        rep.add("product_pdf_value", product_pdf_gaussian(fig1, 0.5),
                (2.0 / pi) * bessel_k0(1.0), 1e-9);
        rep.add("product_pdf_symmetry",
                product_pdf_gaussian(fig1, 0.75) - product_pdf_gaussian(fig1, -0.75), 0.0, 1e-14);
        rep.add("product_pdf_mass", product_pdf_mass(fig1), 1.0, 1e-5);
        const bool monotone = product_pdf_gaussian(fig1, 1e-3) > product_pdf_gaussian(fig1, 1e-2) &&
                              product_pdf_gaussian(fig1, 1e-2) > product_pdf_gaussian(fig1, 1e-1);
        rep.add_flag("product_singularity_monotone", monotone, monotone ? 1.0 : 0.0, 1.0, 0.0);
    }

    {
        const GaussianSumLaw law = sum_pdf_gaussian(fig1);
        rep.add("sum_law_sigma", law.sigma_w, 1.0, 1e-15);
        const CharFn phiw = sum_charfn_gaussian(fig1);
        rep.add("sum_charfn_value", std::abs(phiw(1.0) - Complex(std::exp(-0.5), 0.0)), 0.0,
                1e-12);
        const GridDensity inv = pdf_from_charfn(phiw, g_std, 7.0);
        double dev = 0.0;
        for (int i = 0; i < g_std.n; ++i)
            dev = std::max(dev,
                           std::abs(inv.values[std::size_t(i)] - law.pdf(g_std.point(i))));
        rep.add("sum_charfn_inversion", dev, 0.0, 1e-6);
    }

    {
        const BivariateGaussianParams p{0.0, 0.0, 1.0, 2.0, 0.5};
        const CharFn phiy = product_charfn_gaussian(p);
        rep.add("product_charfn_origin", std::abs(phiy(0.0) - 1.0), 0.0, 1e-15);
        rep.add("product_charfn_moment", moment_from_charfn(phiy, 1),
                p.rho * p.sigma1 * p.sigma2, 1e-5);
        const BivariateGaussianParams q{0.0, 0.0, inv_sqrt2, inv_sqrt2, 0.0};
        rep.add("product_charfn_fig4", std::abs(product_charfn_gaussian(q)(2.0)), inv_sqrt2,
                1e-12);
    }

    // seeded Monte Carlo checks; 4-standard-error gates
    {
        const BivariateGaussianParams p{0.3, -0.7, 1.0, 2.0, 0.5};
        const auto draw = [&p](NormalStream& rng) {
            const auto z = rng.pair();
            return std::array<double, 2>{
                p.mu1 + p.sigma1 * z[0],
                p.mu2 + p.sigma2 * (p.rho * z[0] + std::sqrt(1.0 - p.rho * p.rho) * z[1])};
        };
        const auto cov = mc_mean(
            draw,
            [&p](const std::array<double, 2>& x) { return (x[0] - p.mu1) * (x[1] - p.mu2); },
            mc_n, seed);
        rep.add("mc_product_covariance", cov.mean, p.rho * p.sigma1 * p.sigma2,
                4.0 * cov.std_error);
        const auto sum = mc_mean(
            draw, [](const std::array<double, 2>& x) { return x[0] + x[1]; }, mc_n, seed + 1);
        rep.add("mc_sum_mean", sum.mean, p.mu1 + p.mu2, 4.0 * sum.std_error);
        const auto heav = mc_mean(
            draw, [&p](const std::array<double, 2>& x) { return x[0] <= p.mu1 ? 1.0 : 0.0; },
            mc_n, seed + 2);
        rep.add("mc_heaviside_cdf", heav.mean, 0.5, 4.0 * std::sqrt(0.25 / double(mc_n)));
    }

    return rep;
}

// Oscillator battery: ground-state laws, quasi-probability identities,
// dual-route characteristic functions, the squeezed-vacuum expansion.
inline VerificationReport verify_quantum(const OscillatorParams& par = {},
                                         const GridSpec& grid = {-6.0, 6.0, 601}) {
    VerificationReport rep;
    par.validate();
    grid.validate();

    const auto normal_pdf = [](double mu, double sig, double x) {
        const double t = (x - mu) / sig;
        return std::exp(-0.5 * t * t) / (std::sqrt(2.0 * pi) * sig);
    };

    {
        OscillatorParams unit{1.0, 1.0, 1.0};
        rep.add("ground_q_peak", ground_density_q(unit, 0.0), 1.0 / std::sqrt(pi), 1e-12);
        const auto mass = integrate_1d([&](double q) { return ground_density_q(par, q); },
                                       GridSpec{-8.0 * par.q0(), 8.0 * par.q0(), 4001});
        rep.add("ground_q_mass", mass.value, 1.0, 1e-8);
        const auto var =
            integrate_1d([&](double q) { return q * q * ground_density_q(par, q); },
                         GridSpec{-8.0 * par.q0(), 8.0 * par.q0(), 4001});
        rep.add("ground_q_variance", var.value, 0.5 * par.q0() * par.q0(), 1e-6);
        rep.add("overlap_modulus", std::abs(overlap_qp(par, 1.7, -0.4)),
                1.0 / std::sqrt(2.0 * pi * par.hbar), 1e-15);
    }

    {
        rep.add("quasi_z_origin", std::abs(quasi_z(0.0, 0.0) - Complex(1.0 / (std::sqrt(2.0) * pi), 0.0)),
                0.0, 1e-15);
        const auto fmass = integrate_2d(quasi_f, grid, grid);
        rep.add("quasi_f_mass", fmass.value, 1.0, 1e-6);
        const auto gmass = integrate_2d(quasi_g, grid, grid);
        rep.add("quasi_g_mass", gmass.value, 0.0, 1e-8);

        double worst = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.point(i);
            if (std::abs(x) > 4.0) continue;
            const auto mx =
                integrate_1d([x](double y) { return quasi_f(x, y); }, grid);
            const auto my =
                integrate_1d([x](double y) { return quasi_f(y, x); }, grid);
            const double target = normal_pdf(0.0, std::sqrt(0.5), x);
            worst = std::max({worst, std::abs(mx.value - target), std::abs(my.value - target)});
        }
        rep.add("quasi_f_marginals", worst, 0.0, 1e-6);

        const QuasiDensity2D qf = sampled_quasi_f(grid, grid, par.hbar);
        double vmax = 0.0;
        for (double v : qf.values) vmax = std::max(vmax, v);
        rep.add_flag("quasi_f_negative_values", qf.min_value() < -1e-3 * vmax, qf.min_value(),
                     -1e-3 * vmax, 0.0);
    }

    rep.add("sum_expectation_quasi", sum_expectation_via_quasi(grid), 0.0, 1e-8);
    rep.add("u_expectation_quasi", u_expectation_via_quasi(grid), 0.0, 1e-8);
    rep.add("v_expectation_quasi", v_expectation_via_quasi(grid), 0.5, 1e-8);

    {
        double worst = 0.0;
        for (int k = -16; k <= 16; ++k) {
            const double s = 0.25 * double(k);
            worst = std::max(worst, std::abs(sum_charfn_quantum_quadrature(s, grid) -
                                             sum_charfn_quantum_closed(s)));
        }
        rep.add("sum_charfn_dual_route", worst, 0.0, 1e-6);

        CharFn phiw;
        phiw.evaluator = [](double s) { return sum_charfn_quantum_closed(s); };
        const GridSpec wgrid{-8.0, 8.0, 1601};
        const GridDensity fw = pdf_from_charfn(phiw, wgrid, 7.0);
        double dev = 0.0;
        for (int i = 0; i < wgrid.n; ++i)
            dev = std::max(dev, std::abs(fw.values[std::size_t(i)] -
                                         normal_pdf(0.0, 1.0, wgrid.point(i))));
        rep.add("sum_inversion_standard_normal", dev, 0.0, 1e-6);

        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        const CharFn classical =
            sum_charfn_gaussian(BivariateGaussianParams{0.0, 0.0, inv_sqrt2, inv_sqrt2, 0.0});
        double match = 0.0;
        for (int k = -16; k <= 16; ++k) {
            const double s = 0.25 * double(k);
            match = std::max(match, std::abs(classical(s) - sum_charfn_quantum_closed(s)));
        }
        rep.add("sum_quantum_equals_classical", match, 0.0, 1e-12);
    }

    {
        const Complex xy = xy_expectation(par);
        rep.add("xy_expectation_real", xy.real(), 0.0, 1e-14);
        rep.add("xy_expectation_imag", xy.imag(), 0.5, 1e-14);
        rep.add("v_expectation", v_pdf().mean(), 0.5, 0.0);
        rep.add("v_variance", v_pdf().variance(), 0.0, 0.0);

        const int n_max = 40;
        const Matrix q = position_matrix(par, n_max);
        const Matrix p = momentum_matrix(par, n_max);
        const Matrix c = q * p - p * q;
        double worst = 0.0;
        for (int r = 0; r < n_max; ++r)
            for (int col = 0; col < n_max; ++col)
                worst = std::max(worst,
                                 std::abs(c(r, col) - (r == col ? Complex(0.0, par.hbar) : 0.0)));
        rep.add("ladder_commutator", worst, 0.0, 1e-10);
    }

    {
        CharFn phiu;
        phiu.evaluator = [](double s) { return Complex(u_charfn(s), 0.0); };
        rep.add("u_charfn_value", u_charfn(2.0), 1.0 / std::sqrt(std::cosh(2.0)), 1e-15);
        rep.add("u_moment_from_charfn", moment_from_charfn(phiu, 1), 0.0, 1e-8);

        double dual = 0.0;
        for (double s : {0.5, 1.0, 2.0})
            dual = std::max(dual, std::abs(u_charfn(s) - u_charfn_via_fock(s, 200)));
        rep.add("u_charfn_fock_route", dual, 0.0, 1e-12);

        rep.add("fock_normalization_r1", squeezed_vacuum_coeffs(1.0, 0.0, 80).tail_mass(), 0.0,
                1e-8);

        const GridSpec ugrid{-12.0, 12.0, 1201};
        const GridDensity fu = u_pdf(ugrid);
        rep.add("u_pdf_mass", fu.integral(), 1.0, 1e-6);
        double asym = 0.0;
        for (int i = 0; i < ugrid.n; ++i)
            asym = std::max(asym, std::abs(fu.values[std::size_t(i)] -
                                           fu.values[std::size_t(ugrid.n - 1 - i)]));
        rep.add("u_pdf_symmetry", asym, 0.0, 1e-10);
        double mean = 0.0;
        for (int i = 0; i < ugrid.n; ++i) {
            const double w = (i == 0 || i == ugrid.n - 1) ? 0.5 : 1.0;
            mean += w * ugrid.point(i) * fu.values[std::size_t(i)];
        }
        rep.add("u_pdf_mean", mean * ugrid.step(), 0.0, 1e-8);
    }

    {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        const CharFn phiy =
            product_charfn_gaussian(BivariateGaussianParams{0.0, 0.0, inv_sqrt2, inv_sqrt2, 0.0});
        bool ordered = true;
        double min_gap_past_half = 1.0;
        const GridSpec sgrid{0.0, 6.0, 601};
        for (int i = 0; i < sgrid.n; ++i) {
            const double s = sgrid.point(i);
            const double gap = std::abs(phiy(s)) - u_charfn(s);
            if (gap < -1e-12) ordered = false;
            if (s >= 0.5) min_gap_past_half = std::min(min_gap_past_half, gap);
        }
        rep.add_flag("u_charfn_below_product_charfn", ordered && min_gap_past_half > 1e-6,
                     min_gap_past_half, 0.0, 0.0);
    }

    return rep;
}

inline VerificationReport verify_all(std::uint64_t seed = 12345, std::int64_t mc_n = 1000000,
                                     const OscillatorParams& par = {},
                                     const GridSpec& grid = {-6.0, 6.0, 601}) {
    VerificationReport rep;
    for (const auto& part :
         {verify_spectral(seed), verify_classical(seed, mc_n), verify_quantum(par, grid)})
        rep.checks.insert(rep.checks.end(), part.checks.begin(), part.checks.end());
    return rep;
}

}  // namespace specrv
