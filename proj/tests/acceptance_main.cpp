// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Criterion 10 exercises the installed CLI binary.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specrv/classical_rv.hpp"
#include "specrv/io.hpp"
#include "specrv/matrix_spectral.hpp"
#include "specrv/oscillator.hpp"
#include "specrv/verify.hpp"

using namespace specrv;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string label;
    bool pass = true;
    std::vector<std::string> notes;
    double seconds = 0.0;
    double budget_seconds = 0.0;

    void require(bool ok, const std::string& detail) {
        if (!ok) {
            pass = false;
            notes.push_back(detail);
        }
    }

    void note(const std::string& detail) { notes.push_back(detail); }
};

int failures = 0;

template <class Fn>
void run(int id, const std::string& label, double budget_seconds, Fn&& body) {
    Criterion c{id, label};
    c.budget_seconds = budget_seconds;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.seconds >= budget_seconds)
        c.require(false, "runtime " + format_g17(c.seconds) + "s exceeds budget");
    std::ostringstream line;
    line << "criterion " << id << " (" << label << "): " << (c.pass ? "PASS" : "FAIL");
    if (!c.notes.empty()) {
        line << " [";
        for (std::size_t i = 0; i < c.notes.size(); ++i) {
            if (i) line << "; ";
            line << c.notes[i];
        }
        line << "]";
    }
    line << " (" << std::round(c.seconds * 100.0) / 100.0 << "s of " << budget_seconds << "s)";
    std::cout << line.str() << "\n";
    if (!c.pass) ++failures;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix random_hermitian(NormalStream& rng, int dim) {
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Complex(rng(), rng());
    return 0.5 * (g + g.adjoint()).eval();
}

StateVector random_state(NormalStream& rng, int dim) {
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = Complex(rng(), rng());
    v /= std::sqrt(v.squaredNorm());
    return StateVector(std::move(v));
}

Matrix real_polynomial(const Matrix& h, NormalStream& rng) {
    const Matrix id = Matrix::Identity(h.rows(), h.cols());
    const Matrix h2 = h * h;
    return rng() * id + rng() * h + rng() * h2 + rng() * (h2 * h);
}

bool same_file_bytes(const fs::path& a, const fs::path& b) {
    return read_text_file(a.string()) == read_text_file(b.string());
}

}  // namespace

int main() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const BivariateGaussianParams fig1{0.0, 0.0, inv_sqrt2, inv_sqrt2, 0.0};

    run(1, "pauli_y_spectral", 1.0, [&](Criterion& c) {
        const HermitianOperator a(pauli_y());
        const auto d = eigendecompose(a);
        c.require(d.eigenvalues.size() == 2 && std::abs(d.eigenvalues[0] + 1.0) <= 1e-12 &&
                      std::abs(d.eigenvalues[1] - 1.0) <= 1e-12,
                  "eigenvalues not {-1, +1}");
        const Matrix id = Matrix::Identity(2, 2);
        const double pdev = std::max(max_abs(d.projectors[0] - 0.5 * (id - a.matrix())),
                                     max_abs(d.projectors[1] - 0.5 * (id + a.matrix())));
        c.require(pdev <= 1e-12, "projector deviation " + format_g17(pdev));
        const double rec = d.reconstruction_defect(a);
        c.require(rec <= 1e-12, "reconstruction residual " + format_g17(rec));
    });

    run(2, "product_density_fig1", 10.0, [&](Criterion& c) {
        double worst_rel = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double y = 0.05 + k * (4.0 - 0.05) / 19.0;
            const double closed = product_pdf_gaussian(fig1, y);
            const double quad = oracles::product_pdf_quadrature(fig1, y);
            worst_rel = std::max(worst_rel, std::abs(closed - quad) / std::abs(quad));
        }
        c.require(worst_rel <= 1e-7, "closed form vs quadrature rel " + format_g17(worst_rel));
        const double mass = product_pdf_mass(fig1);
        c.require(std::abs(mass - 1.0) <= 1e-5, "mass " + format_g17(mass));
    });

    run(3, "mc_expectations", 10.0, [&](Criterion& c) {
        const BivariateGaussianParams p{0.3, -0.7, 1.0, 2.0, 0.5};
        const auto draw = [&](NormalStream& rng) {
            const auto z = rng.pair();
            return std::array<double, 2>{
                p.mu1 + p.sigma1 * z[0],
                p.mu2 + p.sigma2 * (p.rho * z[0] + std::sqrt(1.0 - p.rho * p.rho) * z[1])};
        };
        // the product identity <X1 X2> = rho s1 s2 holds for the centered
        // variables (the covariance form) once the means are nonzero
        const auto cov = mc_mean(
            draw, [&](const std::array<double, 2>& x) { return (x[0] - p.mu1) * (x[1] - p.mu2); },
            1000000, 12345);
        c.require(std::abs(cov.mean - 1.0) <= 4.0 * cov.std_error,
                  "covariance " + format_g17(cov.mean) + " +- " + format_g17(cov.std_error));
        const auto sum = mc_mean(
            draw, [](const std::array<double, 2>& x) { return x[0] + x[1]; }, 1000000, 12346);
        c.require(std::abs(sum.mean - (p.mu1 + p.mu2)) <= 4.0 * sum.std_error,
                  "sum mean " + format_g17(sum.mean));
    });

    run(4, "charfn_round_trip", 10.0, [&](Criterion& c) {
        const GridSpec grid{-8.0, 8.0, 4001};
        const GridDensity f =
            sample_density([](double x) { return oracles::normal_pdf(0, 1, x); }, grid);
        const GridDensity back = pdf_from_charfn(charfn_from_pdf(f), grid, 7.0);
        double dev = 0.0;
        for (int i = 0; i < grid.n; ++i)
            dev = std::max(dev,
                           std::abs(back.values[std::size_t(i)] - f.values[std::size_t(i)]));
        c.require(dev <= 1e-6, "round-trip max abs " + format_g17(dev));

        const BivariateGaussianParams p{0.0, 0.0, 1.0, 2.0, 0.5};
        const double m1 = moment_from_charfn(product_charfn_gaussian(p), 1);
        c.require(std::abs(m1 - p.rho * p.sigma1 * p.sigma2) <= 1e-5,
                  "product first moment " + format_g17(m1));
    });

    run(5, "quasi_probability_suite", 20.0, [&](Criterion& c) {
        const GridSpec grid{-6.0, 6.0, 601};
        const double fmass = integrate_2d(quasi_f, grid, grid).value;
        c.require(std::abs(fmass - 1.0) <= 1e-6, "f mass " + format_g17(fmass));
        const double gmass = integrate_2d(quasi_g, grid, grid).value;
        c.require(std::abs(gmass) <= 1e-8, "g mass " + format_g17(gmass));

        double worst = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.point(i);
            if (std::abs(x) > 4.0) continue;
            const double target = oracles::normal_pdf(0.0, std::sqrt(0.5), x);
            const double mx = integrate_1d([x](double y) { return quasi_f(x, y); }, grid).value;
            const double my = integrate_1d([x](double y) { return quasi_f(y, x); }, grid).value;
            worst = std::max({worst, std::abs(mx - target), std::abs(my - target)});
        }
        c.require(worst <= 1e-6, "marginal deviation " + format_g17(worst));

        const QuasiDensity2D qf = sampled_quasi_f(grid, grid);
        double vmax = 0.0;
        for (double v : qf.values) vmax = std::max(vmax, v);
        c.require(qf.min_value() < -1e-3 * vmax,
                  "min value " + format_g17(qf.min_value()) + " not genuinely negative");
    });

    run(6, "quantum_sum_dual_route", 10.0, [&](Criterion& c) {
        const GridSpec grid{-6.0, 6.0, 601};
        double dual = 0.0;
        for (int k = -16; k <= 16; ++k) {
            const double s = 0.25 * double(k);
            dual = std::max(dual, std::abs(sum_charfn_quantum_quadrature(s, grid) -
                                           sum_charfn_quantum_closed(s)));
        }
        c.require(dual <= 1e-6, "route disagreement " + format_g17(dual));

        CharFn phi;
        phi.evaluator = [](double s) { return sum_charfn_quantum_closed(s); };
        const GridSpec wgrid{-8.0, 8.0, 1601};
        const GridDensity fw = pdf_from_charfn(phi, wgrid, 7.0);
        double dev = 0.0;
        for (int i = 0; i < wgrid.n; ++i)
            dev = std::max(dev, std::abs(fw.values[std::size_t(i)] -
                                         oracles::normal_pdf(0, 1, wgrid.point(i))));
        c.require(dev <= 1e-6, "inverted density deviation " + format_g17(dev));

        const CharFn classical =
            sum_charfn_gaussian(BivariateGaussianParams{0.0, 0.0, inv_sqrt2, inv_sqrt2, 0.0});
        double match = 0.0;
        for (int k = -16; k <= 16; ++k) {
            const double s = 0.25 * double(k);
            match = std::max(match, std::abs(classical(s) - sum_charfn_quantum_closed(s)));
        }
        c.require(match <= 1e-12, "classical/quantum mismatch " + format_g17(match));
    });

    run(7, "quantum_product", 5.0, [&](Criterion& c) {
        const Complex xy = xy_expectation(OscillatorParams{});
        c.require(std::abs(xy - Complex(0.0, 0.5)) <= 1e-14,
                  "<0|XY|0> = " + format_g17(xy.real()) + " + " + format_g17(xy.imag()) + "i");
        c.require(v_pdf().mean() == 0.5, "V mean not exactly 1/2");

        const GridSpec grid{-6.0, 6.0, 601};
        const double u_quasi = u_expectation_via_quasi(grid);
        c.require(std::abs(u_quasi) <= 1e-8, "<U> via quasi " + format_g17(u_quasi));
        CharFn phiu;
        phiu.evaluator = [](double s) { return Complex(u_charfn(s), 0.0); };
        const double u_mom = moment_from_charfn(phiu, 1);
        c.require(std::abs(u_mom) <= 1e-8, "<U> via derivative " + format_g17(u_mom));
    });

    run(8, "f_u_suite", 20.0, [&](Criterion& c) {
        const GridSpec grid{-12.0, 12.0, 1201};
        const GridDensity fu = u_pdf(grid);
        const double mass = fu.integral();
        c.require(std::abs(mass - 1.0) <= 1e-6, "f_U mass " + format_g17(mass));
        double asym = 0.0;
        for (int i = 0; i < grid.n; ++i)
            asym = std::max(asym, std::abs(fu.values[std::size_t(i)] -
                                           fu.values[std::size_t(grid.n - 1 - i)]));
        c.require(asym <= 1e-10, "asymmetry " + format_g17(asym));

        // Fock normalization at n_max = 80 across r <= 2. The geometric tail
        // ~ tanh(r)^{2n}/sqrt(n) of the even-level expansion is 5.8e-4 at
        // r = 2 (1e-8 first holds at n_max = 224), so the stated bound is
        // reachable only for r below about 1.45; the r = 2 instance is
        // reported as measured.
        for (double r : {0.5, 1.0, 1.5, 2.0}) {
            const double tail = squeezed_vacuum_coeffs(r, 0.0, 80, 1.0).tail_mass();
            if (r <= 1.0) {
                c.require(std::abs(tail) <= 1e-8,
                          "tail(r=" + format_g17(r) + ", n_max=80) = " + format_g17(tail));
            } else {
                c.require(std::abs(tail) <= 1e-8,
                          "tail(r=" + format_g17(r) + ", n_max=80) = " + format_g17(tail) +
                              " exceeds 1e-8");
            }
        }
        int adequate = 80;
        while (squeezed_vacuum_coeffs(2.0, 0.0, adequate, 1.0).tail_mass() > 1e-8) adequate += 1;
        c.note("n_max for 1e-8 at r=2 is " + std::to_string(adequate));

        const CharFn phiy = product_charfn_gaussian(fig1);
        bool ordered = true;
        double min_gap = 1.0;
        const GridSpec sgrid{0.0, 6.0, 601};
        for (int i = 0; i < sgrid.n; ++i) {
            const double s = sgrid.point(i);
            const double gap = std::abs(phiy(s)) - u_charfn(s);
            if (gap < -1e-12) ordered = false;
            if (s >= 0.5) min_gap = std::min(min_gap, gap);
        }
        c.require(ordered && min_gap > 1e-6,
                  "ordering phi_U <= phi_Y violated (min gap " + format_g17(min_gap) + ")");
    });

    run(9, "incompatibility_gate", 10.0, [&](Criterion& c) {
        NormalStream rng(2718);
        double worst_marg = 0.0;
        int accepted = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int dim = 2 + trial % 5;
            const Matrix h = random_hermitian(rng, dim);
            const HermitianOperator a(real_polynomial(h, rng));
            const HermitianOperator b(real_polynomial(h, rng));
            const StateVector v = random_state(rng, dim);
            try {
                const auto joint = joint_distribution(a, b, v);
                ++accepted;
                const double sb = std::max(1.0, max_abs(b.matrix()));
                worst_marg = std::max(
                    worst_marg, detail::distribution_difference(
                                    joint.marginal_a(),
                                    measurement_distribution(eigendecompose(a), v),
                                    1e-8 * std::max(1.0, max_abs(a.matrix()))));
                worst_marg = std::max(
                    worst_marg, detail::distribution_difference(
                                    joint.marginal_b(1e-9 * sb),
                                    measurement_distribution(eigendecompose(b), v), 1e-8 * sb));
            } catch (const incompatibility_error&) {
            }
        }
        c.require(accepted == 100, "accepted " + std::to_string(accepted) + "/100 commuting");
        c.require(worst_marg <= 1e-10, "marginal discrepancy " + format_g17(worst_marg));

        int rejected = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int dim = 2 + trial % 5;
            const HermitianOperator a(random_hermitian(rng, dim));
            const HermitianOperator b(random_hermitian(rng, dim));
            const StateVector v = random_state(rng, dim);
            try {
                joint_distribution(a, b, v);
            } catch (const incompatibility_error&) {
                ++rejected;
            }
        }
        c.require(rejected == 100, "rejected " + std::to_string(rejected) + "/100 noncommuting");
    });

    run(10, "cli_determinism", 30.0, [&](Criterion& c) {
        const std::string cli = SPECRV_CLI_PATH;
        const fs::path dir = fs::temp_directory_path();
        const auto shell = [&](const std::string& cmd) {
            const int rc = std::system(cmd.c_str());
            c.require(rc == 0, "command failed: " + cmd);
        };
        const fs::path f1a = dir / "specrv_acc_fig1_a.csv", f1b = dir / "specrv_acc_fig1_b.csv";
        const fs::path f3a = dir / "specrv_acc_fig3_a.csv", f3b = dir / "specrv_acc_fig3_b.csv";
        const fs::path va = dir / "specrv_acc_verify_a.txt", vb = dir / "specrv_acc_verify_b.txt";
        shell(cli + " figure --name fig1 --out " + f1a.string());
        shell(cli + " figure --name fig1 --out " + f1b.string());
        shell(cli + " figure --name fig3 --out " + f3a.string());
        shell(cli + " figure --name fig3 --out " + f3b.string());
        shell(cli + " verify --suite classical --seed 42 > " + va.string());
        shell(cli + " verify --suite classical --seed 42 > " + vb.string());
        c.require(same_file_bytes(f1a, f1b), "fig1 runs differ");
        c.require(same_file_bytes(f3a, f3b), "fig3 runs differ");
        c.require(same_file_bytes(va, vb), "verify runs differ");

        // fig1 carries the frozen value at y = 0.5
        const std::string csv = read_text_file(f1a.string());
        c.require(csv.find("\n0.5,") != std::string::npos, "fig1 lacks the y = 0.5 row");
        std::istringstream iss(csv.substr(csv.find("\n0.5,") + 5));
        double f_half = 0.0;
        iss >> f_half;
        c.require(std::abs(f_half - 0.2680324820339885) <= 1e-9,
                  "fig1 f(0.5) = " + format_g17(f_half));
        for (const auto& p : {f1a, f1b, f3a, f3b, va, vb}) fs::remove(p);
    });

    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criterion(s) failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
