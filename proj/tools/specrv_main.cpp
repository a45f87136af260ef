// specrv command-line tool: figure data as CSV, identity-verification
// suites, and spectral decomposition of user-supplied Hermitian matrices.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage or parse error,
//             3 domain violation (non-Hermitian input, bad state, ...).

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specrv/classical_rv.hpp"
#include "specrv/io.hpp"
#include "specrv/matrix_spectral.hpp"
#include "specrv/oscillator.hpp"
#include "specrv/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_io = 1;
constexpr int exit_usage = 2;
constexpr int exit_domain = 3;

struct FigureOptions {
    std::string name;
    std::string out;
    std::string config_path;
    double sigma1 = 1.0 / std::sqrt(2.0);
    double sigma2 = 1.0 / std::sqrt(2.0);
    double rho = 0.0;
    double lo = 0.0, hi = 0.0;  // 0/0 means figure default
    int n = 0;
    double s_max = 60.0;
};

int run_fig1(const FigureOptions& opt) {
    // product density of two zero-mean Gaussians; the grid skips the log
    // singularity at y = 0 and lands exactly on +-k*ymax/n
    const double ymax = opt.hi > 0.0 ? opt.hi : 4.0;
    const int n_side = opt.n > 0 ? opt.n : 400;
    const specrv::BivariateGaussianParams p{0.0, 0.0, opt.sigma1, opt.sigma2, opt.rho};
    p.validate();
    std::vector<double> ys, fs;
    ys.reserve(2 * std::size_t(n_side));
    fs.reserve(2 * std::size_t(n_side));
    for (int k = n_side; k >= 1; --k) ys.push_back(-(double(k) * ymax) / double(n_side));
    for (int k = 1; k <= n_side; ++k) ys.push_back((double(k) * ymax) / double(n_side));
    for (double y : ys) fs.push_back(specrv::product_pdf_gaussian(p, y));
    specrv::write_csv(opt.out, {"y", "f"}, {ys, fs});
    return exit_ok;
}

int run_fig2(const FigureOptions& opt) {
    const specrv::GridSpec g{opt.lo != 0.0 || opt.hi != 0.0 ? opt.lo : -4.0,
                             opt.lo != 0.0 || opt.hi != 0.0 ? opt.hi : 4.0,
                             opt.n > 0 ? opt.n : 161};
    const specrv::QuasiDensity2D f = specrv::sampled_quasi_f(g, g);
    specrv::write_quasi2d_csv(opt.out, f);
    return exit_ok;
}

int run_fig3(const FigureOptions& opt) {
    const specrv::GridSpec g{opt.lo != 0.0 || opt.hi != 0.0 ? opt.lo : -12.0,
                             opt.lo != 0.0 || opt.hi != 0.0 ? opt.hi : 12.0,
                             opt.n > 0 ? opt.n : 1201};
    const specrv::GridDensity f = specrv::u_pdf(g, opt.s_max);
    specrv::write_density_csv(opt.out, f, "u", "f");
    return exit_ok;
}

int run_fig4(const FigureOptions& opt) {
    const specrv::GridSpec g{opt.lo != 0.0 || opt.hi != 0.0 ? opt.lo : 0.0,
                             opt.lo != 0.0 || opt.hi != 0.0 ? opt.hi : 6.0,
                             opt.n > 0 ? opt.n : 601};
    const specrv::BivariateGaussianParams p{0.0, 0.0, opt.sigma1, opt.sigma2, opt.rho};
    const specrv::CharFn phiy = specrv::product_charfn_gaussian(p);
    std::vector<double> ss, pu, py;
    for (int i = 0; i < g.n; ++i) {
        const double s = g.point(i);
        ss.push_back(s);
        pu.push_back(specrv::u_charfn(s));
        py.push_back(std::abs(phiy(s)));
    }
    specrv::write_csv(opt.out, {"s", "phi_U", "phi_Y"}, {ss, pu, py});
    return exit_ok;
}

int dispatch_figure(const FigureOptions& opt) {
    if (opt.name == "fig1") return run_fig1(opt);
    if (opt.name == "fig2") return run_fig2(opt);
    if (opt.name == "fig3") return run_fig3(opt);
    if (opt.name == "fig4") return run_fig4(opt);
    std::cerr << "unknown figure name: " << opt.name << " (expected fig1..fig4)\n";
    return exit_usage;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& config_path) {
    specrv::RunConfig cfg;
    if (!config_path.empty())
        cfg = specrv::config_from_json(nlohmann::json::parse(specrv::read_text_file(config_path)));

    specrv::VerificationReport rep;
    if (suite == "spectral") {
        rep = specrv::verify_spectral(seed);
    } else if (suite == "classical") {
        rep = specrv::verify_classical(seed, cfg.mc_n);
    } else if (suite == "quantum") {
        rep = specrv::verify_quantum(cfg.oscillator, cfg.grid);
    } else if (suite == "all") {
        rep = specrv::verify_all(seed, cfg.mc_n, cfg.oscillator, cfg.grid);
    } else {
        std::cerr << "unknown suite: " << suite << "\n";
        return exit_usage;
    }
    rep.print(std::cout);
    return rep.overall() ? exit_ok : exit_domain;
}

int run_spectral(const std::string& input, const std::string& out) {
    const std::string text = specrv::read_text_file(input);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = specrv::line_col_from_offset(text, e.byte);
        std::cerr << input << ":" << line << ":" << col << ": " << e.what() << "\n";
        return exit_usage;
    }
    const specrv::HermitianOperator a = specrv::operator_from_json(j);
    const specrv::SpectralDecomposition d = specrv::eigendecompose(a);
    specrv::write_text_file(out, specrv::decomposition_to_json_text(d));
    std::cout << "eigenvalues:";
    for (double v : d.eigenvalues) std::cout << " " << specrv::format_g17(v);
    std::cout << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral decomposition, random-variable and oscillator toolkit"};
    app.require_subcommand(1);

    FigureOptions fig;
    CLI::App* figure = app.add_subcommand("figure", "write figure data as CSV");
    figure->add_option("--name", fig.name, "fig1|fig2|fig3|fig4")->required();
    figure->add_option("--out", fig.out, "output CSV path")->required();
    figure->add_option("--config", fig.config_path, "JSON config path");
    figure->add_option("--sigma1", fig.sigma1, "Gaussian width (fig1, fig4)");
    figure->add_option("--sigma2", fig.sigma2, "Gaussian width (fig1, fig4)");
    figure->add_option("--rho", fig.rho, "correlation (fig1, fig4)");
    figure->add_option("--lo", fig.lo, "grid lower edge override");
    figure->add_option("--hi", fig.hi, "grid upper edge override (fig1: half-range)");
    figure->add_option("--n", fig.n, "grid point count override (fig1: points per side)");
    figure->add_option("--smax", fig.s_max, "inversion truncation (fig3)");

    std::string suite = "all";
    std::uint64_t seed = 12345;
    std::string verify_config;
    CLI::App* verify = app.add_subcommand("verify", "run the identity-verification suite");
    verify->add_option("--suite", suite, "all|classical|quantum|spectral");
    verify->add_option("--seed", seed, "seed for the randomized checks");
    verify->add_option("--config", verify_config, "JSON config path");

    std::string spec_in, spec_out;
    CLI::App* spectral = app.add_subcommand("spectral", "decompose a Hermitian matrix");
    spectral->add_option("--input", spec_in, "operator JSON path")->required();
    spectral->add_option("--out", spec_out, "decomposition JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*figure) return dispatch_figure(fig);
        if (*verify) return run_verify(suite, seed, verify_config);
        if (*spectral) return run_spectral(spec_in, spec_out);
        return exit_usage;
    } catch (const specrv::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return exit_io;
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_usage;
    } catch (const specrv::hermiticity_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return exit_domain;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        // malformed documents (missing fields, ragged arrays) are parse
        // errors; everything else raising invalid_argument is a domain issue
        const std::string what = e.what();
        if (what.find("JSON") != std::string::npos) {
            std::cerr << "parse error: " << what << "\n";
            return exit_usage;
        }
        std::cerr << "domain error: " << what << "\n";
        return exit_domain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    }
}
