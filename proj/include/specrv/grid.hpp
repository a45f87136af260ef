#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace specrv {

namespace detail {

inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const std::complex<double>& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace detail

// Uniform 1-D grid. n is odd so that symmetric grids (lo = -hi) carry an
// exact midpoint at zero and admit a stride-2 subgrid for error estimation.
struct GridSpec {
    double lo = -1.0;
    double hi = 1.0;
    int n = 3;

    void validate() const {
        if (!(lo < hi)) throw std::invalid_argument("GridSpec: requires lo < hi");
        if (n < 2) throw std::invalid_argument("GridSpec: requires n >= 2");
        if (n % 2 == 0) throw std::invalid_argument("GridSpec: requires odd n");
    }

    double step() const { return (hi - lo) / double(n - 1); }

    // Endpoint-weighted form: point(n-1-i) == -point(i) holds exactly on
    // symmetric grids, so odd integrands cancel to rounding error.
    double point(int i) const {
        return (lo * double(n - 1 - i) + hi * double(i)) / double(n - 1);
    }

    std::vector<double> points() const {
        std::vector<double> xs(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) xs[std::size_t(i)] = point(i);
        return xs;
    }
};

template <class T>
struct Integral {
    T value{};
    double error_estimate = 0.0;  // Richardson estimate |T_h - T_2h| / 3
};

// Composite trapezoid over the grid, with a Richardson error estimate taken
// against the stride-2 subgrid. Throws on non-finite integrand values.
template <class F>
auto integrate_1d(F&& f, const GridSpec& g) {
    g.validate();
    using T = std::decay_t<decltype(f(0.0))>;
    const double h = g.step();
    T fine{};
    T coarse{};
    for (int i = 0; i < g.n; ++i) {
        const double x = g.point(i);
        const T v = f(x);
        if (!detail::finite(v))
            throw std::domain_error("integrate_1d: non-finite integrand at x = " + detail::fmt(x));
        const double w = (i == 0 || i == g.n - 1) ? 0.5 : 1.0;
        fine += w * v;
        if (i % 2 == 0) coarse += w * v;  // endpoints keep weight 1/2
    }
    fine *= h;
    coarse *= 2.0 * h;
    return Integral<T>{fine, std::abs(fine - coarse) / 3.0};
}

// Product-rule trapezoid on gx x gy; same contract as integrate_1d.
template <class F>
auto integrate_2d(F&& f, const GridSpec& gx, const GridSpec& gy) {
    gx.validate();
    gy.validate();
    using T = std::decay_t<decltype(f(0.0, 0.0))>;
    const double hx = gx.step();
    const double hy = gy.step();
    T fine{};
    T coarse{};
    for (int i = 0; i < gx.n; ++i) {
        const double x = gx.point(i);
        const double wx = (i == 0 || i == gx.n - 1) ? 0.5 : 1.0;
        T row{};
        T row_coarse{};
        for (int j = 0; j < gy.n; ++j) {
            const double y = gy.point(j);
            const T v = f(x, y);
            if (!detail::finite(v))
                throw std::domain_error("integrate_2d: non-finite integrand at (x, y) = (" +
                                        detail::fmt(x) + ", " + detail::fmt(y) + ")");
            const double wy = (j == 0 || j == gy.n - 1) ? 0.5 : 1.0;
            row += wy * v;
            if (j % 2 == 0) row_coarse += wy * v;
        }
        fine += wx * row;
        if (i % 2 == 0) coarse += wx * row_coarse;
    }
    fine *= hx * hy;
    coarse *= 4.0 * hx * hy;
    return Integral<T>{fine, std::abs(fine - coarse) / 3.0};
}

}  // namespace specrv
