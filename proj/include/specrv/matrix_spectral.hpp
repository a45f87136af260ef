#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "specrv/grid.hpp"

namespace specrv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct hermiticity_error : std::invalid_argument {
    double defect;
    hermiticity_error(const std::string& what, double d)
        : std::invalid_argument(what), defect(d) {}
};

struct incompatibility_error : std::invalid_argument {
    double commutator_max;
    incompatibility_error(const std::string& what, double c)
        : std::invalid_argument(what), commutator_max(c) {}
};

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Dense complex square matrix with enforced Hermiticity: the observable with
// a purely discrete spectrum.
class HermitianOperator {
public:
    static constexpr double hermiticity_tol = 1e-12;

    explicit HermitianOperator(Matrix entries) : m_(std::move(entries)) {
        if (m_.rows() < 1 || m_.rows() != m_.cols())
            throw std::invalid_argument("HermitianOperator: requires a nonempty square matrix");
        const double defect = max_abs(m_ - m_.adjoint());
        if (!(defect <= hermiticity_tol))
            throw hermiticity_error(
                "HermitianOperator: ||A - A^dagger||_max = " + detail::fmt(defect), defect);
    }

    int dim() const { return int(m_.rows()); }
    const Matrix& matrix() const { return m_; }

private:
    Matrix m_;
};

// Normalized state: |<v|v> - 1| <= 1e-12.
class StateVector {
public:
    static constexpr double norm_tol = 1e-12;

    explicit StateVector(CVector amplitudes) : v_(std::move(amplitudes)) {
        if (v_.size() < 1) throw std::invalid_argument("StateVector: requires dim >= 1");
        const double defect = std::abs(v_.squaredNorm() - 1.0);
        if (!(defect <= norm_tol))
            throw std::invalid_argument("StateVector: |<v|v> - 1| = " + detail::fmt(defect));
    }

    int dim() const { return int(v_.size()); }
    const CVector& vector() const { return v_; }

private:
    CVector v_;
};

// Eigenvalues (ascending, distinct after degeneracy merging) with their
// orthogonal projectors. Satisfies P_i P_j = delta_ij P_i, sum P_i = I and
// sum a_i P_i = A within the stated tolerances.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<Matrix> projectors;
    int dim = 0;

    // Projector-algebra defect: the largest entrywise violation of
    // idempotence, mutual orthogonality, completeness and Hermiticity.
    double projector_defect() const {
        const auto k = projectors.size();
        const Matrix id = Matrix::Identity(dim, dim);
        Matrix sum = Matrix::Zero(dim, dim);
        double worst = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            sum += projectors[i];
            worst = std::max(worst, max_abs(projectors[i] * projectors[i] - projectors[i]));
            worst = std::max(worst, max_abs(projectors[i] - projectors[i].adjoint()));
            for (std::size_t j = i + 1; j < k; ++j)
                worst = std::max(worst, max_abs(projectors[i] * projectors[j]));
        }
        worst = std::max(worst, max_abs(sum - id));
        return worst;
    }

    double reconstruction_defect(const HermitianOperator& a) const {
        Matrix rec = Matrix::Zero(dim, dim);
        for (std::size_t i = 0; i < projectors.size(); ++i)
            rec += eigenvalues[i] * projectors[i];
        return max_abs(rec - a.matrix());
    }
};

// Probability mass function on real points (strictly ascending).
struct DiscreteDistribution {
    std::vector<double> points;
    std::vector<double> masses;

    static constexpr double mass_sum_tol = 1e-12;

    void validate() const {
        if (points.size() != masses.size())
            throw std::invalid_argument("DiscreteDistribution: size mismatch");
        double sum = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!(masses[i] >= 0.0))
                throw std::invalid_argument("DiscreteDistribution: negative mass");
            if (i > 0 && !(points[i] > points[i - 1]))
                throw std::invalid_argument("DiscreteDistribution: points not strictly ascending");
            sum += masses[i];
        }
        if (!(std::abs(sum - 1.0) <= mass_sum_tol))
            throw std::invalid_argument("DiscreteDistribution: masses sum to " + detail::fmt(sum));
    }

    double mean() const {
        double m = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) m += points[i] * masses[i];
        return m;
    }

    double variance() const {
        const double m = mean();
        double v = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i)
            v += (points[i] - m) * (points[i] - m) * masses[i];
        return v;
    }
};

namespace detail {

// Masses w_i = <v|P_i|v> are real and nonnegative up to rounding; clamp the
// rounding residue, reject anything larger.
inline double clamp_mass(double w) {
    if (w >= 0.0) return w;
    if (w >= -1e-12) return 0.0;
    throw std::logic_error("measurement mass < 0: " + fmt(w));
}

}  // namespace detail

// Spectral decomposition via a standard Hermitian eigensolver. Eigenvalues
// within degeneracy_tol of their neighbor share one projector of rank equal
// to the multiplicity; a negative degeneracy_tol selects the default
// 1e-9 * max|a_i|. Projectors are re-symmetrized to kill rounding drift.
inline SpectralDecomposition eigendecompose(const HermitianOperator& a,
                                            double degeneracy_tol = -1.0) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: eigensolver failed to converge");
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    const int dim = a.dim();

    const double scale = vals.cwiseAbs().maxCoeff();
    const double tol = degeneracy_tol >= 0.0 ? degeneracy_tol : 1e-9 * scale;

    SpectralDecomposition d;
    d.dim = dim;
    int i = 0;
    while (i < dim) {
        int j = i + 1;
        while (j < dim && vals[j] - vals[j - 1] <= tol) ++j;
        Matrix p = Matrix::Zero(dim, dim);
        double mean = 0.0;
        for (int k = i; k < j; ++k) {
            p += vecs.col(k) * vecs.col(k).adjoint();
            mean += vals[k];
        }
        p = 0.5 * (p + p.adjoint()).eval();
        d.eigenvalues.push_back(mean / double(j - i));
        d.projectors.push_back(std::move(p));
        i = j;
    }
    return d;
}

// E(lambda) = sum_{a_i <= lambda} P_i, with H(0) = 1 so the induced CDF is
// right-continuous (prob{X <= x} semantics).
inline Matrix spectral_family_at(const SpectralDecomposition& d, double lambda) {
    Matrix e = Matrix::Zero(d.dim, d.dim);
    for (std::size_t i = 0; i < d.eigenvalues.size(); ++i)
        if (d.eigenvalues[i] <= lambda) e += d.projectors[i];
    return e;
}

// Measurement statistics of the decomposed observable in state v:
// points a_i with masses w_i = <v|P_i|v>.
inline DiscreteDistribution measurement_distribution(const SpectralDecomposition& d,
                                                     const StateVector& v) {
    if (v.dim() != d.dim)
        throw std::invalid_argument("measurement_distribution: dimension mismatch");
    DiscreteDistribution out;
    out.points = d.eigenvalues;
    out.masses.reserve(d.projectors.size());
    for (const auto& p : d.projectors) {
        const Complex w = (v.vector().adjoint() * p * v.vector())(0, 0);
        out.masses.push_back(detail::clamp_mass(w.real()));
    }
    out.validate();
    return out;
}

// <v|A|v|>; the imaginary residue must vanish for Hermitian A.
inline double expectation(const HermitianOperator& a, const StateVector& v) {
    if (v.dim() != a.dim()) throw std::invalid_argument("expectation: dimension mismatch");
    const Complex e = (v.vector().adjoint() * a.matrix() * v.vector())(0, 0);
    if (!(std::abs(e.imag()) <= 1e-12))
        throw hermiticity_error("expectation: imaginary residue " + detail::fmt(e.imag()),
                                std::abs(e.imag()));
    return e.real();
}

// F(lambda) = <v|E(lambda)|v>: 0 below the spectrum, 1 above it,
// nondecreasing in between.
inline double cdf_at(const SpectralDecomposition& d, const StateVector& v, double lambda) {
    if (v.dim() != d.dim) throw std::invalid_argument("cdf_at: dimension mismatch");
    const Matrix e = spectral_family_at(d, lambda);
    const Complex f = (v.vector().adjoint() * e * v.vector())(0, 0);
    if (!(std::abs(f.imag()) <= 1e-12))
        throw hermiticity_error("cdf_at: imaginary residue " + detail::fmt(f.imag()),
                                std::abs(f.imag()));
    return f.real();
}

// AB - BA. Anti-Hermitian by construction for Hermitian inputs; checked.
inline Matrix commutator(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("commutator: dimension mismatch");
    Matrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    const double defect = max_abs(c + c.adjoint());
    if (!(defect <= 1e-10 * (1.0 + max_abs(c))))
        throw std::logic_error("commutator: result not anti-Hermitian");
    return c;
}

// Joint measurement statistics over eigenvalue pairs (a, b) of two
// commuting observables.
struct JointEntry {
    double a = 0.0;
    double b = 0.0;
    double mass = 0.0;
};

struct JointDistribution {
    std::vector<JointEntry> entries;  // lexicographic in (a, b)

    // Marginal over b: a-values repeat in consecutive runs with exactly
    // equal doubles, so no merge tolerance is needed.
    DiscreteDistribution marginal_a() const {
        DiscreteDistribution out;
        for (const auto& e : entries) {
            if (!out.points.empty() && e.a == out.points.back()) {
                out.masses.back() += e.mass;
            } else {
                out.points.push_back(e.a);
                out.masses.push_back(e.mass);
            }
        }
        return out;
    }

    // Marginal over a: the same b-eigenvalue recomputed in different
    // a-eigenspaces differs by rounding, so merge within merge_tol.
    DiscreteDistribution marginal_b(double merge_tol) const {
        std::vector<std::pair<double, double>> bm;
        bm.reserve(entries.size());
        for (const auto& e : entries) bm.emplace_back(e.b, e.mass);
        std::sort(bm.begin(), bm.end());
        DiscreteDistribution out;
        std::size_t i = 0;
        while (i < bm.size()) {
            std::size_t j = i + 1;
            double mass = bm[i].second;
            double bsum = bm[i].first;
            while (j < bm.size() && bm[j].first - bm[j - 1].first <= merge_tol) {
                mass += bm[j].second;
                bsum += bm[j].first;
                ++j;
            }
            out.points.push_back(bsum / double(j - i));
            out.masses.push_back(mass);
            i = j;
        }
        return out;
    }
};

// Default compatibility gate: scale-invariant commutator test.
inline double default_compatibility_tol(const HermitianOperator& a, const HermitianOperator& b) {
    return 1e-10 * max_abs(a.matrix()) * max_abs(b.matrix());
}

// Joint distribution of two compatible observables: diagonalize A, then
// diagonalize B restricted to each A-eigenspace; masses are squared overlaps
// of the simultaneous eigenvectors with v. Noncommuting inputs are rejected
// carrying the measured commutator norm: no simultaneous eigenbasis exists.
inline JointDistribution joint_distribution(const HermitianOperator& a,
                                            const HermitianOperator& b, const StateVector& v,
                                            double tol = -1.0) {
    if (a.dim() != b.dim() || v.dim() != a.dim())
        throw std::invalid_argument("joint_distribution: dimension mismatch");
    if (tol < 0.0) tol = default_compatibility_tol(a, b);
    const Matrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    const double cmax = max_abs(c);
    if (!(cmax <= tol))
        throw incompatibility_error(
            "joint_distribution: ||AB - BA||_max = " + detail::fmt(cmax) +
                " exceeds tol = " + detail::fmt(tol) + "; no simultaneous eigenbasis",
            cmax);

    Eigen::SelfAdjointEigenSolver<Matrix> solver_a(a.matrix());
    if (solver_a.info() != Eigen::Success)
        throw std::runtime_error("joint_distribution: eigensolver failed");
    const auto& avals = solver_a.eigenvalues();
    const auto& avecs = solver_a.eigenvectors();
    const int dim = a.dim();
    const double tol_a = 1e-9 * avals.cwiseAbs().maxCoeff();

    JointDistribution out;
    double bscale = 0.0;
    struct Group {
        double a = 0.0;
        std::vector<double> bvals;
        std::vector<double> masses;
    };
    std::vector<Group> groups;

    int i = 0;
    while (i < dim) {
        int j = i + 1;
        while (j < dim && avals[j] - avals[j - 1] <= tol_a) ++j;
        const int m = j - i;
        const Matrix basis = avecs.middleCols(i, m);
        double amean = 0.0;
        for (int k = i; k < j; ++k) amean += avals[k];

        const Matrix b_restricted = basis.adjoint() * b.matrix() * basis;
        Eigen::SelfAdjointEigenSolver<Matrix> solver_b(
            Matrix(0.5 * (b_restricted + b_restricted.adjoint())));
        if (solver_b.info() != Eigen::Success)
            throw std::runtime_error("joint_distribution: eigensolver failed");
        const CVector overlap = basis.adjoint() * v.vector();

        Group g;
        g.a = amean / double(m);
        for (int l = 0; l < m; ++l) {
            const double bval = solver_b.eigenvalues()[l];
            const Complex amp = solver_b.eigenvectors().col(l).dot(overlap);
            g.bvals.push_back(bval);
            g.masses.push_back(std::norm(amp));
            bscale = std::max(bscale, std::abs(bval));
        }
        groups.push_back(std::move(g));
        i = j;
    }

    // merge near-degenerate b-values within each a-eigenspace
    const double tol_b = 1e-9 * bscale;
    for (const auto& g : groups) {
        std::size_t l = 0;
        while (l < g.bvals.size()) {
            std::size_t r = l + 1;
            double mass = g.masses[l];
            double bsum = g.bvals[l];
            while (r < g.bvals.size() && g.bvals[r] - g.bvals[r - 1] <= tol_b) {
                mass += g.masses[r];
                bsum += g.bvals[r];
                ++r;
            }
            out.entries.push_back({g.a, bsum / double(r - l), mass});
            l = r;
        }
    }
    return out;
}

}  // namespace specrv
