#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numeric>

#include "specrv/matrix_spectral.hpp"
#include "specrv/random.hpp"

using namespace specrv;

namespace {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
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

}  // namespace

TEST_CASE("HermitianOperator rejects non-Hermitian input with the measured defect") {
    Matrix bad(2, 2);
    bad << 0, 1e-6, 0, 0;
    try {
        HermitianOperator a(bad);
        FAIL("expected hermiticity_error");
    } catch (const hermiticity_error& e) {
        REQUIRE(e.defect == Catch::Approx(1e-6).margin(1e-18));
    }
    REQUIRE_THROWS_AS(HermitianOperator(Matrix(0, 0)), std::invalid_argument);
    REQUIRE_THROWS_AS(HermitianOperator(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("StateVector enforces normalization") {
    REQUIRE_THROWS_AS(StateVector((CVector(2) << 1.0, 1.0).finished()), std::invalid_argument);
    REQUIRE_NOTHROW(StateVector((CVector(2) << 1.0, 0.0).finished()));
}

TEST_CASE("Pauli-Y decomposes into (I -+ A)/2 projectors") {
    const HermitianOperator a(pauli_y());
    const auto d = eigendecompose(a);
    REQUIRE(d.eigenvalues.size() == 2);
    REQUIRE(d.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-13));
    REQUIRE(d.eigenvalues[1] == Catch::Approx(1.0).margin(1e-13));
    const Matrix id = Matrix::Identity(2, 2);
    REQUIRE(max_abs(d.projectors[0] - 0.5 * (id - a.matrix())) < 1e-12);
    REQUIRE(max_abs(d.projectors[1] - 0.5 * (id + a.matrix())) < 1e-12);
    REQUIRE(d.reconstruction_defect(a) < 1e-12);
    REQUIRE(d.projector_defect() < 1e-12);
}

TEST_CASE("identity collapses to a single projector under degeneracy merging") {
    const auto d = eigendecompose(HermitianOperator(Matrix::Identity(2, 2)));
    REQUIRE(d.eigenvalues.size() == 1);
    REQUIRE(d.eigenvalues[0] == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(max_abs(d.projectors[0] - Matrix::Identity(2, 2)) < 1e-13);
}

TEST_CASE("random 4x4 reconstructs from its spectral decomposition") {
    NormalStream rng(2024);
    const HermitianOperator a(random_hermitian(rng, 4));
    const auto d = eigendecompose(a);
    REQUIRE(d.reconstruction_defect(a) < 1e-10);
    REQUIRE(d.projector_defect() < 1e-10);
}

TEST_CASE("spectral family takes its three piecewise values") {
    const HermitianOperator a(pauli_y());
    const auto d = eigendecompose(a);
    const Matrix id = Matrix::Identity(2, 2);
    REQUIRE(max_abs(spectral_family_at(d, 0.0) - 0.5 * (id - a.matrix())) < 1e-12);
    REQUIRE(max_abs(spectral_family_at(d, d.eigenvalues.front() - 1.0)) == 0.0);
    REQUIRE(max_abs(spectral_family_at(d, d.eigenvalues.back() + 1.0) - id) < 1e-12);
    // H(0) = 1: the family is right-continuous, so E evaluated exactly at an
    // eigenvalue includes its projector
    REQUIRE(max_abs(spectral_family_at(d, d.eigenvalues.front()) - 0.5 * (id - a.matrix())) <
            1e-12);
    // E(lambda) is itself a projector
    const Matrix e = spectral_family_at(d, 0.0);
    REQUIRE(max_abs(e * e - e) < 1e-12);
}

TEST_CASE("spectral family is nested: E(l1) E(l2) = E(l1) for l1 <= l2") {
    NormalStream rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const HermitianOperator a(random_hermitian(rng, 5));
        const auto d = eigendecompose(a);
        const double lo = d.eigenvalues.front();
        const double hi = d.eigenvalues.back();
        for (double t : {0.25, 0.5, 0.9}) {
            const Matrix e1 = spectral_family_at(d, lo + 0.3 * (hi - lo));
            const Matrix e2 = spectral_family_at(d, lo + t * (hi - lo) + 0.3);
            if (lo + 0.3 * (hi - lo) <= lo + t * (hi - lo) + 0.3)
                REQUIRE(max_abs(e1 * e2 - e1) < 1e-10);
        }
    }
}

TEST_CASE("measurement distribution of Pauli-Y in (1, 0) is a fair coin") {
    const auto d = eigendecompose(HermitianOperator(pauli_y()));
    const StateVector v((CVector(2) << 1.0, 0.0).finished());
    const auto dist = measurement_distribution(d, v);
    REQUIRE(dist.points[0] == Catch::Approx(-1.0).margin(1e-13));
    REQUIRE(dist.masses[0] == Catch::Approx(0.5).margin(1e-13));
    REQUIRE(dist.masses[1] == Catch::Approx(0.5).margin(1e-13));
    REQUIRE_NOTHROW(dist.validate());
}

TEST_CASE("an eigenvector concentrates the whole mass on its eigenvalue") {
    Matrix a(2, 2);
    a << 2, 0, 0, 5;
    const auto d = eigendecompose(HermitianOperator(a));
    const StateVector v((CVector(2) << 0.0, 1.0).finished());
    const auto dist = measurement_distribution(d, v);
    REQUIRE(dist.masses[0] == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(dist.masses[1] == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("measurement mean equals the direct quadratic form") {
    NormalStream rng(77);
    const HermitianOperator a(random_hermitian(rng, 3));
    const StateVector v = random_state(rng, 3);
    const auto dist = measurement_distribution(eigendecompose(a), v);
    REQUIRE(std::abs(dist.mean() - expectation(a, v)) < 1e-10);
    REQUIRE_THROWS_AS(measurement_distribution(eigendecompose(a), random_state(rng, 4)),
                      std::invalid_argument);
}

TEST_CASE("expectation dual route agrees on 100 seeded pairs") {
    NormalStream rng(31415);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 2 + trial % 6;
        const HermitianOperator a(random_hermitian(rng, dim));
        const StateVector v = random_state(rng, dim);
        const auto dist = measurement_distribution(eigendecompose(a), v);
        REQUIRE(std::abs(dist.mean() - expectation(a, v)) < 1e-10);
        REQUIRE(std::abs(dist.masses[0] * 0.0 +
                         std::accumulate(dist.masses.begin(), dist.masses.end(), 0.0) - 1.0) <
                1e-12);
    }
}

TEST_CASE("cdf_at walks from zero to one") {
    const auto d = eigendecompose(HermitianOperator(pauli_y()));
    const StateVector v((CVector(2) << 1.0, 0.0).finished());
    REQUIRE(cdf_at(d, v, 0.0) == Catch::Approx(0.5).margin(1e-13));
    REQUIRE(cdf_at(d, v, -1.5) == Catch::Approx(0.0).margin(1e-13));
    REQUIRE(cdf_at(d, v, 1.5) == Catch::Approx(1.0).margin(1e-13));
    // monotone along a sweep
    double prev = -1.0;
    for (double lam = -2.0; lam <= 2.0; lam += 0.25) {
        const double f = cdf_at(d, v, lam);
        REQUIRE(f >= prev - 1e-14);
        prev = f;
    }
}

TEST_CASE("commutator identities for the Pauli matrices") {
    const HermitianOperator x(pauli_x()), y(pauli_y());
    REQUIRE(max_abs(commutator(x, y) - Complex(0, 2) * pauli_z()) < 1e-14);
    REQUIRE(max_abs(commutator(x, x)) == 0.0);
    Matrix d1(2, 2), d2(2, 2);
    d1 << 1, 0, 0, 2;
    d2 << -3, 0, 0, 7;
    REQUIRE(max_abs(commutator(HermitianOperator(d1), HermitianOperator(d2))) == 0.0);
    REQUIRE_THROWS_AS(commutator(x, HermitianOperator(Matrix::Identity(3, 3))),
                      std::invalid_argument);
}

TEST_CASE("joint distribution of commuting diagonal operators") {
    Matrix a(2, 2), b(2, 2);
    a << 1, 0, 0, 2;
    b << 3, 0, 0, 4;
    const StateVector v((CVector(2) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)).finished());
    const auto joint = joint_distribution(HermitianOperator(a), HermitianOperator(b), v);
    REQUIRE(joint.entries.size() == 2);
    REQUIRE(joint.entries[0].a == Catch::Approx(1.0));
    REQUIRE(joint.entries[0].b == Catch::Approx(3.0));
    REQUIRE(joint.entries[0].mass == Catch::Approx(0.5).margin(1e-13));
    REQUIRE(joint.entries[1].a == Catch::Approx(2.0));
    REQUIRE(joint.entries[1].b == Catch::Approx(4.0));
    REQUIRE(joint.entries[1].mass == Catch::Approx(0.5).margin(1e-13));
}

TEST_CASE("joint distribution with the identity reproduces the single-operator law") {
    NormalStream rng(8);
    const HermitianOperator a(random_hermitian(rng, 4));
    const HermitianOperator b(Matrix::Identity(4, 4));
    const StateVector v = random_state(rng, 4);
    const auto joint = joint_distribution(a, b, v);
    const auto single = measurement_distribution(eigendecompose(a), v);
    const auto marg = joint.marginal_a();
    REQUIRE(marg.points.size() == single.points.size());
    for (std::size_t i = 0; i < marg.points.size(); ++i) {
        REQUIRE(marg.points[i] == Catch::Approx(single.points[i]).margin(1e-12));
        REQUIRE(marg.masses[i] == Catch::Approx(single.masses[i]).margin(1e-10));
        REQUIRE(joint.entries[i].b == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("noncommuting Pauli pair is rejected with the measured commutator") {
    const StateVector v((CVector(2) << 1.0, 0.0).finished());
    try {
        joint_distribution(HermitianOperator(pauli_x()), HermitianOperator(pauli_y()), v);
        FAIL("expected incompatibility_error");
    } catch (const incompatibility_error& e) {
        REQUIRE(e.commutator_max == Catch::Approx(2.0).margin(1e-12));
    }
}

TEST_CASE("commuting polynomial pairs pass with consistent marginals") {
    NormalStream rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 2 + trial % 5;
        const Matrix h = random_hermitian(rng, dim);
        const HermitianOperator a(real_polynomial(h, rng));
        const HermitianOperator b(real_polynomial(h, rng));
        const StateVector v = random_state(rng, dim);
        const auto joint = joint_distribution(a, b, v);

        double total = 0.0;
        for (const auto& e : joint.entries) {
            REQUIRE(e.mass >= 0.0);
            total += e.mass;
        }
        REQUIRE(total == Catch::Approx(1.0).margin(1e-12));

        const auto ma = joint.marginal_a();
        const auto sa = measurement_distribution(eigendecompose(a), v);
        REQUIRE(ma.points.size() == sa.points.size());
        for (std::size_t i = 0; i < ma.points.size(); ++i)
            REQUIRE(std::abs(ma.masses[i] - sa.masses[i]) < 1e-10);
    }
}

TEST_CASE("independent random pairs are incompatible") {
    NormalStream rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 2 + trial % 5;
        const HermitianOperator a(random_hermitian(rng, dim));
        const HermitianOperator b(random_hermitian(rng, dim));
        const StateVector v = random_state(rng, dim);
        REQUIRE_THROWS_AS(joint_distribution(a, b, v), incompatibility_error);
    }
}

TEST_CASE("DiscreteDistribution validation catches malformed data") {
    DiscreteDistribution d;
    d.points = {0.0, 1.0};
    d.masses = {0.5, 0.6};
    REQUIRE_THROWS_AS(d.validate(), std::invalid_argument);
    d.masses = {-0.1, 1.1};
    REQUIRE_THROWS_AS(d.validate(), std::invalid_argument);
    d.points = {1.0, 0.0};
    d.masses = {0.5, 0.5};
    REQUIRE_THROWS_AS(d.validate(), std::invalid_argument);
}
