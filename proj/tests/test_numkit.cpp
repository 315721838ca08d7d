#include "delaycomp/numkit.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace delaycomp;

namespace {

Matrix random_bounded(std::mt19937& rng, int n, double radius) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix A(n, n);
    for (int i = 0; i < n * n; ++i) A(i / n, i % n) = dist(rng);
    const double r = A.eigenvalues().cwiseAbs().maxCoeff();
    if (r > radius) A *= radius / r;
    return A;
}

} // namespace

TEST_CASE("mat_exp of zero matrix is identity") {
    const Matrix E = mat_exp(Matrix::Zero(2, 2), 5.0);
    CHECK((E - Matrix::Identity(2, 2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("mat_exp of rotation generator") {
    Matrix J{{0.0, 1.0}, {-1.0, 0.0}};
    const Matrix E = mat_exp(J, std::numbers::pi / 2);
    Matrix expected{{0.0, 1.0}, {-1.0, 0.0}};
    CHECK((E - expected).norm() < 1e-14);
}

TEST_CASE("mat_exp scalar case") {
    const Matrix E = mat_exp(Matrix::Constant(1, 1, 1.0), std::log(2.0));
    CHECK(E(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("mat_exp rejects bad input") {
    CHECK_THROWS_AS(mat_exp(Matrix::Zero(2, 3), 1.0), std::invalid_argument);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(mat_exp(bad, 1.0), std::domain_error);
}

TEST_CASE("mat_exp semigroup and inverse properties") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> td(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix A = random_bounded(rng, 4, 2.0);
        const double s = td(rng), t = td(rng);
        const Matrix lhs = mat_exp(A, s) * mat_exp(A, t);
        const Matrix rhs = mat_exp(A, s + t);
        CHECK((lhs - rhs).norm() / rhs.norm() < 1e-10);
        const Matrix round = mat_exp(A, t) * mat_exp(A, -t);
        CHECK((round - Matrix::Identity(4, 4)).norm() < 1e-10);
    }
}

TEST_CASE("sample_exp_kernel trivial and scalar cases") {
    const Grid g(1.0, 10);
    Matrix v = Matrix::Constant(2, 1, 3.0);

    SUBCASE("A = 0 gives constant samples") {
        const auto k = sample_exp_kernel(Matrix::Zero(2, 2), v, g);
        for (const auto& s : k.samples) CHECK((s - v).norm() == doctest::Approx(0.0));
    }
    SUBCASE("scalar forward samples e^{a i dx} v") {
        const double a = 0.7;
        const auto k = sample_exp_kernel(Matrix::Constant(1, 1, a),
                                         Matrix::Constant(1, 1, 2.0), g);
        for (int i = 0; i <= g.steps; ++i) {
            CHECK(k.samples[i](0, 0) ==
                  doctest::Approx(std::exp(a * g.node(i)) * 2.0).epsilon(1e-12));
        }
    }
    SUBCASE("reflected endpoints") {
        const double a = -0.4;
        const auto k = sample_exp_kernel(Matrix::Constant(1, 1, a),
                                         Matrix::Constant(1, 1, 2.0), g,
                                         KernelDirection::Reflected);
        CHECK(k.samples[g.steps](0, 0) == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(k.samples[0](0, 0) == doctest::Approx(std::exp(a) * 2.0).epsilon(1e-12));
    }
    SUBCASE("shape mismatch throws") {
        CHECK_THROWS_AS(sample_exp_kernel(Matrix::Zero(2, 2), Matrix::Zero(3, 1), g),
                        std::invalid_argument);
    }
}

TEST_CASE("trapezoid_integral basics") {
    const Grid g(2.0, 100);
    SampledKernel k;
    k.grid = g;
    k.samples.assign(g.nodes(), Matrix::Constant(1, 1, 3.0));

    SUBCASE("zero profile integrates to zero") {
        std::vector<Vector> zero(g.nodes(), Vector::Zero(1));
        CHECK(trapezoid_integral(k, zero)(0) == doctest::Approx(0.0));
    }
    SUBCASE("constant kernel against constant profile gives tau * b") {
        std::vector<Vector> one(g.nodes(), Vector::Ones(1));
        CHECK(trapezoid_integral(k, one)(0) == doctest::Approx(6.0).epsilon(1e-13));
    }
    SUBCASE("grid mismatch throws") {
        std::vector<Vector> wrong(5, Vector::Zero(1));
        CHECK_THROWS_AS(trapezoid_integral(k, wrong), std::invalid_argument);
    }
}

TEST_CASE("trapezoid rule is second order on smooth integrands") {
    // kernel e^{a x} b against the unit profile; exact integral b(e^{a tau}-1)/a
    const double a = 1.3, b = 2.0, tau = 1.5;
    const double exact = b * (std::exp(a * tau) - 1.0) / a;
    double prev_err = 0.0;
    double order = 0.0;
    for (int M : {50, 100, 200, 400}) {
        const Grid g(tau, M);
        const auto k = sample_exp_kernel(Matrix::Constant(1, 1, a),
                                         Matrix::Constant(1, 1, b), g);
        std::vector<Vector> one(g.nodes(), Vector::Ones(1));
        const double err = std::abs(trapezoid_integral(k, one)(0) - exact);
        if (prev_err > 0.0) order = std::log2(prev_err / err);
        prev_err = err;
    }
    CHECK(order >= 1.9);
}

TEST_CASE("grid invariant: length is spacing times steps") {
    const Grid g(0.7, 7);
    CHECK(g.length() == g.spacing * g.steps);
    CHECK_THROWS_AS(Grid(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(-1.0, 5), std::invalid_argument);
}
