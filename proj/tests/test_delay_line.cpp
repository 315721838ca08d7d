#include "delaycomp/delay_line.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace delaycomp;

namespace {

Vector sc(double v) { return Vector::Constant(1, v); }

DelayLine scalar_line(const Grid& g, const std::vector<double>& vals) {
    std::vector<Vector> s;
    for (double v : vals) s.push_back(sc(v));
    return DelayLine(g, std::move(s));
}

} // namespace

TEST_CASE("shift_in moves samples toward the tail") {
    const Grid g(2.0, 2);
    DelayLine line = scalar_line(g, {1.0, 2.0, 3.0});
    line.shift_in(sc(5.0));
    CHECK(line.sample(0)(0) == 5.0);
    CHECK(line.sample(1)(0) == 1.0);
    CHECK(line.sample(2)(0) == 2.0);
}

TEST_CASE("tail and head readout") {
    const Grid g(2.0, 2);
    DelayLine line = scalar_line(g, {5.0, 1.0, 2.0});
    CHECK(line.head()(0) == 5.0);
    CHECK(line.tail()(0) == 2.0);
}

TEST_CASE("line vanishes after M zero-input shifts, bit-exact") {
    const Grid g(1.0, 8);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> vals(g.nodes());
    for (auto& v : vals) v = dist(rng);
    DelayLine line = scalar_line(g, vals);
    // after M shifts only the initial head can survive, parked at the tail node
    for (int i = 0; i < g.steps; ++i) line.shift_in(sc(0.0));
    for (int i = 0; i < g.steps; ++i) CHECK(line.sample(i)(0) == 0.0);
    CHECK(line.tail()(0) == vals[0]);
    // one more shift flushes it: the line is identically zero, bit-exact
    line.shift_in(sc(0.0));
    for (int i = 0; i <= g.steps; ++i) CHECK(line.sample(i)(0) == 0.0);
}

TEST_CASE("transport is exact: sample i equals the input from i steps ago") {
    const Grid g(1.0, 16);
    DelayLine line(g, 1);
    std::vector<double> inputs;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int k = 0; k < 40; ++k) {
        const double u = dist(rng);
        inputs.push_back(u);
        line.shift_in(sc(u));
    }
    for (int i = 0; i <= g.steps; ++i) {
        CHECK(line.sample(i)(0) == inputs[inputs.size() - 1 - i]);
    }
    // tail is the signal from M steps ago: phi(alpha, t) = u(t - alpha)
    CHECK(line.tail()(0) == inputs[inputs.size() - 1 - g.steps]);
}

TEST_CASE("L2 norm stays bounded under shifting") {
    const Grid g(1.0, 32);
    DelayLine line(g, 1);
    const double sup_u = 0.5;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-sup_u, sup_u);
    for (int k = 0; k < 200; ++k) {
        line.shift_in(sc(dist(rng)));
        CHECK(line.l2_norm() <= std::sqrt(g.length()) * sup_u + 1e-12);
    }
}

TEST_CASE("add_distributed_source") {
    const Grid g(1.0, 4);
    SampledKernel k;
    k.grid = g;
    k.samples.assign(g.nodes(), Matrix::Constant(1, 1, 2.0));

    DelayLine line(g, 1);
    SUBCASE("zero scalar leaves line unchanged") {
        line.add_distributed_source(k, sc(0.0));
        for (int i = 0; i <= g.steps; ++i) CHECK(line.sample(i)(0) == 0.0);
    }
    SUBCASE("constant kernel increments every sample by dt*g*s") {
        line.add_distributed_source(k, sc(3.0));
        for (int i = 0; i <= g.steps; ++i) {
            CHECK(line.sample(i)(0) == doctest::Approx(g.spacing * 2.0 * 3.0));
        }
    }
    SUBCASE("grid mismatch throws") {
        DelayLine other(Grid(1.0, 8), 1);
        CHECK_THROWS_AS(other.add_distributed_source(k, sc(1.0)), std::invalid_argument);
    }
}

TEST_CASE("resolvent_profile") {
    const Grid g(1.0, 10);
    Vector u = sc(2.0);

    SUBCASE("lambda = 0 gives the constant profile") {
        const DelayLine line = DelayLine::resolvent_profile(0.0, u, g);
        for (int i = 0; i <= g.steps; ++i) CHECK(line.sample(i)(0) == 2.0);
    }
    SUBCASE("zero u gives the zero profile") {
        const DelayLine line = DelayLine::resolvent_profile(1.5, Vector::Zero(1), g);
        for (int i = 0; i <= g.steps; ++i) CHECK(line.sample(i)(0) == 0.0);
    }
    SUBCASE("tail is e^{-lambda alpha} u") {
        const DelayLine line = DelayLine::resolvent_profile(1.0, u, g);
        CHECK(line.tail()(0) == doctest::Approx(std::exp(-1.0) * 2.0).epsilon(1e-14));
    }
    SUBCASE("discrete resolvent relation holds away from the head") {
        // lambda E_lambda u + d/dx (E_lambda u) = 0, backward differences
        const double lambda = 0.8;
        const DelayLine line = DelayLine::resolvent_profile(lambda, u, g);
        for (int i = 1; i <= g.steps; ++i) {
            const double diff = (line.sample(i)(0) - line.sample(i - 1)(0)) / g.spacing;
            CHECK(std::abs(lambda * line.sample(i)(0) + diff) < lambda * g.spacing * 2.0);
        }
    }
}

TEST_CASE("shift_in rejects dimension mismatch") {
    DelayLine line(Grid(1.0, 4), 2);
    CHECK_THROWS_AS(line.shift_in(sc(1.0)), std::invalid_argument);
}
