#include <doctest.h>

#include <cmath>

#include "lecam/lp.hpp"
#include "lecam/random.hpp"

using namespace lecam;
using lecam::lp::Problem;
using lecam::lp::Result;
using lecam::lp::Status;

TEST_CASE("textbook maximization") {
    // min -x1 - 2 x2  s.t.  x1 + x2 <= 4, x1 <= 2
    Problem p;
    p.n_vars = 2;
    p.c = {-1.0, -2.0};
    p.a_ub = {{1.0, 1.0}, {1.0, 0.0}};
    p.b_ub = {4.0, 2.0};
    Result r = lp::solve(p);
    REQUIRE(r.status == Status::optimal);
    CHECK(r.objective == doctest::Approx(-8.0).epsilon(1e-10));
    CHECK(r.x[0] + r.x[1] == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("equality constraints") {
    // min x1 + x2  s.t.  x1 + 2 x2 = 3, x1, x2 >= 0
    Problem p;
    p.n_vars = 2;
    p.c = {1.0, 1.0};
    p.a_eq = {{1.0, 2.0}};
    p.b_eq = {3.0};
    Result r = lp::solve(p);
    REQUIRE(r.status == Status::optimal);
    CHECK(r.objective == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(r.x[1] == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("infeasible system detected") {
    Problem p;
    p.n_vars = 1;
    p.c = {1.0};
    p.a_eq = {{1.0}};
    p.b_eq = {2.0};
    p.a_ub = {{1.0}};
    p.b_ub = {1.0};
    CHECK(lp::solve(p).status == Status::infeasible);
}

TEST_CASE("unbounded objective detected") {
    Problem p;
    p.n_vars = 1;
    p.c = {-1.0};
    CHECK(lp::solve(p).status == Status::unbounded);
}

TEST_CASE("negative right-hand sides handled") {
    // -x1 <= -2 means x1 >= 2
    Problem p;
    p.n_vars = 1;
    p.c = {1.0};
    p.a_ub = {{-1.0}};
    p.b_ub = {-2.0};
    Result r = lp::solve(p);
    REQUIRE(r.status == Status::optimal);
    CHECK(r.x[0] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("random feasible programs: solution satisfies all constraints") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng.uniform_index(4);
        std::size_t m = 1 + rng.uniform_index(3);
        Problem p;
        p.n_vars = n;
        for (std::size_t j = 0; j < n; ++j) p.c.push_back(rng.uniform() - 0.5);
        // rows with positive coefficients and positive rhs: origin feasible,
        // optimum finite when costs are made nonnegative
        for (double& cj : p.c) cj = std::abs(cj);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> row;
            for (std::size_t j = 0; j < n; ++j) row.push_back(rng.uniform());
            p.a_ub.push_back(row);
            p.b_ub.push_back(0.5 + rng.uniform());
        }
        Result r = lp::solve(p);
        REQUIRE(r.status == Status::optimal);
        CHECK(r.objective == doctest::Approx(0.0).epsilon(1e-9));  // min of nonneg costs at origin
        for (std::size_t i = 0; i < m; ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += p.a_ub[i][j] * r.x[j];
            CHECK(lhs <= p.b_ub[i] + 1e-8);
        }
    }
}
