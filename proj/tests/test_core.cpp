#include <doctest.h>

#include <cmath>

#include "lecam/core.hpp"
#include "lecam/json_io.hpp"
#include "lecam/random.hpp"

using namespace lecam;

namespace {

Distribution dist(std::vector<double> probs) {
    std::vector<std::string> outcomes;
    for (std::size_t i = 0; i < probs.size(); ++i) outcomes.push_back("x" + std::to_string(i));
    return Distribution(std::move(outcomes), std::move(probs));
}

}  // namespace

TEST_CASE("total variation is a metric in [0,1]") {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 2 + rng.uniform_index(5);
        Distribution a = dist(rng.random_prob_row(n));
        Distribution b = dist(rng.random_prob_row(n));
        Distribution c = dist(rng.random_prob_row(n));
        double ab = total_variation(a, b);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0 + 1e-12);
        CHECK(total_variation(b, a) == ab);
        CHECK(total_variation(a, a) == 0.0);
        CHECK(ab <= total_variation(a, c) + total_variation(c, b) + 1e-12);
    }
}

TEST_CASE("total variation known values") {
    Distribution p = dist({1.0, 0.0});
    Distribution q = dist({0.0, 1.0});
    CHECK(total_variation(p, q) == doctest::Approx(1.0));
    Distribution u = dist({0.5, 0.5});
    CHECK(total_variation(p, u) == doctest::Approx(0.5));
    Distribution a = dist({0.5, 0.4, 0.1});
    Distribution b = dist({0.1, 0.4, 0.5});
    CHECK(total_variation(a, b) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("data processing inequality under random kernels") {
    Rng rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t nx = 2 + rng.uniform_index(4);
        std::size_t ny = 2 + rng.uniform_index(4);
        Experiment e = rng.random_experiment("e", 2, nx);
        Kernel k = rng.random_kernel(e.outcomes, [&] {
            std::vector<std::string> ys;
            for (std::size_t j = 0; j < ny; ++j) ys.push_back("y" + std::to_string(j));
            return ys;
        }());
        Experiment f = apply_kernel(e, k);
        double before = total_variation(e.row_distribution(0), e.row_distribution(1));
        double after = total_variation(f.row_distribution(0), f.row_distribution(1));
        CHECK(after <= before + 1e-12);
    }
}

TEST_CASE("deterministic bijections preserve total variation exactly") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        Experiment e = rng.random_experiment("e", 2, 4);
        // reversal is a bijection on outcomes
        DeterministicMap rev(e.outcomes, {e.outcomes[3], e.outcomes[2], e.outcomes[1], e.outcomes[0]},
                             {3, 2, 1, 0});
        Experiment f = apply_map(e, rev);
        // reordering the outcomes permutes the summands, so allow 1-ulp noise
        double before = total_variation(e.row_distribution(0), e.row_distribution(1));
        double after = total_variation(f.row_distribution(0), f.row_distribution(1));
        CHECK(std::abs(after - before) <= 1e-15);
    }
}

TEST_CASE("kernel composition associates with application") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        Experiment e = rng.random_experiment("e", 3, 3);
        std::vector<std::string> ys = {"y0", "y1", "y2"};
        std::vector<std::string> zs = {"z0", "z1"};
        Kernel k1 = rng.random_kernel(e.outcomes, ys);
        Kernel k2 = rng.random_kernel(ys, zs);
        Experiment via_steps = apply_kernel(apply_kernel(e, k1), k2);
        Experiment via_composite = apply_kernel(e, compose_kernels(k1, k2));
        for (std::size_t th = 0; th < 3; ++th)
            for (std::size_t y = 0; y < 2; ++y)
                CHECK(via_steps.rows[th][y] ==
                      doctest::Approx(via_composite.rows[th][y]).epsilon(1e-12));
    }
}

TEST_CASE("identity kernel is neutral") {
    Rng rng(19);
    Experiment e = rng.random_experiment("e", 2, 4);
    Experiment f = apply_kernel(e, Kernel::identity(e.outcomes));
    for (std::size_t th = 0; th < 2; ++th)
        for (std::size_t x = 0; x < 4; ++x) CHECK(f.rows[th][x] == e.rows[th][x]);
}

TEST_CASE("validation rejects malformed inputs") {
    CHECK_THROWS_AS(dist({0.5, 0.6}), validation_error);
    CHECK_THROWS_AS(dist({-0.1, 1.1}), validation_error);
    CHECK_THROWS_AS(Experiment("e", {"0", "0"}, {"x"}, {{1.0}, {1.0}}), validation_error);
    CHECK_THROWS_AS(Experiment("e", {"0", "1"}, {"x", "y"}, {{1.0, 0.0}}), validation_error);
    CHECK_THROWS_AS(Kernel({"a"}, {"b"}, {{0.5}}), validation_error);
    CHECK_THROWS_AS(DeterministicMap({"a", "b"}, {"z"}, {0, 7}), validation_error);
}

TEST_CASE("serialization round-trips bit-exactly") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        Experiment e = rng.random_experiment("rt", 2 + rng.uniform_index(3),
                                             2 + rng.uniform_index(4));
        Experiment back = experiment_from_json(parse_json(canonical_dump(to_json(e))));
        CHECK(back.name == e.name);
        CHECK(back.parameters == e.parameters);
        CHECK(back.outcomes == e.outcomes);
        REQUIRE(back.rows.size() == e.rows.size());
        for (std::size_t th = 0; th < e.rows.size(); ++th)
            for (std::size_t x = 0; x < e.rows[th].size(); ++x)
                CHECK(back.rows[th][x] == e.rows[th][x]);  // bit-exact
    }
}

TEST_CASE("canonical dump is stable and sorted") {
    json j = parse_json(R"({"zeta": 1.5, "alpha": [1e-3, 2], "mid": {"b": true, "a": null}})");
    std::string s = canonical_dump(j);
    CHECK(s == canonical_dump(parse_json(s)));
    CHECK(s.find("\"alpha\"") < s.find("\"mid\""));
    CHECK(s.find("\"mid\"") < s.find("\"zeta\""));
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_json("{\n  \"a\": 1,\n  broken\n}");
        FAIL("expected parse failure");
    } catch (const validation_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
    }
}

TEST_CASE("point-mass experiment encodes a deterministic instance map") {
    Experiment e = point_mass_experiment({"i0", "i1"}, {{"i0", "yes"}, {"i1", "no"}});
    CHECK(e.rows[0][0] == 1.0);
    CHECK(e.rows[1][1] == 1.0);
    CHECK(e.rows[0][1] == 0.0);
}
