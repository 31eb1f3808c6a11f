#include <doctest.h>

#include <cmath>

#include "lecam/composition.hpp"
#include "lecam/random.hpp"

using namespace lecam;

namespace {

ChainSpec random_chain(Rng& rng, std::size_t k) {
    ChainSpec spec;
    spec.base = rng.random_experiment("base", 2 + rng.uniform_index(2), 2 + rng.uniform_index(2));
    std::vector<std::string> cur = spec.base.outcomes;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::string> next;
        std::size_t nn = 2 + rng.uniform_index(2);
        for (std::size_t j = 0; j < nn; ++j)
            next.push_back("s" + std::to_string(i) + "_" + std::to_string(j));
        spec.ideal.push_back(rng.random_kernel(cur, next));
        spec.approx.push_back(rng.random_kernel(cur, next));
        cur = next;
    }
    return spec;
}

}  // namespace

TEST_CASE("composed chains stay row-stochastic") {
    Rng rng(113);
    for (int trial = 0; trial < 50; ++trial) {
        ChainSpec spec = random_chain(rng, 2);
        for (bool approx : {false, true}) {
            Experiment e = compose_chain(spec, approx);
            for (const auto& row : e.rows) {
                double sum = 0.0;
                for (double v : row) {
                    CHECK(v >= 0.0);
                    sum += v;
                }
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("identical chains compose to the identical experiment") {
    Rng rng(127);
    ChainSpec spec = random_chain(rng, 3);
    spec.approx = spec.ideal;
    CompositionReport rep = verify_composition_bound(spec);
    CHECK(rep.delta_total <= 1e-9);
    CHECK(rep.eps_sum <= 1e-12);
    CHECK(rep.holds);
}

TEST_CASE("single-step chains reduce to one deviation measurement") {
    Rng rng(131);
    for (int trial = 0; trial < 30; ++trial) {
        ChainSpec spec = random_chain(rng, 1);
        CompositionReport rep = verify_composition_bound(spec);
        REQUIRE(rep.per_step_eps.size() == 1);
        CHECK(rep.eps_sum == doctest::Approx(rep.per_step_eps[0]));
        // one step: the end-to-end deficiency is bounded by that step's TV
        CHECK(rep.delta_total <= rep.per_step_eps[0] + 1e-7);
        CHECK(rep.holds);
    }
}

TEST_CASE("error accumulation over random chains") {
    Rng rng(137);
    for (int trial = 0; trial < 200; ++trial) {
        ChainSpec spec = random_chain(rng, 1 + rng.uniform_index(3));
        CompositionReport rep = verify_composition_bound(spec);
        CHECK(rep.holds);
        CHECK(rep.delta_total <= rep.eps_sum + 1e-7);
    }
}

TEST_CASE("chain validation rejects shape mismatches") {
    Rng rng(139);
    ChainSpec spec = random_chain(rng, 2);
    ChainSpec broken = spec;
    broken.approx.pop_back();
    CHECK_THROWS_AS(broken.validate(), validation_error);
    ChainSpec misordered = spec;
    std::swap(misordered.ideal[0], misordered.ideal[1]);
    CHECK_THROWS_AS(misordered.validate(), validation_error);
}

TEST_CASE("no-free-transfer terms on random triples") {
    Rng rng(149);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t np = 2 + rng.uniform_index(2);
        std::size_t nx = 2 + rng.uniform_index(2);
        Experiment es = rng.random_experiment("S", np, nx);
        Experiment et = rng.random_experiment("T", np, nx);
        std::vector<std::string> zs;
        std::size_t nz = 2 + rng.uniform_index(2);
        for (std::size_t j = 0; j < nz; ++j) zs.push_back("z" + std::to_string(j));
        NftReport rep = nft_terms(es, et, rng.random_kernel(es.outcomes, zs));
        CHECK(rep.holds);
        CHECK(rep.source_fidelity + rep.target_fidelity + rep.invariance_error >=
              rep.task_gap - 1e-7);
    }
}

TEST_CASE("identical tasks make the transfer inequality slack") {
    Rng rng(151);
    Experiment e = rng.random_experiment("E", 2, 3);
    Kernel t = rng.random_kernel(e.outcomes, {"z0", "z1"});
    NftReport rep = nft_terms(e, e, t);
    CHECK(rep.task_gap <= 1e-9);
    CHECK(rep.invariance_error <= 1e-12);
    CHECK(rep.holds);
}

TEST_CASE("nft rejects mismatched outcome spaces") {
    Rng rng(157);
    Experiment es = rng.random_experiment("S", 2, 3);
    Experiment et = rng.random_experiment("T", 2, 2);
    Kernel t = rng.random_kernel(es.outcomes, {"z0", "z1"});
    CHECK_THROWS_AS(nft_terms(es, et, t), validation_error);
}
