#include <doctest.h>

#include <cmath>

#include "lecam/deficiency.hpp"
#include "lecam/shannon.hpp"

using namespace lecam;

TEST_CASE("channel rows are distributions and identity at p=0") {
    ChannelSpec noiseless(0.0, 3);
    Kernel k0 = bsc_kernel(noiseless);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) CHECK(k0.matrix[i][j] == (i == j ? 1.0 : 0.0));

    ChannelSpec noisy(0.2, 4);
    Kernel k = bsc_kernel(noisy);
    for (const auto& row : k.matrix) {
        double sum = 0.0;
        for (double v : row) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    // flipping d bits costs p^d (1-p)^(n-d)
    CHECK(k.matrix[0][3] == doctest::Approx(0.2 * 0.2 * 0.8 * 0.8).epsilon(1e-12));
}

TEST_CASE("hamming distance and ml decoding") {
    CHECK(hamming_distance("0000", "1111") == 4);
    CHECK(hamming_distance("0101", "0110") == 2);
    Codebook cb = Codebook::repetition(3);
    ChannelSpec spec(0.1, 3);
    DecisionRule dec = ml_decoder(cb, spec);
    // majority vote on every word
    const auto& target = dec.map.target;
    std::vector<std::size_t> expected = {0, 0, 0, 1, 0, 1, 1, 1};  // 000..111
    for (std::size_t w = 0; w < 8; ++w) CHECK(target[w] == expected[w]);
}

TEST_CASE("deficiency against the identity equals the decoding error") {
    for (double p : {0.05, 0.1, 0.3}) {
        for (std::size_t n : {1u, 3u, 5u}) {
            ChannelSpec spec(p, n);
            Codebook cb = Codebook::repetition(n);
            CodingReport rep = coding_deficiency(cb, spec, ml_decoder(cb, spec));
            CHECK(std::abs(rep.deficiency_value - rep.max_message_error) <= 1e-12);
        }
    }
}

TEST_CASE("repetition-code errors at p=0.1 have closed forms") {
    auto rows = repetition_sweep(0.1, {1, 3, 5});
    CHECK(std::abs(rows[0].max_error - 0.1) <= 1e-12);
    CHECK(std::abs(rows[1].max_error - 0.028) <= 1e-12);
    CHECK(std::abs(rows[2].max_error - 0.00856) <= 1e-12);
    CHECK(rows[0].rate == doctest::Approx(1.0));
    CHECK(rows[2].rate == doctest::Approx(0.2));
    CHECK(rows[0].capacity == doctest::Approx(1.0 - binary_entropy(0.1)).epsilon(1e-12));
}

TEST_CASE("no decoder beats maximum likelihood on symmetric codebooks") {
    // tie-free or fully symmetric instances: the exhaustive max-error optimum
    // coincides with the ml decoder's
    struct Instance {
        Codebook cb;
        ChannelSpec spec;
    };
    std::vector<Instance> cases = {
        {Codebook::repetition(3), ChannelSpec(0.1, 3)},
        {Codebook::repetition(3), ChannelSpec(0.3, 3)},
        {Codebook({"00", "01", "10", "11"}), ChannelSpec(0.1, 2)},
    };
    for (auto& inst : cases) {
        CodingReport ml = coding_deficiency(inst.cb, inst.spec, ml_decoder(inst.cb, inst.spec));
        auto [source, target] = coding_experiments(inst.cb, inst.spec);
        double best = 1.0;
        enumerate_deterministic_rules(
            source.outcomes, target.outcomes, [&](const DecisionRule& rule) {
                double worst = 0.0;
                for (std::size_t m = 0; m < inst.cb.n_messages(); ++m) {
                    double err = 0.0;
                    const auto& row = source.rows[m];
                    for (std::size_t w = 0; w < row.size(); ++w)
                        if (rule.map.target[w] != m) err += row[w];
                    worst = std::max(worst, err);
                }
                best = std::min(best, worst);
            });
        CHECK(ml.max_message_error <= best + 1e-12);
    }
}

TEST_CASE("full simulation deficiency never exceeds the decoding error") {
    for (std::size_t n : {1u, 3u}) {
        ChannelSpec spec(0.1, n);
        Codebook cb = Codebook::repetition(n);
        auto [source, target] = coding_experiments(cb, spec);
        CodingReport ml = coding_deficiency(cb, spec, ml_decoder(cb, spec));
        CHECK(deficiency(source, target).value <= ml.max_message_error + 1e-9);
    }
}

TEST_CASE("rate and guards") {
    CHECK(Codebook::repetition(5).rate() == doctest::Approx(0.2));
    CHECK_THROWS_AS(ChannelSpec(0.7, 2), validation_error);
    CHECK_THROWS_AS(ChannelSpec(0.1, 20), validation_error);  // 2^n word guard
    CHECK_THROWS_AS(repetition_sweep(0.1, {2}), validation_error);
    CHECK_THROWS_AS(Codebook({"00", "000"}), validation_error);
}
