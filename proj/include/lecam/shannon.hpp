#ifndef LECAM_SHANNON_HPP
#define LECAM_SHANNON_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lecam/core.hpp"
#include "lecam/decision.hpp"
#include "lecam/deficiency.hpp"

namespace lecam {

/// Binary symmetric channel acting independently on n bits.
struct ChannelSpec {
    double crossover = 0.0;  // p in [0, 0.5]
    std::size_t blocklength = 1;

    ChannelSpec(double p, std::size_t n) : crossover(p), blocklength(n) {
        if (!(p >= 0.0 && p <= 0.5))
            throw validation_error("ChannelSpec: crossover must be in [0, 0.5]");
        if (n < 1 || (std::size_t{1} << n) > (std::size_t{1} << 16))
            throw validation_error("ChannelSpec: blocklength out of range");
    }

    std::size_t n_words() const { return std::size_t{1} << blocklength; }

    std::vector<std::string> word_labels() const {
        std::vector<std::string> out;
        out.reserve(n_words());
        for (std::size_t w = 0; w < n_words(); ++w) {
            std::string s(blocklength, '0');
            for (std::size_t b = 0; b < blocklength; ++b)
                if (w & (std::size_t{1} << (blocklength - 1 - b))) s[b] = '1';
            out.push_back(s);
        }
        return out;
    }
};

struct Codebook {
    std::vector<std::string> codewords;  // n-bit strings, one per message

    explicit Codebook(std::vector<std::string> codewords_) : codewords(std::move(codewords_)) {
        if (codewords.empty()) throw validation_error("Codebook: empty");
        detail::check_unique(codewords, "Codebook");
        for (const auto& w : codewords) {
            if (w.size() != codewords.front().size())
                throw validation_error("Codebook: codeword lengths differ");
            for (char c : w)
                if (c != '0' && c != '1') throw validation_error("Codebook: non-binary codeword");
        }
    }

    std::size_t n_messages() const { return codewords.size(); }
    std::size_t blocklength() const { return codewords.front().size(); }
    double rate() const {
        return std::log2(static_cast<double>(n_messages())) / static_cast<double>(blocklength());
    }
    std::vector<std::string> message_labels() const {
        std::vector<std::string> out;
        for (std::size_t m = 0; m < n_messages(); ++m) out.push_back("m" + std::to_string(m));
        return out;
    }

    static Codebook repetition(std::size_t n) {
        return Codebook({std::string(n, '0'), std::string(n, '1')});
    }
};

inline std::size_t hamming_distance(const std::string& a, const std::string& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

/// The n-fold product kernel of BSC(p): entry p^d (1-p)^(n-d) at Hamming
/// distance d.
inline Kernel bsc_kernel(const ChannelSpec& spec) {
    std::vector<std::string> words = spec.word_labels();
    const std::size_t n = spec.blocklength;
    std::vector<double> by_distance(n + 1);
    for (std::size_t d = 0; d <= n; ++d)
        by_distance[d] = std::pow(spec.crossover, static_cast<double>(d)) *
                         std::pow(1.0 - spec.crossover, static_cast<double>(n - d));
    std::vector<std::vector<double>> m(words.size(), std::vector<double>(words.size()));
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j)
            m[i][j] = by_distance[static_cast<std::size_t>(std::popcount(i ^ j))];
    return Kernel(words, words, std::move(m));
}

/// Maximum-likelihood decoder: y -> argmax_m W(y | codeword_m), which for the
/// BSC with p < 0.5 is minimum Hamming distance. Ties go to the lowest
/// message index.
inline DecisionRule ml_decoder(const Codebook& cb, const ChannelSpec& spec) {
    if (cb.blocklength() != spec.blocklength)
        throw validation_error("ml_decoder: codebook/channel blocklength mismatch");
    std::vector<std::string> words = spec.word_labels();
    std::vector<std::size_t> target;
    target.reserve(words.size());
    // for p < 0.5 the likelihood is strictly decreasing in Hamming distance,
    // so compare distances exactly instead of floating likelihoods
    for (const auto& y : words) {
        std::size_t best_m = 0;
        std::size_t best_d = spec.blocklength + 1;
        for (std::size_t m = 0; m < cb.n_messages(); ++m) {
            std::size_t d = hamming_distance(y, cb.codewords[m]);
            if (d < best_d) {
                best_d = d;
                best_m = m;
            }
        }
        target.push_back(best_m);
    }
    return DecisionRule::from_map(DeterministicMap(words, cb.message_labels(), std::move(target)));
}

struct CodingReport {
    double deficiency_value = 0.0;   // sup_m TV(decoder-pushed channel row, point mass at m)
    double max_message_error = 0.0;  // sup_m P(decode != m | m)
    std::vector<double> per_message_error;
    double average_error = 0.0;
};

/// Source experiment (codeword point masses pushed through the channel) and
/// target experiment (point masses on the messages themselves).
inline std::pair<Experiment, Experiment> coding_experiments(const Codebook& cb,
                                                            const ChannelSpec& spec) {
    Kernel channel = bsc_kernel(spec);
    std::vector<std::string> words = spec.word_labels();
    auto widx = detail::index_of(words);
    std::vector<std::vector<double>> channel_rows;
    for (const auto& cw : cb.codewords) channel_rows.push_back(channel.matrix[widx.at(cw)]);
    Experiment source("coded", cb.message_labels(), words, std::move(channel_rows));
    Experiment target("messages", cb.message_labels(), cb.message_labels(),
                      Kernel::identity(cb.message_labels()).matrix);
    return {std::move(source), std::move(target)};
}

/// The decoder, read as a kernel, turns the coding problem into an experiment
/// simulation: TV between the decoded output law and the point mass at the
/// sent message equals the miss probability, message by message.
inline CodingReport coding_deficiency(const Codebook& cb, const ChannelSpec& spec,
                                      const DecisionRule& decoder) {
    Experiment source = coding_experiments(cb, spec).first;
    if (decoder.domain() != source.outcomes)
        throw validation_error("coding_deficiency: decoder not total on channel outputs");
    Kernel dec = decoder.as_kernel();
    CodingReport rep;
    for (std::size_t m = 0; m < cb.n_messages(); ++m) {
        std::vector<double> decoded = push_row(source.rows[m], dec);
        double tv = 0.0;
        for (std::size_t a = 0; a < decoded.size(); ++a)
            tv += std::abs(decoded[a] - (a == m ? 1.0 : 0.0));
        tv *= 0.5;
        double miss = 1.0 - decoded[m];
        if (std::abs(tv - miss) > 1e-12)
            throw validation_error("coding_deficiency: TV/miss identity violated");
        rep.per_message_error.push_back(miss);
        rep.max_message_error = std::max(rep.max_message_error, miss);
        rep.deficiency_value = std::max(rep.deficiency_value, tv);
        rep.average_error += miss;
    }
    rep.average_error /= static_cast<double>(cb.n_messages());
    return rep;
}

inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

struct SweepRow {
    std::size_t n = 0;
    double rate = 0.0;
    double max_error = 0.0;
    double average_error = 0.0;
    double capacity = 0.0;
};

/// Repetition-code sweep at fixed crossover: error probability per odd
/// blocklength, strictly decreasing for p < 0.5.
inline std::vector<SweepRow> repetition_sweep(double p, const std::vector<std::size_t>& n_values) {
    std::vector<SweepRow> table;
    for (std::size_t n : n_values) {
        if (n % 2 == 0) throw validation_error("repetition_sweep: blocklengths must be odd");
        ChannelSpec spec(p, n);
        Codebook cb = Codebook::repetition(n);
        CodingReport rep = coding_deficiency(cb, spec, ml_decoder(cb, spec));
        SweepRow row;
        row.n = n;
        row.rate = 1.0 / static_cast<double>(n);
        row.max_error = rep.max_message_error;
        row.average_error = rep.average_error;
        row.capacity = 1.0 - binary_entropy(p);
        table.push_back(row);
    }
    return table;
}

}  // namespace lecam

#endif  // LECAM_SHANNON_HPP
