#include "sentilens/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sentilens/util.hpp"

namespace sentilens {

namespace {

// Sentences as in-vocab ids (1-based); out-of-vocabulary tokens drop out
// of the stream, as a word2vec-style trainer sees only counted words.
std::vector<std::vector<int>> encode_sentences(const std::vector<LabeledExample>& examples,
                                               const Vocabulary& vocab,
                                               std::int64_t max_vocab) {
    std::vector<std::vector<int>> out;
    out.reserve(examples.size());
    for (const auto& ex : examples) {
        std::vector<int> ids;
        ids.reserve(ex.tokens.size());
        for (const auto& tok : ex.tokens) {
            int id = vocab.lookup(tok);
            if (id == 0) continue;
            if (max_vocab > 0 && id > max_vocab) continue;
            ids.push_back(id);
        }
        if (!ids.empty()) out.push_back(std::move(ids));
    }
    return out;
}

// Cumulative unigram^0.75 distribution for negative sampling.
struct NegativeSampler {
    std::vector<double> cumulative;

    explicit NegativeSampler(const Vocabulary& vocab) {
        cumulative.resize(vocab.words.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < vocab.counts.size(); ++i) {
            acc += std::pow(static_cast<double>(vocab.counts[i]), 0.75);
            cumulative[i] = acc;
        }
    }

    // 1-based vocab id.
    int sample(Rng& rng) const {
        const double u = rng.uniform() * cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        return static_cast<int>(it - cumulative.begin()) + 1;
    }
};

struct TrainState {
    Mat* input;
    Mat* output;
    const NegativeSampler* sampler;
    const SkipgramParams* params;
    int dim;
};

void train_pair(TrainState& st, int input_word, int target_word, double lr, Rng& rng,
                Vec& scratch) {
    double* v_in = st.input->row(input_word);
    std::fill(scratch.begin(), scratch.end(), 0.0);
    for (int d = 0; d <= st.params->negatives; ++d) {
        int target;
        double label;
        if (d == 0) {
            target = target_word;
            label = 1.0;
        } else {
            do {
                target = st.sampler->sample(rng);
            } while (target == target_word);
            label = 0.0;
        }
        double* u_out = st.output->row(target);
        const double f = dot(v_in, u_out, st.dim);
        const double g = (label - sigmoid(f)) * lr;
        axpy(g, u_out, scratch.data(), st.dim);
        axpy(g, v_in, u_out, st.dim);
    }
    axpy(1.0, scratch.data(), v_in, st.dim);
}

void train_sentence(TrainState& st, const std::vector<int>& sent, double lr, Rng& rng,
                    Vec& scratch) {
    const int n = static_cast<int>(sent.size());
    for (int i = 0; i < n; ++i) {
        const int reach = 1 + static_cast<int>(rng.uniform_int(
                                  static_cast<std::uint64_t>(st.params->window)));
        for (int j = std::max(0, i - reach); j <= std::min(n - 1, i + reach); ++j) {
            if (j == i) continue;
            train_pair(st, sent[j], sent[i], lr, rng, scratch);
        }
    }
}

}  // namespace

EmbeddingTable init_skipgram_table(const Vocabulary& vocab, const SkipgramParams& params) {
    EmbeddingTable t;
    t.table = Mat(vocab.size() + 1, params.size);
    Rng rng(derive_seed(params.seed, "skipgram-init"));
    const double scale = 0.5 / static_cast<double>(params.size);
    for (int r = 1; r < t.table.rows; ++r) {
        double* row = t.table.row(r);
        for (int c = 0; c < params.size; ++c) row[c] = rng.uniform(-scale, scale);
    }
    return t;
}

EmbeddingTable train_skipgram(const std::vector<LabeledExample>& examples,
                              const Vocabulary& vocab, const SkipgramParams& params) {
    auto sentences = encode_sentences(examples, vocab, params.max_vocab);
    std::int64_t total_words = 0;
    for (const auto& s : sentences) total_words += static_cast<std::int64_t>(s.size());
    if (total_words < params.window)
        throw DataError("corpus smaller than the context window");

    EmbeddingTable table = init_skipgram_table(vocab, params);
    if (params.iters == 0) return table;

    Mat output(vocab.size() + 1, params.size);
    NegativeSampler sampler(vocab);
    const std::int64_t decay_span = total_words * params.iters;

    if (params.deterministic) {
        TrainState st{&table.table, &output, &sampler, &params, params.size};
        Rng rng(derive_seed(params.seed, "skipgram-train"));
        Vec scratch(params.size, 0.0);
        std::int64_t processed = 0;
        std::int64_t since_update = 0;
        double lr = params.alpha;
        for (int iter = 0; iter < params.iters; ++iter) {
            for (const auto& sent : sentences) {
                train_sentence(st, sent, lr, rng, scratch);
                processed += static_cast<std::int64_t>(sent.size());
                since_update += static_cast<std::int64_t>(sent.size());
                if (since_update >= params.batch_words) {
                    since_update = 0;
                    const double progress =
                        static_cast<double>(processed) / static_cast<double>(decay_span);
                    lr = std::max(params.min_alpha, params.alpha * (1.0 - progress));
                }
            }
        }
    } else {
        // Hogwild sharding: threads update the shared tables without
        // locks, so results vary run to run.
        for (int iter = 0; iter < params.iters; ++iter) {
            const double base_progress =
                static_cast<double>(iter) / static_cast<double>(params.iters);
#pragma omp parallel
            {
#ifdef _OPENMP
                const int tid = omp_get_thread_num();
#else
                const int tid = 0;
#endif
                TrainState st{&table.table, &output, &sampler, &params, params.size};
                Rng rng(derive_seed(params.seed, "skipgram-shard",
                                    static_cast<std::uint64_t>(iter),
                                    static_cast<std::uint64_t>(tid)));
                Vec scratch(params.size, 0.0);
                const double lr =
                    std::max(params.min_alpha, params.alpha * (1.0 - base_progress));
#pragma omp for schedule(static)
                for (std::size_t s = 0; s < sentences.size(); ++s) {
                    train_sentence(st, sentences[s], lr, rng, scratch);
                }
            }
        }
    }
    return table;
}

void save_embeddings_text(const std::string& path, const EmbeddingTable& table,
                          const Vocabulary& vocab) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write embeddings: " + path);
    for (int i = 0; i < vocab.size(); ++i) {
        out << vocab.words[i];
        const double* row = table.row(i + 1);
        for (int c = 0; c < table.dim(); ++c) out << ' ' << format_double(row[c]);
        out << '\n';
    }
}

EmbeddingTable load_embeddings_text(const std::string& path, const Vocabulary& vocab,
                                    EmbeddingTable base) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open embeddings: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream f(line);
        std::string word;
        f >> word;
        const int id = vocab.lookup(word);
        std::vector<double> values;
        double v;
        while (f >> v) values.push_back(v);
        if (static_cast<int>(values.size()) != base.dim())
            throw DataError("embedding line " + std::to_string(lineno) + " has " +
                            std::to_string(values.size()) + " values, expected " +
                            std::to_string(base.dim()));
        if (id == 0) continue;  // word not in vocabulary
        std::copy(values.begin(), values.end(), base.table.row(id));
    }
    return base;
}

std::vector<Vec> weighted_input(const EmbeddingTable& table, const SentimentLexicon& lexicon,
                                const Vocabulary& vocab, const std::vector<std::string>& tokens) {
    std::vector<Vec> out;
    out.reserve(tokens.size());
    for (const auto& tok : tokens) {
        const int id = vocab.lookup(tok);
        const double w = lexicon.senti(tok);
        Vec x(table.dim(), 0.0);
        axpy(w, table.row(id), x.data(), table.dim());
        out.push_back(std::move(x));
    }
    return out;
}

double cosine(const double* a, const double* b, int n) {
    const double num = dot(a, b, n);
    const double na = std::sqrt(dot(a, a, n));
    const double nb = std::sqrt(dot(b, b, n));
    if (na == 0.0 || nb == 0.0) return 0.0;
    return num / (na * nb);
}

}  // namespace sentilens
