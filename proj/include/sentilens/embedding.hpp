#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sentilens/corpus.hpp"
#include "sentilens/lexicon.hpp"
#include "sentilens/linalg.hpp"

namespace sentilens {

// |V|+1 rows by dim columns; row 0 is the all-zero padding/unknown row.
struct EmbeddingTable {
    Mat table;

    int dim() const { return table.cols; }
    int rows() const { return table.rows; }
    const double* row(int i) const { return table.row(i); }
};

struct SkipgramParams {
    int size = 200;            // embedding dimension
    double alpha = 0.025;      // initial learning rate
    double min_alpha = 1e-4;   // linear decay floor
    std::int64_t min_count = 5;
    int iters = 5;
    int window = 5;
    int negatives = 5;
    std::int64_t batch_words = 10000;  // words per LR-update chunk
    std::int64_t max_vocab = 0;        // 0 = unbounded
    bool deterministic = true;         // false allows hogwild sharding
    std::uint64_t seed = 42;
};

// Skip-gram with negative sampling over the vocabulary's token ids.
// Deterministic under a fixed seed in the default configuration; returns
// the input-embedding matrix.
EmbeddingTable train_skipgram(const std::vector<LabeledExample>& examples,
                              const Vocabulary& vocab, const SkipgramParams& params);

// Random init used before any update; exposed so callers can ask for the
// zero-iteration table.
EmbeddingTable init_skipgram_table(const Vocabulary& vocab, const SkipgramParams& params);

// Text interchange format: word followed by dim space-separated floats.
void save_embeddings_text(const std::string& path, const EmbeddingTable& table,
                          const Vocabulary& vocab);
// Loads rows for words found in the file on top of `base`; unknown file
// words are ignored.
EmbeddingTable load_embeddings_text(const std::string& path, const Vocabulary& vocab,
                                    EmbeddingTable base);

// x_i = v_i * senti(w_i); unknown tokens map to row 0.
std::vector<Vec> weighted_input(const EmbeddingTable& table, const SentimentLexicon& lexicon,
                                const Vocabulary& vocab, const std::vector<std::string>& tokens);

double cosine(const double* a, const double* b, int n);

}  // namespace sentilens
