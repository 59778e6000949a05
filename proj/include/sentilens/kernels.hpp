#pragma once

#include <cstdint>
#include <vector>

#include "sentilens/model.hpp"

namespace sentilens {

// Serial is the reference implementation: the same per-example code and
// the same slot-ordered reduction, with no OpenMP team. The two modes
// must produce bitwise-identical results.
enum class ExecMode { Serial, Parallel };

std::string exec_mode_name(ExecMode mode);
ExecMode parse_exec_mode(const std::string& name);

// Token ids and lexicon weights resolved once, reused every epoch.
struct EncodedCorpus {
    std::vector<EncodedSentence> sentences;
    std::vector<int> labels;

    std::size_t size() const { return sentences.size(); }
};

EncodedCorpus encode_corpus(const Vocabulary& vocab, const SentimentLexicon& lexicon,
                            const std::vector<LabeledExample>& examples);

struct BatchOptions {
    LossConfig loss;
    bool train = true;             // dropout on, traces kept for gradients
    std::uint64_t mask_seed = 0;   // example i of the batch draws from (mask_seed, i)
    int grad_slots = 8;            // fixed partition count; independent of thread count
    ExecMode mode = ExecMode::Parallel;
};

struct BatchResult {
    double loss = 0.0;
    Vec p;
    Vec y;
};

// Reused slot accumulators so per-batch allocation stays flat.
struct GradWorkspace {
    std::vector<Gradients> slots;
};

GradWorkspace make_workspace(const Model& m, int grad_slots);

// Forward (and, when `grads` is given, backward) over the batch selected
// by `indices`. Examples are partitioned into grad_slots contiguous
// chunks; each slot accumulates privately and slots merge in slot order,
// so the reduction order never depends on scheduling.
BatchResult compute_batch(const Model& m, const EncodedCorpus& corpus,
                          const std::vector<std::size_t>& indices, const BatchOptions& opt,
                          GradWorkspace* ws, Gradients* grads);

// Evaluation-mode probabilities for every sentence.
Vec predict_all(const Model& m, const EncodedCorpus& corpus, ExecMode mode);

}  // namespace sentilens
