#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "sentilens/embedding.hpp"
#include "sentilens/kernels.hpp"
#include "sentilens/metrics.hpp"
#include "sentilens/model.hpp"
#include "sentilens/optim.hpp"

namespace sentilens {

struct TrainingConfig {
    int epochs = 8;
    int batch_size = 32;
    double dropout_rate = 0.4;
    OptimizerConfig optimizer;
    std::uint64_t seed = 42;
    LossConfig loss;
    MetricsMode metrics_mode = MetricsMode::Paper;
    int grad_slots = 8;
    ExecMode exec = ExecMode::Parallel;
};

struct EpochLogEntry {
    int epoch = 0;          // 1-based
    double mean_loss = 0.0; // example-weighted mean of batch losses
    double wall_seconds = 0.0;
};

struct TrainResult {
    std::vector<EpochLogEntry> log;
};

// Mini-batch optimization over a shuffled copy of the training set.
// epochs == 0 leaves the model untouched. The epoch shuffle and every
// dropout mask derive from cfg.seed alone, so two runs with the same
// seed visit identical example sequences.
TrainResult train(Model& m, const EncodedCorpus& train_set, const TrainingConfig& cfg);

MetricsReport evaluate(const Model& m, const EncodedCorpus& data, MetricsMode mode,
                       ExecMode exec);

struct SweepRow {
    double value = 0.0;
    MetricsReport metrics;
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepRow> rows;
    // Argmax row index per metric, first on ties; unset while all rows
    // lack that metric.
    std::optional<std::size_t> best_accuracy, best_precision, best_recall, best_f1;
    bool aborted = false;
    std::string error;
    std::exception_ptr failure;  // original exception behind `error`
};

// Trains one fresh model per value, identical seed and split for every
// run. A failing run stops the sweep; rows finished so far are kept and
// `aborted` is set.
SweepResult sweep(const EmbeddingTable& embeddings, const ModelInit& init,
                  const TrainingConfig& base, const EncodedCorpus& train_set,
                  const EncodedCorpus& test_set, const std::string& parameter,
                  const std::vector<double>& values);

}  // namespace sentilens
