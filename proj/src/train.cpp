#include "sentilens/train.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

namespace sentilens {

namespace {

void check_training_config(const TrainingConfig& cfg) {
    if (cfg.epochs < 0) throw UsageError("epochs must be non-negative");
    if (cfg.batch_size < 1) throw UsageError("batch_size must be positive");
    if (cfg.dropout_rate < 0.0 || cfg.dropout_rate >= 1.0)
        throw UsageError("dropout rate must lie in [0,1)");
    if (cfg.grad_slots < 1) throw UsageError("grad_slots must be positive");
}

}  // namespace

TrainResult train(Model& m, const EncodedCorpus& train_set, const TrainingConfig& cfg) {
    check_training_config(cfg);
    if (train_set.size() == 0) throw DataError("empty training set");
    TrainResult result;
    if (cfg.epochs == 0) return result;

    m.dropout_rate = cfg.dropout_rate;
    Optimizer opt(m, cfg.optimizer);
    GradWorkspace ws = make_workspace(m, cfg.grad_slots);
    Gradients batch_grads = make_gradients(m);
    DenseGrads dense = make_dense_grads(m);

    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), 0);
    const std::size_t n = order.size();

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        Rng shuffle_rng(derive_seed(cfg.seed, "shuffle", static_cast<std::uint64_t>(epoch)));
        shuffle_rng.shuffle(order);

        double loss_sum = 0.0;
        std::uint64_t batch_index = 0;
        for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t stop = std::min(n, start + static_cast<std::size_t>(cfg.batch_size));
            const std::vector<std::size_t> batch(order.begin() + static_cast<std::ptrdiff_t>(start),
                                                 order.begin() + static_cast<std::ptrdiff_t>(stop));
            BatchOptions bo;
            bo.loss = cfg.loss;
            bo.train = true;
            bo.mask_seed = derive_seed(cfg.seed, "mask", static_cast<std::uint64_t>(epoch),
                                       batch_index);
            bo.grad_slots = cfg.grad_slots;
            bo.mode = cfg.exec;
            const BatchResult br = compute_batch(m, train_set, batch, bo, &ws, &batch_grads);
            if (!std::isfinite(br.loss))
                throw NumericalError("loss diverged at epoch " + std::to_string(epoch + 1) +
                                     ", batch " + std::to_string(batch_index + 1));
            loss_sum += br.loss * static_cast<double>(batch.size());
            densify(batch_grads, dense);
            opt.step(m, dense);
            ++batch_index;
        }

        const auto t1 = std::chrono::steady_clock::now();
        EpochLogEntry entry;
        entry.epoch = epoch + 1;
        entry.mean_loss = loss_sum / static_cast<double>(n);
        entry.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
        result.log.push_back(entry);
    }
    return result;
}

MetricsReport evaluate(const Model& m, const EncodedCorpus& data, MetricsMode mode,
                       ExecMode exec) {
    if (data.size() == 0) throw DataError("empty evaluation set");
    const Vec p = predict_all(m, data, exec);
    return compute_metrics(counts_from_predictions(data.labels, p), mode);
}

SweepResult sweep(const EmbeddingTable& embeddings, const ModelInit& init,
                  const TrainingConfig& base, const EncodedCorpus& train_set,
                  const EncodedCorpus& test_set, const std::string& parameter,
                  const std::vector<double>& values) {
    if (parameter != "epochs" && parameter != "batch_size" && parameter != "dropout_rate")
        throw UsageError("sweep parameter must be one of epochs, batch_size, dropout_rate");
    if (values.size() < 2) throw UsageError("a sweep needs at least 2 values");

    SweepResult result;
    result.parameter = parameter;
    // Values are checked as their run starts, not upfront: a bad value
    // later in the list must still leave the earlier rows on record.
    for (const double v : values) {
        TrainingConfig cfg = base;
        try {
            if (parameter == "dropout_rate") {
                cfg.dropout_rate = v;
            } else {
                if (std::floor(v) != v)
                    throw UsageError("sweep value " + std::to_string(v) + " is not a whole " +
                                     parameter + " count");
                if (parameter == "epochs") cfg.epochs = static_cast<int>(v);
                else cfg.batch_size = static_cast<int>(v);
            }
            Model m = init_model(embeddings, init);
            train(m, train_set, cfg);
            SweepRow row;
            row.value = v;
            row.metrics = evaluate(m, test_set, base.metrics_mode, base.exec);
            result.rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            result.aborted = true;
            result.error = e.what();
            result.failure = std::current_exception();
            break;
        }
    }

    auto best = [&](auto pick) {
        std::optional<std::size_t> idx;
        for (std::size_t i = 0; i < result.rows.size(); ++i) {
            const auto v = pick(result.rows[i].metrics);
            if (!v) continue;
            if (!idx || *v > *pick(result.rows[*idx].metrics)) idx = i;
        }
        return idx;
    };
    result.best_accuracy = best([](const MetricsReport& r) { return r.accuracy; });
    result.best_precision = best([](const MetricsReport& r) { return r.precision; });
    result.best_recall = best([](const MetricsReport& r) { return r.recall; });
    result.best_f1 = best([](const MetricsReport& r) { return r.f1; });
    return result;
}

}  // namespace sentilens
