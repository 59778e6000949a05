#include "sentilens/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sentilens/checkpoint.hpp"
#include "sentilens/corpus.hpp"
#include "sentilens/embedding.hpp"
#include "sentilens/explain.hpp"
#include "sentilens/features.hpp"
#include "sentilens/kernels.hpp"
#include "sentilens/lexicon.hpp"
#include "sentilens/metrics.hpp"
#include "sentilens/model.hpp"
#include "sentilens/synthetic.hpp"
#include "sentilens/train.hpp"
#include "sentilens/util.hpp"

namespace sentilens {
namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "sentilens 0.1.0";

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

class StageTimer {
public:
    StageTimer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Run record next to the artifacts. Wall times live here and in the epoch
// log only; everything else about a run is a pure function of config and
// inputs, so two runs with the same seed may be compared byte for byte on
// every other artifact.
class Manifest {
public:
    explicit Manifest(const PipelineConfig& cfg) : workdir_(cfg.workdir) {
        path_ = workdir_path(cfg, artifact::kManifest);
        std::ifstream in(path_);
        if (in) {
            try {
                in >> j_;
            } catch (const json::exception&) {
                j_ = json::object();
            }
        }
        if (!j_.is_object()) j_ = json::object();
        j_["tool"] = kToolVersion;
        j_["config"] = json::parse(config_to_json(cfg));
    }

    void input(const std::string& path) { j_["inputs"][path] = hex64(hash_file(path)); }

    void artifact(const char* name) {
        j_["artifacts"][name] = hex64(hash_file(workdir_ + "/" + name));
    }

    json& stage(const std::string& name, double wall_seconds) {
        json& s = j_["stages"][name];
        s = json::object();
        s["wall_seconds"] = wall_seconds;
        return s;
    }

    void save() const { write_text_file(path_, j_.dump(2) + "\n"); }

private:
    std::string workdir_;
    std::string path_;
    json j_;
};

void ensure_workdir(const PipelineConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.workdir, ec);
    if (ec) throw DataError("cannot create work directory " + cfg.workdir + ": " + ec.message());
}

ModelInit model_init_from(const PipelineConfig& cfg, int d_x) {
    ModelInit mi;
    mi.d_x = d_x;
    mi.d_h = static_cast<int>(cfg.d_h);
    mi.d_a = static_cast<int>(cfg.d_a);
    mi.dropout_rate = cfg.dropout_rate;
    mi.init_range = cfg.init_range;
    mi.forget_bias = cfg.forget_bias;
    mi.seed = cfg.seed;
    return mi;
}

TrainingConfig training_config_from(const PipelineConfig& cfg) {
    TrainingConfig tc;
    tc.epochs = static_cast<int>(cfg.epochs);
    tc.batch_size = static_cast<int>(cfg.batch_size);
    tc.dropout_rate = cfg.dropout_rate;
    tc.optimizer.kind = parse_optimizer(cfg.optimizer);
    tc.optimizer.lr = cfg.lr;
    tc.optimizer.beta1 = cfg.beta1;
    tc.optimizer.beta2 = cfg.beta2;
    tc.optimizer.eps = cfg.adam_eps;
    tc.seed = cfg.seed;
    tc.loss.root_mse = cfg.loss_root_mse;
    tc.loss.two_term_ce = cfg.loss_two_term_ce;
    tc.metrics_mode = parse_metrics_mode(cfg.metrics_mode);
    tc.grad_slots = static_cast<int>(cfg.grad_slots);
    tc.exec = parse_exec_mode(cfg.exec);
    return tc;
}

SkipgramParams skipgram_params_from(const PipelineConfig& cfg) {
    SkipgramParams sp;
    sp.size = static_cast<int>(cfg.embed_size);
    sp.alpha = cfg.embed_alpha;
    sp.min_alpha = cfg.embed_min_alpha;
    sp.min_count = cfg.min_count;
    sp.iters = static_cast<int>(cfg.embed_iters);
    sp.window = static_cast<int>(cfg.embed_window);
    sp.negatives = static_cast<int>(cfg.embed_negatives);
    sp.batch_words = cfg.embed_batch_words;
    sp.max_vocab = cfg.embed_max_vocab;
    sp.deterministic = cfg.embed_deterministic;
    sp.seed = cfg.seed;
    return sp;
}

void save_nouns_json(const std::string& path, const std::unordered_set<std::string>& nouns) {
    std::set<std::string> sorted(nouns.begin(), nouns.end());
    json j;
    j["nouns"] = sorted;
    write_text_file(path, j.dump(2) + "\n");
}

std::unordered_set<std::string> load_nouns_json(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("nouns") || !j["nouns"].is_array())
        throw DataError(path + ": expected an object with a \"nouns\" array");
    std::unordered_set<std::string> out;
    for (const auto& v : j["nouns"]) out.insert(v.get<std::string>());
    return out;
}

EmbeddingTable load_embeddings_for(const PipelineConfig& cfg, const Vocabulary& vocab) {
    EmbeddingTable base;
    base.table = Mat(vocab.size() + 1, static_cast<int>(cfg.embed_size));
    return load_embeddings_text(workdir_path(cfg, artifact::kEmbeddings), vocab, std::move(base));
}

Model load_model_for(const PipelineConfig& cfg, const Vocabulary& vocab) {
    CheckpointInfo info;
    Model m = load_checkpoint(workdir_path(cfg, artifact::kModel), &info);
    if (info.vocab_hash != vocab.content_hash())
        throw DataError("checkpoint was trained against a different vocabulary");
    return m;
}

json metrics_to_json(const MetricsReport& r) {
    auto put = [](json& j, const char* key, const std::optional<double>& v) {
        if (v)
            j[key] = *v;
        else
            j[key] = nullptr;
    };
    json j;
    put(j, "accuracy", r.accuracy);
    put(j, "precision", r.precision);
    put(j, "recall", r.recall);
    put(j, "f1", r.f1);
    return j;
}

std::string metrics_csv_row(const std::string& tag, const MetricsReport& r) {
    return tag + "," + format_percent(r.accuracy) + "," + format_percent(r.precision) + "," +
           format_percent(r.recall) + "," + format_percent(r.f1) + "\n";
}

struct Stage {
    const char* name;
    void (*fn)(const PipelineConfig&);
};

constexpr Stage kStages[] = {
    {"preprocess", run_preprocess}, {"build-lexicon", run_build_lexicon},
    {"embed", run_embed},           {"train", run_train},
    {"evaluate", run_evaluate},     {"sweep", run_sweep},
    {"explain", run_explain},       {"full-run", run_full},
};

constexpr const char* kFullRunOrder[] = {"preprocess", "build-lexicon", "embed",
                                         "train",      "evaluate",      "explain"};

const Stage* find_stage(const std::string& command) {
    for (const auto& s : kStages)
        if (command == s.name) return &s;
    return nullptr;
}

void run_stage_annotated(const Stage& s, const PipelineConfig& cfg) {
    try {
        s.fn(cfg);
    } catch (const UsageError& e) {
        throw UsageError("stage " + std::string(s.name) + ": " + e.what());
    } catch (const DataError& e) {
        throw DataError("stage " + std::string(s.name) + ": " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError("stage " + std::string(s.name) + ": " + e.what());
    }
}

void require_file(const std::string& path, const std::string& what) {
    if (!std::filesystem::exists(path)) throw DataError(what + " not found: " + path);
}

}  // namespace

std::string workdir_path(const PipelineConfig& cfg, const std::string& name) {
    return cfg.workdir + "/" + name;
}

std::string resolve_dataset(const PipelineConfig& cfg) {
    if (!cfg.dataset.empty()) {
        require_file(cfg.dataset, "dataset");
        return cfg.dataset;
    }
    if (const char* env = std::getenv("SENTILENS_DATASET"); env && *env) {
        require_file(env, "dataset ($SENTILENS_DATASET)");
        return env;
    }
    // Regenerated on every preprocess run; the bytes are a pure function
    // of synth.records and synth.seed, so this is idempotent.
    const std::string path = workdir_path(cfg, artifact::kSyntheticDataset);
    SyntheticParams sp;
    sp.records = cfg.synth_records;
    sp.seed = cfg.synth_seed;
    write_synthetic_dataset(path, sp);
    return path;
}

void run_preprocess(const PipelineConfig& cfg) {
    ensure_workdir(cfg);
    StageTimer timer;

    const StopwordSet stopwords = load_stopwords(cfg.stopwords);
    const std::string dataset = resolve_dataset(cfg);

    LoadStats ls;
    std::vector<RawReview> raw = load_reviews(dataset, ls);
    if (cfg.max_records > 0 && raw.size() > static_cast<std::size_t>(cfg.max_records))
        raw.resize(static_cast<std::size_t>(cfg.max_records));

    LabelThresholds thresholds;
    thresholds.positive_min = static_cast<int>(cfg.positive_min);
    thresholds.negative_max = static_cast<int>(cfg.negative_max);
    CorpusStats cs;
    const std::vector<LabeledExample> examples = label_corpus(raw, stopwords, thresholds, cs);
    if (examples.empty()) throw DataError("zero usable records after labeling and preprocessing");

    const Vocabulary vocab = build_vocab(examples, cfg.min_count);
    const DatasetSplit split = split_dataset(examples, cfg.split_ratio, cfg.seed);

    save_examples_jsonl(workdir_path(cfg, artifact::kTrainSet), split.train);
    save_examples_jsonl(workdir_path(cfg, artifact::kTestSet), split.test);
    save_vocab_json(workdir_path(cfg, artifact::kVocab), vocab);

    std::cout << "[preprocess] " << dataset << ": " << ls.records << " records, "
              << ls.skipped_malformed << " malformed skipped\n"
              << "[preprocess] usable " << cs.usable << " (dropped " << cs.dropped_neutral
              << " neutral, " << cs.dropped_empty << " empty) -> train " << split.train.size()
              << " / test " << split.test.size() << "\n"
              << "[preprocess] vocabulary: " << vocab.size() << " words (min_count "
              << cfg.min_count << ")\n";

    Manifest mf(cfg);
    mf.input(cfg.stopwords);
    mf.input(dataset);
    json& st = mf.stage("preprocess", timer.seconds());
    st["records"] = ls.records;
    st["malformed"] = ls.skipped_malformed;
    st["usable"] = cs.usable;
    st["dropped_neutral"] = cs.dropped_neutral;
    st["dropped_empty"] = cs.dropped_empty;
    st["train"] = split.train.size();
    st["test"] = split.test.size();
    st["vocab"] = vocab.size();
    mf.artifact(artifact::kTrainSet);
    mf.artifact(artifact::kTestSet);
    mf.artifact(artifact::kVocab);
    mf.save();
}

void run_build_lexicon(const PipelineConfig& cfg) {
    ensure_workdir(cfg);
    StageTimer timer;

    const LexiconSource main_source = parse_sentiwordnet(cfg.lexicon_main);
    std::vector<LexiconSource> sources{main_source};
    if (!cfg.lexicon_aux.empty()) sources.push_back(parse_aux_lexicon(cfg.lexicon_aux));

    const SentimentLexicon lex = merge(sources, cfg.absent_default);
    save_lexicon_json(workdir_path(cfg, artifact::kLexicon), lex);
    save_nouns_json(workdir_path(cfg, artifact::kNouns), noun_set(main_source));

    std::cout << "[build-lexicon] " << sources.size() << " sources, " << lex.size()
              << " merged entries, absent default " << format_double(lex.absent_default())
              << "\n";

    Manifest mf(cfg);
    mf.input(cfg.lexicon_main);
    if (!cfg.lexicon_aux.empty()) mf.input(cfg.lexicon_aux);
    json& st = mf.stage("build-lexicon", timer.seconds());
    st["sources"] = sources.size();
    st["entries"] = lex.size();
    mf.artifact(artifact::kLexicon);
    mf.artifact(artifact::kNouns);
    mf.save();
}

void run_embed(const PipelineConfig& cfg) {
    ensure_workdir(cfg);
    StageTimer timer;

    const Vocabulary vocab = load_vocab_json(workdir_path(cfg, artifact::kVocab));
    std::vector<LabeledExample> all = load_examples_jsonl(workdir_path(cfg, artifact::kTrainSet));
    {
        std::vector<LabeledExample> test =
            load_examples_jsonl(workdir_path(cfg, artifact::kTestSet));
        all.insert(all.end(), test.begin(), test.end());
    }

    const EmbeddingTable emb = train_skipgram(all, vocab, skipgram_params_from(cfg));
    save_embeddings_text(workdir_path(cfg, artifact::kEmbeddings), emb, vocab);

    const TfidfModel tfidf = fit_tfidf(all);
    const std::unordered_set<std::string> nouns =
        load_nouns_json(workdir_path(cfg, artifact::kNouns));
    const AspectTermSet aspects = extract_aspect_terms(
        tfidf, [&](const std::string& w) { return nouns.count(w) > 0; },
        static_cast<int>(cfg.aspect_k));
    save_aspects_json(workdir_path(cfg, artifact::kAspects), aspects);

    std::cout << "[embed] " << vocab.size() << " vectors of dim " << cfg.embed_size << " ("
              << cfg.embed_iters << " iters)\n"
              << "[embed] aspect terms: " << aspects.terms.size() << " of requested "
              << cfg.aspect_k << "\n";

    Manifest mf(cfg);
    json& st = mf.stage("embed", timer.seconds());
    st["dim"] = cfg.embed_size;
    st["iters"] = cfg.embed_iters;
    st["aspect_terms"] = aspects.terms.size();
    mf.artifact(artifact::kEmbeddings);
    mf.artifact(artifact::kAspects);
    mf.save();
}

void run_train(const PipelineConfig& cfg) {
    ensure_workdir(cfg);
    StageTimer timer;

    const Vocabulary vocab = load_vocab_json(workdir_path(cfg, artifact::kVocab));
    const SentimentLexicon lexicon = load_lexicon_json(workdir_path(cfg, artifact::kLexicon));
    const EmbeddingTable emb = load_embeddings_for(cfg, vocab);
    const std::vector<LabeledExample> train_ex =
        load_examples_jsonl(workdir_path(cfg, artifact::kTrainSet));
    const EncodedCorpus enc = encode_corpus(vocab, lexicon, train_ex);

    Model m = init_model(emb, model_init_from(cfg, emb.dim()));
    const TrainingConfig tc = training_config_from(cfg);
    const TrainResult res = train(m, enc, tc);

    std::string log;
    for (const auto& e : res.log) {
        json line;
        line["epoch"] = e.epoch;
        line["mean_loss"] = e.mean_loss;
        line["wall_seconds"] = e.wall_seconds;
        log += line.dump() + "\n";
        std::cout << "[train] epoch " << e.epoch << "/" << tc.epochs << " loss "
                  << format_double(e.mean_loss) << "\n";
    }
    write_text_file(workdir_path(cfg, artifact::kTrainLog), log);
    save_checkpoint(workdir_path(cfg, artifact::kModel), m, vocab.content_hash());
    write_text_file(workdir_path(cfg, artifact::kModelConfig), config_to_json(cfg) + "\n");

    std::cout << "[train] " << enc.size() << " examples, " << tc.epochs << " epochs -> "
              << artifact::kModel << "\n";

    Manifest mf(cfg);
    json& st = mf.stage("train", timer.seconds());
    st["examples"] = enc.size();
    st["epochs"] = tc.epochs;
    if (!res.log.empty()) st["final_loss"] = res.log.back().mean_loss;
    mf.artifact(artifact::kModel);
    mf.artifact(artifact::kModelConfig);
    mf.artifact(artifact::kTrainLog);
    mf.save();
}

void run_evaluate(const PipelineConfig& cfg) {
    ensure_workdir(cfg);
    StageTimer timer;

    const Vocabulary vocab = load_vocab_json(workdir_path(cfg, artifact::kVocab));
    const SentimentLexicon lexicon = load_lexicon_json(workdir_path(cfg, artifact::kLexicon));
    const Model m = load_model_for(cfg, vocab);
    const std::vector<LabeledExample> test_ex =
        load_examples_jsonl(workdir_path(cfg, artifact::kTestSet));
    if (test_ex.empty()) throw DataError("test split is empty");
    const EncodedCorpus enc = encode_corpus(vocab, lexicon, test_ex);

    const ExecMode exec = parse_exec_mode(cfg.exec);
    const MetricsMode selected = parse_metrics_mode(cfg.metrics_mode);

    // One shared forward pass; the two conventions differ only in how the
    // counts are combined.
    const Vec p = predict_all(m, enc, exec);
    const ConfusionCounts counts = counts_from_predictions(enc.labels, p);
    const MetricsReport paper = compute_metrics(counts, MetricsMode::Paper);
    const MetricsReport standard = compute_metrics(counts, MetricsMode::Standard);
    const MetricsReport& chosen = selected == MetricsMode::Paper ? paper : standard;

    json j;
    j["mode"] = metrics_mode_name(selected);
    j["counts"] = {{"tp", counts.tp}, {"fp", counts.fp}, {"tn", counts.tn}, {"fn", counts.fn}};
    j["paper"] = metrics_to_json(paper);
    j["standard"] = metrics_to_json(standard);
    write_text_file(workdir_path(cfg, artifact::kMetricsJson), j.dump(2) + "\n");

    std::string csv = "mode,accuracy,precision,recall,f1\n";
    csv += metrics_csv_row(metrics_mode_name(MetricsMode::Paper), paper);
    csv += metrics_csv_row(metrics_mode_name(MetricsMode::Standard), standard);
    write_text_file(workdir_path(cfg, artifact::kMetricsCsv), csv);

    std::cout << "[evaluate] " << enc.size() << " examples, mode " << metrics_mode_name(selected)
              << ": accuracy " << format_percent(chosen.accuracy) << "% precision "
              << format_percent(chosen.precision) << "% recall " << format_percent(chosen.recall)
              << "% f1 " << format_percent(chosen.f1) << "%\n";

    Manifest mf(cfg);
    json& st = mf.stage("evaluate", timer.seconds());
    st["examples"] = enc.size();
    st["mode"] = metrics_mode_name(selected);
    st["counts"] = j["counts"];
    mf.artifact(artifact::kMetricsJson);
    mf.artifact(artifact::kMetricsCsv);
    mf.save();
}

void run_sweep(const PipelineConfig& cfg) {
    ensure_workdir(cfg);
    StageTimer timer;

    const Vocabulary vocab = load_vocab_json(workdir_path(cfg, artifact::kVocab));
    const SentimentLexicon lexicon = load_lexicon_json(workdir_path(cfg, artifact::kLexicon));
    const EmbeddingTable emb = load_embeddings_for(cfg, vocab);
    const EncodedCorpus enc_train = encode_corpus(
        vocab, lexicon, load_examples_jsonl(workdir_path(cfg, artifact::kTrainSet)));
    const EncodedCorpus enc_test = encode_corpus(
        vocab, lexicon, load_examples_jsonl(workdir_path(cfg, artifact::kTestSet)));

    const std::vector<double> values = parse_value_list(cfg.sweep_values);
    const SweepResult res =
        sweep(emb, model_init_from(cfg, emb.dim()), training_config_from(cfg), enc_train,
              enc_test, cfg.sweep_parameter, values);

    json j;
    j["parameter"] = res.parameter;
    j["rows"] = json::array();
    for (const auto& row : res.rows) {
        json r = metrics_to_json(row.metrics);
        r["value"] = row.value;
        j["rows"].push_back(r);
    }
    auto put_best = [](json& best, const char* key, const std::optional<std::size_t>& idx) {
        if (idx)
            best[key] = *idx;
        else
            best[key] = nullptr;
    };
    j["best"] = json::object();
    put_best(j["best"], "accuracy", res.best_accuracy);
    put_best(j["best"], "precision", res.best_precision);
    put_best(j["best"], "recall", res.best_recall);
    put_best(j["best"], "f1", res.best_f1);
    j["aborted"] = res.aborted;
    if (res.aborted) j["error"] = res.error;
    write_text_file(workdir_path(cfg, artifact::kSweepJson), j.dump(2) + "\n");

    std::string csv = "parameter,accuracy,precision,recall,f1\n";
    for (const auto& row : res.rows)
        csv += metrics_csv_row(res.parameter + "=" + format_double(row.value), row.metrics);
    write_text_file(workdir_path(cfg, artifact::kSweepCsv), csv);

    std::cout << "[sweep] " << res.parameter << " over " << values.size() << " values, "
              << res.rows.size() << " finished" << (res.aborted ? " (aborted)" : "") << "\n";

    Manifest mf(cfg);
    json& st = mf.stage("sweep", timer.seconds());
    st["parameter"] = res.parameter;
    st["values"] = values.size();
    st["finished"] = res.rows.size();
    st["aborted"] = res.aborted;
    mf.artifact(artifact::kSweepJson);
    mf.artifact(artifact::kSweepCsv);
    mf.save();

    // Partial results are on disk; the run still counts as failed.
    if (res.aborted) {
        if (res.failure) std::rethrow_exception(res.failure);
        throw NumericalError("sweep aborted: " + res.error);
    }
}

void run_explain(const PipelineConfig& cfg) {
    ensure_workdir(cfg);
    StageTimer timer;

    const Vocabulary vocab = load_vocab_json(workdir_path(cfg, artifact::kVocab));
    const SentimentLexicon lexicon = load_lexicon_json(workdir_path(cfg, artifact::kLexicon));
    const Model m = load_model_for(cfg, vocab);
    const AspectTermSet aspects = load_aspects_json(workdir_path(cfg, artifact::kAspects));
    const std::vector<LabeledExample> test_ex =
        load_examples_jsonl(workdir_path(cfg, artifact::kTestSet));

    const ExecMode exec = parse_exec_mode(cfg.exec);
    const Aggregator agg = parse_aggregator(cfg.aggregator);

    const AspectWeightReport report =
        aggregate_aspect_weights(m, vocab, lexicon, test_ex, aspects, agg, exec);
    save_aspect_report_json(workdir_path(cfg, artifact::kAspectReportJson), report);
    save_aspect_report_csv(workdir_path(cfg, artifact::kAspectReportCsv), report);

    // The group comparison is defined over mean weights; reuse the report
    // when it already is one.
    AspectWeightReport avg_storage;
    const AspectWeightReport* avg_report = &report;
    if (agg != Aggregator::Average) {
        avg_storage =
            aggregate_aspect_weights(m, vocab, lexicon, test_ex, aspects, Aggregator::Average, exec);
        avg_report = &avg_storage;
    }
    const GroupComparison cmp = compare_aspect_vs_sentiment(
        m, vocab, lexicon, test_ex, *avg_report, aspects, cfg.sentiment_threshold,
        static_cast<std::size_t>(cfg.top_aspects), static_cast<std::size_t>(cfg.top_sentiment),
        exec);
    save_comparison_json(workdir_path(cfg, artifact::kComparison), cmp, cfg.sentiment_threshold);

    std::cout << "[explain] aspect report: " << report.entries.size() << " terms, f="
              << aggregator_name(agg) << "\n"
              << "[explain] top-" << cmp.aspect_terms.size() << " aspect mean "
              << format_double(cmp.aspect_mean) << " vs top-" << cmp.sentiment_terms.size()
              << " sentiment mean " << format_double(cmp.sentiment_mean) << " (ratio "
              << format_double(cmp.ratio) << ")\n";

    Manifest mf(cfg);
    json& st = mf.stage("explain", timer.seconds());
    st["aggregator"] = aggregator_name(agg);
    st["terms"] = report.entries.size();
    st["aspect_mean"] = cmp.aspect_mean;
    st["sentiment_mean"] = cmp.sentiment_mean;
    mf.artifact(artifact::kAspectReportJson);
    mf.artifact(artifact::kAspectReportCsv);
    mf.artifact(artifact::kComparison);

    if (!cfg.explain_text.empty()) {
        const StopwordSet stopwords = load_stopwords(cfg.stopwords);
        const std::vector<std::string> tokens = preprocess(cfg.explain_text, stopwords);
        const SentenceAttribution attr = attribute_sentence(m, vocab, lexicon, tokens);
        export_heatmap(attr, workdir_path(cfg, artifact::kHeatmapJson),
                       workdir_path(cfg, artifact::kHeatmapCsv));
        std::cout << "[explain] heatmap: " << attr.tokens.size() << " tokens, p="
                  << format_double(attr.probability) << "\n";
        st["heatmap_tokens"] = attr.tokens.size();
        mf.artifact(artifact::kHeatmapJson);
        mf.artifact(artifact::kHeatmapCsv);
    } else {
        std::cout << "[explain] no explain.text configured; heatmap skipped\n";
    }
    mf.save();
}

void run_full(const PipelineConfig& cfg) {
    for (const char* name : kFullRunOrder) run_stage_annotated(*find_stage(name), cfg);
}

void dry_run(const std::string& command, const PipelineConfig& cfg) {
    if (!find_stage(command)) throw UsageError("unknown command: " + command);

    // Anything parseable is parsed; anything pointing at the filesystem is
    // checked for existence. Nothing is created.
    parse_optimizer(cfg.optimizer);
    parse_metrics_mode(cfg.metrics_mode);
    parse_exec_mode(cfg.exec);
    parse_aggregator(cfg.aggregator);
    if (command == "sweep") {
        const std::vector<double> values = parse_value_list(cfg.sweep_values);
        if (values.size() < 2) throw UsageError("sweep needs at least two values");
        if (cfg.sweep_parameter != "epochs" && cfg.sweep_parameter != "batch_size" &&
            cfg.sweep_parameter != "dropout_rate")
            throw UsageError("unknown sweep parameter: " + cfg.sweep_parameter);
    }

    const bool needs_corpus = command == "preprocess" || command == "full-run";
    const bool needs_lexicon_sources = command == "build-lexicon" || command == "full-run";
    if (needs_corpus) {
        require_file(cfg.stopwords, "stopword list");
        if (!cfg.dataset.empty()) require_file(cfg.dataset, "dataset");
    }
    if (needs_lexicon_sources) {
        require_file(cfg.lexicon_main, "lexicon source");
        if (!cfg.lexicon_aux.empty()) require_file(cfg.lexicon_aux, "lexicon source");
    }

    std::string dataset = "(not used)";
    if (needs_corpus) {
        if (!cfg.dataset.empty())
            dataset = cfg.dataset;
        else if (const char* env = std::getenv("SENTILENS_DATASET"); env && *env)
            dataset = std::string(env) + " ($SENTILENS_DATASET)";
        else
            dataset = workdir_path(cfg, artifact::kSyntheticDataset) + " (generated stand-in)";
    }

    std::cout << "dry run: " << command << "\n"
              << "workdir: " << cfg.workdir << "\n"
              << "dataset: " << dataset << "\n"
              << "config: " << config_to_json(cfg) << "\n";
}

void run_command(const std::string& command, const PipelineConfig& cfg, bool dry) {
    const Stage* s = find_stage(command);
    if (!s) throw UsageError("unknown command: " + command);
    if (dry) {
        dry_run(command, cfg);
        return;
    }
    if (command == "full-run")
        run_full(cfg);  // inner stages annotate themselves
    else
        run_stage_annotated(*s, cfg);
}

}  // namespace sentilens
