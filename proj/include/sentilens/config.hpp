#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sentilens {

// Flat dotted-key configuration. Every field maps to exactly one key in
// the config file and one --set override; list-valued options are
// comma-separated strings split at the point of use.
struct PipelineConfig {
    // paths
    std::string dataset;           // empty: $SENTILENS_DATASET, else a generated stand-in corpus
    std::string stopwords = "data/stopwords_en.txt";
    std::string lexicon_main = "data/sentiwordnet_mini.tsv";
    std::string lexicon_aux = "data/aux_lexicon.tsv";  // empty disables the second source
    std::string workdir = "work";

    // corpus
    std::int64_t positive_min = 4;
    std::int64_t negative_max = 2;
    std::int64_t min_count = 5;
    double split_ratio = 0.7;
    std::int64_t max_records = 0;  // 0: no cap

    // lexicon
    double absent_default = 1.0;

    // embedding
    std::int64_t embed_size = 200;
    double embed_alpha = 0.025;
    double embed_min_alpha = 1e-4;
    std::int64_t embed_window = 5;
    std::int64_t embed_negatives = 5;
    std::int64_t embed_iters = 5;
    std::int64_t embed_batch_words = 10000;
    std::int64_t embed_max_vocab = 0;
    bool embed_deterministic = true;

    // features
    std::int64_t aspect_k = 160;

    // model
    std::int64_t d_h = 128;
    std::int64_t d_a = 128;
    double init_range = 0.08;
    double forget_bias = 1.0;

    // train
    std::int64_t epochs = 8;
    std::int64_t batch_size = 32;
    double dropout_rate = 0.4;
    std::string optimizer = "adam";
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_eps = 1e-8;
    bool loss_root_mse = true;
    bool loss_two_term_ce = false;
    std::string metrics_mode = "paper";
    std::int64_t grad_slots = 8;
    std::string exec = "parallel";

    // sweep
    std::string sweep_parameter = "epochs";
    std::string sweep_values = "8,10,12,17";

    // explain
    std::string explain_text;  // empty: the explain stage skips the heatmap
    std::string aggregator = "average";
    std::int64_t top_aspects = 10;
    std::int64_t top_sentiment = 9;
    double sentiment_threshold = 0.3;

    // synthetic stand-in corpus, used when no dataset is available
    std::int64_t synth_records = 10261;
    std::uint64_t synth_seed = 7;

    std::uint64_t seed = 42;
};

// Key catalog in file order; each entry names one PipelineConfig field.
std::vector<std::string> config_keys();

// "key = value" assignment; unknown keys and unparsable values are
// usage errors.
void apply_config_entry(PipelineConfig& cfg, const std::string& key, const std::string& value);

// '#' starts a comment; blank lines are skipped.
PipelineConfig load_config_file(const std::string& path);
void apply_config_text(PipelineConfig& cfg, const std::string& text, const std::string& origin);

std::string config_to_json(const PipelineConfig& cfg);

std::vector<std::string> split_list(const std::string& csv);
std::vector<double> parse_value_list(const std::string& csv);

}  // namespace sentilens
