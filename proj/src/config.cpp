#include "sentilens/config.hpp"

#include <algorithm>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "sentilens/util.hpp"

namespace sentilens {

namespace {

using Field = std::variant<std::string PipelineConfig::*, double PipelineConfig::*,
                           std::int64_t PipelineConfig::*, bool PipelineConfig::*,
                           std::uint64_t PipelineConfig::*>;

struct Entry {
    const char* key;
    Field field;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = {
        {"paths.dataset", &PipelineConfig::dataset},
        {"paths.stopwords", &PipelineConfig::stopwords},
        {"paths.lexicon_main", &PipelineConfig::lexicon_main},
        {"paths.lexicon_aux", &PipelineConfig::lexicon_aux},
        {"paths.workdir", &PipelineConfig::workdir},
        {"corpus.positive_min", &PipelineConfig::positive_min},
        {"corpus.negative_max", &PipelineConfig::negative_max},
        {"corpus.min_count", &PipelineConfig::min_count},
        {"corpus.split_ratio", &PipelineConfig::split_ratio},
        {"corpus.max_records", &PipelineConfig::max_records},
        {"lexicon.absent_default", &PipelineConfig::absent_default},
        {"embedding.size", &PipelineConfig::embed_size},
        {"embedding.alpha", &PipelineConfig::embed_alpha},
        {"embedding.min_alpha", &PipelineConfig::embed_min_alpha},
        {"embedding.window", &PipelineConfig::embed_window},
        {"embedding.negatives", &PipelineConfig::embed_negatives},
        {"embedding.iters", &PipelineConfig::embed_iters},
        {"embedding.batch_words", &PipelineConfig::embed_batch_words},
        {"embedding.max_vocab", &PipelineConfig::embed_max_vocab},
        {"embedding.deterministic", &PipelineConfig::embed_deterministic},
        {"features.aspect_k", &PipelineConfig::aspect_k},
        {"model.d_h", &PipelineConfig::d_h},
        {"model.d_a", &PipelineConfig::d_a},
        {"model.init_range", &PipelineConfig::init_range},
        {"model.forget_bias", &PipelineConfig::forget_bias},
        {"train.epochs", &PipelineConfig::epochs},
        {"train.batch_size", &PipelineConfig::batch_size},
        {"train.dropout_rate", &PipelineConfig::dropout_rate},
        {"train.optimizer", &PipelineConfig::optimizer},
        {"train.lr", &PipelineConfig::lr},
        {"train.beta1", &PipelineConfig::beta1},
        {"train.beta2", &PipelineConfig::beta2},
        {"train.eps", &PipelineConfig::adam_eps},
        {"train.loss_root_mse", &PipelineConfig::loss_root_mse},
        {"train.loss_two_term_ce", &PipelineConfig::loss_two_term_ce},
        {"train.metrics_mode", &PipelineConfig::metrics_mode},
        {"train.grad_slots", &PipelineConfig::grad_slots},
        {"train.exec", &PipelineConfig::exec},
        {"sweep.parameter", &PipelineConfig::sweep_parameter},
        {"sweep.values", &PipelineConfig::sweep_values},
        {"explain.text", &PipelineConfig::explain_text},
        {"explain.aggregator", &PipelineConfig::aggregator},
        {"explain.top_aspects", &PipelineConfig::top_aspects},
        {"explain.top_sentiment", &PipelineConfig::top_sentiment},
        {"explain.sentiment_threshold", &PipelineConfig::sentiment_threshold},
        {"synth.records", &PipelineConfig::synth_records},
        {"synth.seed", &PipelineConfig::synth_seed},
        {"seed", &PipelineConfig::seed},
    };
    return r;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double_value(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos == value.size()) return v;
    } catch (...) {
    }
    throw UsageError("config key " + key + " needs a number, got '" + value + "'");
}

std::int64_t parse_i64_value(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos == value.size()) return v;
    } catch (...) {
    }
    throw UsageError("config key " + key + " needs an integer, got '" + value + "'");
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos == value.size() && value.find('-') == std::string::npos) return v;
    } catch (...) {
    }
    throw UsageError("config key " + key + " needs a non-negative integer, got '" + value + "'");
}

bool parse_bool_value(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw UsageError("config key " + key + " needs true or false, got '" + value + "'");
}

}  // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& e : registry()) keys.emplace_back(e.key);
    return keys;
}

void apply_config_entry(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    for (const auto& e : registry()) {
        if (key != e.key) continue;
        std::visit(
            [&](auto member) {
                using T = std::remove_reference_t<decltype(cfg.*member)>;
                if constexpr (std::is_same_v<T, std::string>) {
                    cfg.*member = value;
                } else if constexpr (std::is_same_v<T, double>) {
                    cfg.*member = parse_double_value(key, value);
                } else if constexpr (std::is_same_v<T, std::int64_t>) {
                    cfg.*member = parse_i64_value(key, value);
                } else if constexpr (std::is_same_v<T, bool>) {
                    cfg.*member = parse_bool_value(key, value);
                } else {
                    cfg.*member = parse_u64_value(key, value);
                }
            },
            e.field);
        return;
    }
    throw UsageError("unknown config key: " + key);
}

void apply_config_text(PipelineConfig& cfg, const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(origin + ":" + std::to_string(lineno) +
                             ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw UsageError(origin + ":" + std::to_string(lineno) + ": empty key");
        apply_config_entry(cfg, key, value);
    }
}

PipelineConfig load_config_file(const std::string& path) {
    PipelineConfig cfg;
    apply_config_text(cfg, read_text_file(path), path);
    return cfg;
}

std::string config_to_json(const PipelineConfig& cfg) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& e : registry()) {
        std::visit([&](auto member) { j[e.key] = cfg.*member; }, e.field);
    }
    return j.dump(2);
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(csv);
    while (std::getline(in, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::vector<double> parse_value_list(const std::string& csv) {
    std::vector<double> out;
    for (const auto& item : split_list(csv)) out.push_back(parse_double_value("sweep.values", item));
    return out;
}

}  // namespace sentilens
