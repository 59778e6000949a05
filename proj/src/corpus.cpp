#include "sentilens/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "sentilens/util.hpp"

namespace sentilens {

using nlohmann::json;

StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stopword file: " + path);
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r\n");
        set.insert(line.substr(b, e - b + 1));
    }
    return set;
}

namespace {

// "overall" must be an integral number in [1,5]; tolerate 5.0-style floats.
std::optional<int> parse_overall(const json& v) {
    if (!v.is_number()) return std::nullopt;
    double d = v.get<double>();
    double r = std::round(d);
    if (std::abs(d - r) > 1e-9) return std::nullopt;
    int i = static_cast<int>(r);
    if (i < 1 || i > 5) return std::nullopt;
    return i;
}

std::vector<RawReview> load_reviews_jsonl(const std::string& path, LoadStats& stats) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open review file: " + path);
    std::vector<RawReview> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object() || !rec.contains("reviewText") ||
            !rec.contains("overall") || !rec["reviewText"].is_string()) {
            ++stats.skipped_malformed;
            std::cerr << "warning: skipping malformed record at line " << lineno << "\n";
            continue;
        }
        auto overall = parse_overall(rec["overall"]);
        if (!overall) {
            ++stats.skipped_malformed;
            std::cerr << "warning: skipping record with bad rating at line " << lineno << "\n";
            continue;
        }
        RawReview r;
        r.review_text = rec["reviewText"].get<std::string>();
        r.overall = *overall;
        for (auto& [key, value] : rec.items()) {
            if (key == "reviewText" || key == "overall") continue;
            r.extras[key] = value.is_string() ? value.get<std::string>() : value.dump();
        }
        out.push_back(std::move(r));
        ++stats.records;
    }
    return out;
}

// Minimal RFC 4180 reader: quoted fields, doubled quotes, newlines inside
// quotes.
std::vector<std::vector<std::string>> read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool any = false;
    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get(c);
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (c == '\n') {
            if (!field.empty() || any || !row.empty()) {
                row.push_back(std::move(field));
                field.clear();
                rows.push_back(std::move(row));
                row.clear();
                any = false;
            }
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    if (!field.empty() || any || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RawReview> load_reviews_csv(const std::string& path, LoadStats& stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open review file: " + path);
    auto rows = read_csv(in);
    if (rows.empty()) return {};
    const auto& header = rows[0];
    int text_col = -1, overall_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "reviewText") text_col = static_cast<int>(i);
        if (header[i] == "overall") overall_col = static_cast<int>(i);
    }
    if (text_col < 0 || overall_col < 0)
        throw DataError("CSV header must contain reviewText and overall: " + path);
    std::vector<RawReview> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (static_cast<int>(r.size()) <= std::max(text_col, overall_col)) {
            ++stats.skipped_malformed;
            std::cerr << "warning: skipping short CSV row " << i + 1 << "\n";
            continue;
        }
        double d;
        try {
            d = std::stod(r[overall_col]);
        } catch (...) {
            ++stats.skipped_malformed;
            std::cerr << "warning: skipping CSV row with bad rating " << i + 1 << "\n";
            continue;
        }
        auto overall = parse_overall(json(d));
        if (!overall) {
            ++stats.skipped_malformed;
            std::cerr << "warning: skipping CSV row with bad rating " << i + 1 << "\n";
            continue;
        }
        RawReview rec;
        rec.review_text = r[text_col];
        rec.overall = *overall;
        out.push_back(std::move(rec));
        ++stats.records;
    }
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::vector<RawReview> load_reviews(const std::string& path, LoadStats& stats) {
    if (ends_with(path, ".csv")) return load_reviews_csv(path, stats);
    return load_reviews_jsonl(path, stats);
}

std::optional<int> derive_label(int overall, const LabelThresholds& t) {
    if (overall < 1 || overall > 5)
        throw DataError("rating out of range: " + std::to_string(overall));
    if (overall >= t.positive_min) return 1;
    if (overall <= t.negative_max) return 0;
    return std::nullopt;
}

std::vector<std::string> preprocess(const std::string& text, const StopwordSet& stopwords) {
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            if (!stopwords.count(cur)) tokens.push_back(cur);
            cur.clear();
        }
    };
    for (unsigned char c : text) {
        if (c >= 'A' && c <= 'Z') {
            cur.push_back(static_cast<char>(c - 'A' + 'a'));
        } else if (c >= 'a' && c <= 'z') {
            cur.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::vector<LabeledExample> label_corpus(const std::vector<RawReview>& raw,
                                         const StopwordSet& stopwords,
                                         const LabelThresholds& thresholds,
                                         CorpusStats& stats) {
    std::vector<LabeledExample> out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto label = derive_label(raw[i].overall, thresholds);
        if (!label) {
            ++stats.dropped_neutral;
            continue;
        }
        auto tokens = preprocess(raw[i].review_text, stopwords);
        if (tokens.empty()) {
            ++stats.dropped_empty;
            continue;
        }
        out.push_back({std::move(tokens), *label, static_cast<int>(i)});
    }
    stats.usable = out.size();
    return out;
}

Vocabulary build_vocab(const std::vector<LabeledExample>& examples, std::int64_t min_count) {
    if (min_count < 1) throw UsageError("min_count must be >= 1");
    std::unordered_map<std::string, std::int64_t> freq;
    for (const auto& ex : examples)
        for (const auto& tok : ex.tokens) ++freq[tok];

    std::vector<std::pair<std::string, std::int64_t>> kept;
    for (auto& [w, c] : freq)
        if (c >= min_count) kept.emplace_back(w, c);
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary v;
    v.words.reserve(kept.size());
    v.counts.reserve(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        v.words.push_back(kept[i].first);
        v.counts.push_back(kept[i].second);
        v.index[kept[i].first] = static_cast<int>(i) + 1;
    }
    return v;
}

std::uint64_t Vocabulary::content_hash() const {
    std::uint64_t h = kFnvOffset;
    for (const auto& w : words) {
        h = fnv1a(w, h);
        h = fnv1a("\n", h);
    }
    return h;
}

DatasetSplit split_dataset(const std::vector<LabeledExample>& examples, double ratio,
                           std::uint64_t seed) {
    if (ratio <= 0.0 || ratio >= 1.0) throw UsageError("split ratio must be in (0,1)");
    if (examples.size() < 2) throw DataError("need at least 2 examples to split");
    std::vector<std::size_t> order(examples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(derive_seed(seed, "split"));
    rng.shuffle(order);

    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(ratio * static_cast<double>(examples.size())));
    DatasetSplit split;
    split.seed = seed;
    split.train.reserve(n_train);
    split.test.reserve(examples.size() - n_train);
    for (std::size_t i = 0; i < order.size(); ++i) {
        (i < n_train ? split.train : split.test).push_back(examples[order[i]]);
    }
    return split;
}

void save_examples_jsonl(const std::string& path, const std::vector<LabeledExample>& examples) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write: " + path);
    for (const auto& ex : examples) {
        json rec;
        rec["id"] = ex.source_id;
        rec["label"] = ex.label;
        rec["tokens"] = ex.tokens;
        out << rec.dump() << "\n";
    }
}

std::vector<LabeledExample> load_examples_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset artifact: " + path);
    std::vector<LabeledExample> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec = json::parse(line);
        LabeledExample ex;
        ex.source_id = rec.at("id").get<int>();
        ex.label = rec.at("label").get<int>();
        ex.tokens = rec.at("tokens").get<std::vector<std::string>>();
        out.push_back(std::move(ex));
    }
    return out;
}

void save_vocab_json(const std::string& path, const Vocabulary& vocab) {
    json j;
    j["words"] = vocab.words;
    j["counts"] = vocab.counts;
    write_text_file(path, j.dump(2) + "\n");
}

Vocabulary load_vocab_json(const std::string& path) {
    json j = json::parse(read_text_file(path));
    Vocabulary v;
    v.words = j.at("words").get<std::vector<std::string>>();
    v.counts = j.at("counts").get<std::vector<std::int64_t>>();
    for (std::size_t i = 0; i < v.words.size(); ++i)
        v.index[v.words[i]] = static_cast<int>(i) + 1;
    return v;
}

}  // namespace sentilens
