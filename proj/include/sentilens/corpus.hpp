#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sentilens {

// One record from the raw review file. Fields other than the text and the
// star rating are carried as opaque strings.
struct RawReview {
    std::string review_text;
    int overall = 0;  // star rating in [1,5]
    std::map<std::string, std::string> extras;
};

struct LoadStats {
    std::size_t records = 0;
    std::size_t skipped_malformed = 0;
};

struct LabeledExample {
    std::vector<std::string> tokens;
    int label = 0;  // 0 negative, 1 positive
    int source_id = 0;
};

struct LabelThresholds {
    int positive_min = 4;  // rating >= this -> positive
    int negative_max = 2;  // rating <= this -> negative; in between -> dropped
};

struct CorpusStats {
    std::size_t usable = 0;
    std::size_t dropped_neutral = 0;
    std::size_t dropped_empty = 0;
};

// word <-> index map. Index 0 is reserved for padding/unknown; real words
// get indices >= 1 ordered by descending frequency, ties lexicographic.
struct Vocabulary {
    std::vector<std::string> words;          // words[i] is the word at index i+1
    std::vector<std::int64_t> counts;        // counts[i] matches words[i]
    std::unordered_map<std::string, int> index;

    int size() const { return static_cast<int>(words.size()); }

    // 0 when unknown.
    int lookup(const std::string& w) const {
        auto it = index.find(w);
        return it == index.end() ? 0 : it->second;
    }

    std::uint64_t content_hash() const;
};

struct DatasetSplit {
    std::vector<LabeledExample> train;
    std::vector<LabeledExample> test;
    std::uint64_t seed = 0;
};

using StopwordSet = std::unordered_set<std::string>;

// One word per line, '#' starts a comment.
StopwordSet load_stopwords(const std::string& path);

// JSON-lines (keys "reviewText", "overall") or CSV with those columns,
// chosen by file extension. Malformed records are skipped and counted.
std::vector<RawReview> load_reviews(const std::string& path, LoadStats& stats);

// {4,5} -> positive, {1,2} -> negative, 3 -> nullopt (dropped).
std::optional<int> derive_label(int overall, const LabelThresholds& t = {});

// Replace non-alphabetic characters with separators, lowercase, split,
// drop stopwords.
std::vector<std::string> preprocess(const std::string& text, const StopwordSet& stopwords);

std::vector<LabeledExample> label_corpus(const std::vector<RawReview>& raw,
                                         const StopwordSet& stopwords,
                                         const LabelThresholds& thresholds,
                                         CorpusStats& stats);

Vocabulary build_vocab(const std::vector<LabeledExample>& examples, std::int64_t min_count);

DatasetSplit split_dataset(const std::vector<LabeledExample>& examples, double ratio,
                           std::uint64_t seed);

void save_examples_jsonl(const std::string& path, const std::vector<LabeledExample>& examples);
std::vector<LabeledExample> load_examples_jsonl(const std::string& path);

void save_vocab_json(const std::string& path, const Vocabulary& vocab);
Vocabulary load_vocab_json(const std::string& path);

}  // namespace sentilens
