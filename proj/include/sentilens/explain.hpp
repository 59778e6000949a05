#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sentilens/features.hpp"
#include "sentilens/kernels.hpp"
#include "sentilens/model.hpp"

namespace sentilens {

struct SentenceAttribution {
    std::vector<std::string> tokens;
    Vec weights;                  // attention distribution, one weight per token
    std::vector<int> word_index;  // 1-based positions
    double probability = 0.0;
    int label = 0;
};

SentenceAttribution attribute_sentence(const Model& m, const Vocabulary& vocab,
                                       const SentimentLexicon& lexicon,
                                       const std::vector<std::string>& tokens);

enum class Aggregator { Max, Sum, Average };

std::string aggregator_name(Aggregator f);
Aggregator parse_aggregator(const std::string& name);

struct AspectWeightEntry {
    std::string term;
    double weight = 0.0;
    std::int64_t count = 0;  // sentences the term occurred in
};

struct AspectWeightReport {
    Aggregator f = Aggregator::Average;
    std::vector<AspectWeightEntry> entries;  // descending by weight
};

// A term occurring several times in one sentence first sums its
// occurrences there; f then reduces across sentences. Terms that never
// occur are omitted.
AspectWeightReport aggregate_aspect_weights(const Model& m, const Vocabulary& vocab,
                                            const SentimentLexicon& lexicon,
                                            const std::vector<LabeledExample>& examples,
                                            const AspectTermSet& aspects, Aggregator f,
                                            ExecMode exec);

struct GroupComparison {
    std::vector<AspectWeightEntry> aspect_terms;
    std::vector<AspectWeightEntry> sentiment_terms;
    double aspect_mean = 0.0;
    double sentiment_mean = 0.0;
    double ratio = 0.0;  // aspect_mean / sentiment_mean
};

// Pure comparison of two already-aggregated reports; takes the top
// `top_aspects` / `top_sentiment` rows (fewer when a report is shorter).
GroupComparison compare_groups(const AspectWeightReport& aspects,
                               const AspectWeightReport& sentiment,
                               std::size_t top_aspects = 10, std::size_t top_sentiment = 9);

// Builds the sentiment-word group from vocabulary terms whose merged
// lexicon weight clears `threshold` in absolute value and that are not
// aspect terms, aggregates both groups with f=average, and compares.
GroupComparison compare_aspect_vs_sentiment(const Model& m, const Vocabulary& vocab,
                                            const SentimentLexicon& lexicon,
                                            const std::vector<LabeledExample>& examples,
                                            const AspectWeightReport& aspect_report,
                                            const AspectTermSet& aspects, double threshold,
                                            std::size_t top_aspects = 10,
                                            std::size_t top_sentiment = 9,
                                            ExecMode exec = ExecMode::Parallel);

// JSON record {"tokens", "weights", "word_index"} plus a CSV twin.
void export_heatmap(const SentenceAttribution& attr, const std::string& json_path,
                    const std::string& csv_path);
SentenceAttribution load_heatmap(const std::string& json_path);

void save_aspect_report_json(const std::string& path, const AspectWeightReport& report);
void save_aspect_report_csv(const std::string& path, const AspectWeightReport& report);
void save_comparison_json(const std::string& path, const GroupComparison& cmp,
                          double threshold);

}  // namespace sentilens
