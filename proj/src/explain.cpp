#include "sentilens/explain.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <unordered_map>

#include "json.hpp"

namespace sentilens {

using nlohmann::json;

SentenceAttribution attribute_sentence(const Model& m, const Vocabulary& vocab,
                                       const SentimentLexicon& lexicon,
                                       const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw DataError("cannot attribute an empty token sequence");
    const ForwardTrace t = forward_sentence(m, encode_tokens(vocab, lexicon, tokens), nullptr);
    SentenceAttribution attr;
    attr.tokens = tokens;
    attr.weights = t.attn;
    attr.word_index.resize(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i)
        attr.word_index[i] = static_cast<int>(i) + 1;
    attr.probability = t.p;
    attr.label = t.p >= 0.5 ? 1 : 0;
    return attr;
}

std::string aggregator_name(Aggregator f) {
    switch (f) {
        case Aggregator::Max: return "max";
        case Aggregator::Sum: return "sum";
        default: return "average";
    }
}

Aggregator parse_aggregator(const std::string& name) {
    if (name == "max") return Aggregator::Max;
    if (name == "sum") return Aggregator::Sum;
    if (name == "average") return Aggregator::Average;
    throw UsageError("unknown aggregator: " + name + " (expected max, sum, or average)");
}

AspectWeightReport aggregate_aspect_weights(const Model& m, const Vocabulary& vocab,
                                            const SentimentLexicon& lexicon,
                                            const std::vector<LabeledExample>& examples,
                                            const AspectTermSet& aspects, Aggregator f,
                                            ExecMode exec) {
    if (aspects.terms.empty()) throw UsageError("empty aspect term set");

    // Per-sentence term weights computed in parallel, collated in
    // sentence order so the result never depends on scheduling.
    using SentenceHits = std::vector<std::pair<std::string, double>>;
    std::vector<SentenceHits> hits(examples.size());
    const EncodedCorpus corpus = encode_corpus(vocab, lexicon, examples);

    auto work = [&](std::int64_t i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        const auto& tokens = examples[ui].tokens;
        if (tokens.empty()) return;
        bool any = false;
        for (const auto& tok : tokens)
            if (aspects.contains(tok)) { any = true; break; }
        if (!any) return;
        const ForwardTrace t = forward_sentence(m, corpus.sentences[ui], nullptr);
        std::map<std::string, double> within;
        for (std::size_t k = 0; k < tokens.size(); ++k)
            if (aspects.contains(tokens[k])) within[tokens[k]] += t.attn[k];
        hits[ui].assign(within.begin(), within.end());
    };
    const std::int64_t n = static_cast<std::int64_t>(examples.size());
    if (exec == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) work(i);
    } else {
        for (std::int64_t i = 0; i < n; ++i) work(i);
    }

    std::map<std::string, std::vector<double>> per_term;
    for (const auto& sentence : hits)
        for (const auto& [term, w] : sentence) per_term[term].push_back(w);

    AspectWeightReport report;
    report.f = f;
    for (const auto& [term, ws] : per_term) {
        AspectWeightEntry e;
        e.term = term;
        e.count = static_cast<std::int64_t>(ws.size());
        switch (f) {
            case Aggregator::Max: e.weight = *std::max_element(ws.begin(), ws.end()); break;
            case Aggregator::Sum: {
                double s = 0.0;
                for (const double w : ws) s += w;
                e.weight = s;
                break;
            }
            default: {
                double s = 0.0;
                for (const double w : ws) s += w;
                e.weight = s / static_cast<double>(ws.size());
                break;
            }
        }
        report.entries.push_back(std::move(e));
    }
    std::sort(report.entries.begin(), report.entries.end(),
              [](const AspectWeightEntry& a, const AspectWeightEntry& b) {
                  if (a.weight != b.weight) return a.weight > b.weight;
                  return a.term < b.term;
              });
    return report;
}

GroupComparison compare_groups(const AspectWeightReport& aspects,
                               const AspectWeightReport& sentiment,
                               std::size_t top_aspects, std::size_t top_sentiment) {
    if (aspects.entries.empty())
        throw DataError("no aspect terms occurred in the corpus; nothing to compare");
    if (sentiment.entries.empty())
        throw DataError("no sentiment words occurred in the corpus; nothing to compare");
    GroupComparison cmp;
    const std::size_t na = std::min(top_aspects, aspects.entries.size());
    const std::size_t ns = std::min(top_sentiment, sentiment.entries.size());
    cmp.aspect_terms.assign(aspects.entries.begin(),
                            aspects.entries.begin() + static_cast<std::ptrdiff_t>(na));
    cmp.sentiment_terms.assign(sentiment.entries.begin(),
                               sentiment.entries.begin() + static_cast<std::ptrdiff_t>(ns));
    double sa = 0.0, ss = 0.0;
    for (const auto& e : cmp.aspect_terms) sa += e.weight;
    for (const auto& e : cmp.sentiment_terms) ss += e.weight;
    cmp.aspect_mean = sa / static_cast<double>(na);
    cmp.sentiment_mean = ss / static_cast<double>(ns);
    cmp.ratio = cmp.sentiment_mean == 0.0 ? std::numeric_limits<double>::infinity()
                                          : cmp.aspect_mean / cmp.sentiment_mean;
    return cmp;
}

GroupComparison compare_aspect_vs_sentiment(const Model& m, const Vocabulary& vocab,
                                            const SentimentLexicon& lexicon,
                                            const std::vector<LabeledExample>& examples,
                                            const AspectWeightReport& aspect_report,
                                            const AspectTermSet& aspects, double threshold,
                                            std::size_t top_aspects, std::size_t top_sentiment,
                                            ExecMode exec) {
    if (aspect_report.f != Aggregator::Average)
        throw UsageError("the comparison needs an average-aggregated aspect report");

    AspectTermSet sentiment_terms;
    for (const auto& word : vocab.words) {
        if (!lexicon.contains(word)) continue;
        const double w = lexicon.senti(word);
        if (std::abs(w) < threshold) continue;
        if (aspects.contains(word)) continue;
        sentiment_terms.terms.emplace_back(word, w);
    }
    if (sentiment_terms.terms.empty())
        throw DataError("no vocabulary word clears the sentiment threshold " +
                        format_double(threshold) + " outside the aspect set");

    const AspectWeightReport sentiment_report = aggregate_aspect_weights(
        m, vocab, lexicon, examples, sentiment_terms, Aggregator::Average, exec);
    return compare_groups(aspect_report, sentiment_report, top_aspects, top_sentiment);
}

void export_heatmap(const SentenceAttribution& attr, const std::string& json_path,
                    const std::string& csv_path) {
    if (json_path.empty() || csv_path.empty()) throw UsageError("empty heatmap path");
    json j;
    j["tokens"] = attr.tokens;
    j["weights"] = attr.weights;
    j["word_index"] = attr.word_index;
    write_text_file(json_path, j.dump(2) + "\n");

    std::string csv = "word_index,token,weight\n";
    for (std::size_t i = 0; i < attr.tokens.size(); ++i) {
        csv += std::to_string(attr.word_index[i]);
        csv += ',';
        csv += attr.tokens[i];
        csv += ',';
        csv += format_double(attr.weights[i]);
        csv += '\n';
    }
    write_text_file(csv_path, csv);
}

SentenceAttribution load_heatmap(const std::string& json_path) {
    const json j = json::parse(read_text_file(json_path), nullptr, true);
    SentenceAttribution attr;
    attr.tokens = j.at("tokens").get<std::vector<std::string>>();
    attr.weights = j.at("weights").get<Vec>();
    attr.word_index = j.at("word_index").get<std::vector<int>>();
    if (attr.tokens.size() != attr.weights.size() ||
        attr.tokens.size() != attr.word_index.size())
        throw DataError("heatmap record fields disagree in length: " + json_path);
    return attr;
}

void save_aspect_report_json(const std::string& path, const AspectWeightReport& report) {
    json rows = json::array();
    for (const auto& e : report.entries)
        rows.push_back({{"term", e.term}, {"weight", e.weight}, {"count", e.count}});
    json j;
    j["aggregator"] = aggregator_name(report.f);
    j["terms"] = std::move(rows);
    write_text_file(path, j.dump(2) + "\n");
}

void save_aspect_report_csv(const std::string& path, const AspectWeightReport& report) {
    std::string csv = "term,aggregator,weight,count\n";
    for (const auto& e : report.entries) {
        csv += e.term;
        csv += ',';
        csv += aggregator_name(report.f);
        csv += ',';
        csv += format_double(e.weight);
        csv += ',';
        csv += std::to_string(e.count);
        csv += '\n';
    }
    write_text_file(path, csv);
}

void save_comparison_json(const std::string& path, const GroupComparison& cmp,
                          double threshold) {
    auto rows = [](const std::vector<AspectWeightEntry>& entries) {
        json arr = json::array();
        for (const auto& e : entries)
            arr.push_back({{"term", e.term}, {"weight", e.weight}, {"count", e.count}});
        return arr;
    };
    json j;
    j["aspect_terms"] = rows(cmp.aspect_terms);
    j["sentiment_terms"] = rows(cmp.sentiment_terms);
    j["aspect_mean"] = cmp.aspect_mean;
    j["sentiment_mean"] = cmp.sentiment_mean;
    j["ratio"] = cmp.ratio;
    j["sentiment_threshold"] = threshold;
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace sentilens
