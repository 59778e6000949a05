#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentilens/corpus.hpp"

namespace sentilens {

// Corpus-level TF-IDF scores. tfidf(t,d) = count(t,d) * idf(t) with
// idf(t) = ln((1+N)/(1+df(t))) + 1, document vectors L2-normalized; the
// corpus score of a term is the sum of its normalized weights over all
// documents.
struct TfidfModel {
    std::unordered_map<std::string, int> term_index;
    std::vector<std::string> terms;
    std::vector<std::int64_t> df;
    std::vector<double> corpus_score;
    std::int64_t n_documents = 0;

    double idf(int term) const;
    double score(const std::string& term) const;
};

TfidfModel fit_tfidf(const std::vector<LabeledExample>& examples);

struct AspectTermSet {
    // Descending by score, ties broken lexicographically.
    std::vector<std::pair<std::string, double>> terms;

    bool contains(const std::string& w) const {
        for (const auto& [t, s] : terms)
            if (t == w) return true;
        return false;
    }
};

using NounTest = std::function<bool(const std::string&)>;

AspectTermSet extract_aspect_terms(const TfidfModel& tfidf, const NounTest& noun_test,
                                   int k = 160);

void save_aspects_json(const std::string& path, const AspectTermSet& aspects);
AspectTermSet load_aspects_json(const std::string& path);

}  // namespace sentilens
