#include "sentilens/features.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "sentilens/util.hpp"

namespace sentilens {

using nlohmann::json;

double TfidfModel::idf(int term) const {
    return std::log((1.0 + static_cast<double>(n_documents)) /
                    (1.0 + static_cast<double>(df[term]))) +
           1.0;
}

double TfidfModel::score(const std::string& term) const {
    auto it = term_index.find(term);
    return it == term_index.end() ? 0.0 : corpus_score[it->second];
}

TfidfModel fit_tfidf(const std::vector<LabeledExample>& examples) {
    if (examples.empty()) throw DataError("cannot fit TF-IDF on an empty corpus");

    TfidfModel m;
    m.n_documents = static_cast<std::int64_t>(examples.size());

    // First pass: document frequencies over all distinct terms.
    for (const auto& ex : examples) {
        std::unordered_map<std::string, int> seen;
        for (const auto& tok : ex.tokens) ++seen[tok];
        for (const auto& [tok, cnt] : seen) {
            auto it = m.term_index.find(tok);
            if (it == m.term_index.end()) {
                m.term_index.emplace(tok, static_cast<int>(m.terms.size()));
                m.terms.push_back(tok);
                m.df.push_back(1);
            } else {
                ++m.df[it->second];
            }
        }
    }

    // Second pass: accumulate L2-normalized document weights per term,
    // document by document so the summation order is fixed.
    m.corpus_score.assign(m.terms.size(), 0.0);
    std::vector<std::pair<int, double>> weights;
    for (const auto& ex : examples) {
        std::unordered_map<std::string, int> counts;
        for (const auto& tok : ex.tokens) ++counts[tok];
        weights.clear();
        for (const auto& [tok, cnt] : counts) {
            int t = m.term_index.at(tok);
            weights.emplace_back(t, static_cast<double>(cnt) * m.idf(t));
        }
        // Fixed order inside the document too.
        std::sort(weights.begin(), weights.end());
        double norm_sq = 0.0;
        for (const auto& [t, w] : weights) norm_sq += w * w;
        const double norm = std::sqrt(norm_sq);
        if (norm == 0.0) continue;
        for (const auto& [t, w] : weights) m.corpus_score[t] += w / norm;
    }
    return m;
}

AspectTermSet extract_aspect_terms(const TfidfModel& tfidf, const NounTest& noun_test, int k) {
    if (k < 1) throw UsageError("aspect set size must be >= 1");
    AspectTermSet out;
    for (std::size_t i = 0; i < tfidf.terms.size(); ++i) {
        if (noun_test(tfidf.terms[i]))
            out.terms.emplace_back(tfidf.terms[i], tfidf.corpus_score[i]);
    }
    std::sort(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<int>(out.terms.size()) > k) out.terms.resize(k);
    return out;
}

void save_aspects_json(const std::string& path, const AspectTermSet& aspects) {
    json arr = json::array();
    for (const auto& [term, score] : aspects.terms) {
        arr.push_back(json{{"term", term}, {"score", score}});
    }
    write_text_file(path, arr.dump(2) + "\n");
}

AspectTermSet load_aspects_json(const std::string& path) {
    json arr = json::parse(read_text_file(path));
    AspectTermSet out;
    for (const auto& item : arr)
        out.terms.emplace_back(item.at("term").get<std::string>(), item.at("score").get<double>());
    return out;
}

}  // namespace sentilens
