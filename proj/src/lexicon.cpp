#include "sentilens/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "sentilens/util.hpp"

namespace sentilens {

using nlohmann::json;

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == '\t') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_score(const std::string& s, double lo, double hi, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        if (pos != s.size()) return false;
    } catch (...) {
        return false;
    }
    return out >= lo && out <= hi;
}

struct Accum {
    double sum = 0.0;
    std::int64_t n = 0;
};

LexiconSource finish(const std::string& name,
                     const std::unordered_map<std::string, Accum>& acc,
                     std::unordered_map<std::string, std::set<char>> pos_tags) {
    LexiconSource src;
    src.name = name;
    for (const auto& [word, a] : acc) src.scores[word] = a.sum / static_cast<double>(a.n);
    src.pos_tags = std::move(pos_tags);
    return src;
}

}  // namespace

LexiconSource parse_sentiwordnet(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open sentiment dictionary: " + path);
    std::unordered_map<std::string, Accum> acc;
    std::unordered_map<std::string, std::set<char>> pos_tags;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() < 5) {
            std::cerr << "warning: malformed dictionary line " << lineno << " in " << path << "\n";
            continue;
        }
        const std::string& pos = fields[0];
        double pos_score, neg_score;
        if (pos.size() != 1 || !parse_score(fields[2], 0.0, 1.0, pos_score) ||
            !parse_score(fields[3], 0.0, 1.0, neg_score)) {
            std::cerr << "warning: malformed dictionary line " << lineno << " in " << path << "\n";
            continue;
        }
        const double score = pos_score - neg_score;
        // Synset terms look like "word#1 other_word#2".
        std::istringstream terms(fields[4]);
        std::string term;
        while (terms >> term) {
            auto hash = term.find('#');
            std::string word = term.substr(0, hash);
            if (word.empty()) continue;
            auto& a = acc[word];
            a.sum += score;
            a.n += 1;
            pos_tags[word].insert(pos[0]);
        }
    }
    return finish("sentiwordnet", acc, std::move(pos_tags));
}

LexiconSource parse_aux_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open sentiment dictionary: " + path);
    std::unordered_map<std::string, Accum> acc;
    std::unordered_map<std::string, std::set<char>> pos_tags;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        // Accept tabs or runs of spaces as separators.
        std::istringstream f(line);
        std::string word, pos, score_str;
        double score;
        if (!(f >> word >> pos >> score_str) || pos.size() != 1 ||
            !parse_score(score_str, -1.0, 1.0, score)) {
            std::cerr << "warning: malformed dictionary line " << lineno << " in " << path << "\n";
            continue;
        }
        auto& a = acc[word];
        a.sum += score;
        a.n += 1;
        pos_tags[word].insert(pos[0]);
    }
    return finish("aux", acc, std::move(pos_tags));
}

SentimentLexicon merge(const std::vector<LexiconSource>& sources, double absent_default) {
    if (sources.empty()) throw UsageError("merge needs at least one lexicon source");
    struct MergeAccum {
        double sum = 0.0;
        std::int64_t n = 0;
        bool any_nonzero = false;
    };
    std::unordered_map<std::string, MergeAccum> acc;
    for (const auto& src : sources) {
        for (const auto& [word, score] : src.scores) {
            auto& a = acc[word];
            a.sum += score;
            a.n += 1;
            if (score != 0.0) a.any_nonzero = true;
        }
    }
    std::unordered_map<std::string, double> merged;
    merged.reserve(acc.size());
    // A word every source scores exactly 0 carries no polarity signal;
    // it falls back to the absent default, keeping its embedding at
    // full magnitude. A zero next to a nonzero source still averages in.
    for (const auto& [word, a] : acc)
        if (a.any_nonzero) merged[word] = a.sum / static_cast<double>(a.n);
    std::vector<std::string> names;
    for (const auto& src : sources) names.push_back(src.name);
    return SentimentLexicon(std::move(merged), absent_default, std::move(names));
}

void save_lexicon_json(const std::string& path, const SentimentLexicon& lex) {
    json j;
    j["absent_default"] = lex.absent_default();
    j["sources"] = lex.source_names();
    json entries = json::object();
    // Sort for a stable, diffable artifact.
    std::vector<std::string> words;
    words.reserve(lex.size());
    for (const auto& [w, s] : lex.entries()) words.push_back(w);
    std::sort(words.begin(), words.end());
    for (const auto& w : words) entries[w] = lex.entries().at(w);
    j["entries"] = std::move(entries);
    write_text_file(path, j.dump(2) + "\n");
}

SentimentLexicon load_lexicon_json(const std::string& path) {
    json j = json::parse(read_text_file(path));
    std::unordered_map<std::string, double> entries;
    for (auto& [w, s] : j.at("entries").items()) entries[w] = s.get<double>();
    std::vector<std::string> names;
    if (j.contains("sources")) names = j["sources"].get<std::vector<std::string>>();
    return SentimentLexicon(std::move(entries), j.at("absent_default").get<double>(),
                            std::move(names));
}

std::unordered_set<std::string> noun_set(const LexiconSource& source) {
    std::unordered_set<std::string> nouns;
    for (const auto& [word, tags] : source.pos_tags)
        if (tags.count('n')) nouns.insert(word);
    return nouns;
}

}  // namespace sentilens
