#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sentilens {

// Per-word mean score from one dictionary source, plus the POS tags the
// word was seen with (the POS tags also back the noun filter).
struct LexiconSource {
    std::string name;
    std::unordered_map<std::string, double> scores;
    std::unordered_map<std::string, std::set<char>> pos_tags;

    std::size_t size() const { return scores.size(); }
};

// Merged word -> weight map. Lookup of an absent word returns the neutral
// default (1 unless reconfigured), never an error.
class SentimentLexicon {
public:
    SentimentLexicon() = default;
    SentimentLexicon(std::unordered_map<std::string, double> entries, double absent_default,
                     std::vector<std::string> source_names)
        : entries_(std::move(entries)),
          absent_default_(absent_default),
          source_names_(std::move(source_names)) {}

    double senti(const std::string& word) const {
        auto it = entries_.find(word);
        return it == entries_.end() ? absent_default_ : it->second;
    }

    bool contains(const std::string& word) const { return entries_.count(word) > 0; }
    std::size_t size() const { return entries_.size(); }
    double absent_default() const { return absent_default_; }
    const std::unordered_map<std::string, double>& entries() const { return entries_; }
    const std::vector<std::string>& source_names() const { return source_names_; }

private:
    std::unordered_map<std::string, double> entries_;
    double absent_default_ = 1.0;
    std::vector<std::string> source_names_;
};

// SentiWordNet 3.0 layout: POS, id, PosScore, NegScore, "word#sense ..."
// terms, gloss; '#' comment lines. Score of one occurrence is
// PosScore - NegScore; a word's score is the mean over its occurrences.
LexiconSource parse_sentiwordnet(const std::string& path);

// Generic word<TAB>pos<TAB>score lines, same per-word averaging.
LexiconSource parse_aux_lexicon(const std::string& path);

// Per-word mean over the sources that contain the word.
SentimentLexicon merge(const std::vector<LexiconSource>& sources, double absent_default = 1.0);

void save_lexicon_json(const std::string& path, const SentimentLexicon& lex);
SentimentLexicon load_lexicon_json(const std::string& path);

// Noun set extracted from a source's POS tags ('n'-tagged occurrences).
std::unordered_set<std::string> noun_set(const LexiconSource& source);

}  // namespace sentilens
