#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "sentilens/lexicon.hpp"
#include "sentilens/util.hpp"

using namespace sentilens;

namespace {

LexiconSource source_of(const char* name,
                        std::initializer_list<std::pair<const char*, double>> rows) {
    LexiconSource src;
    src.name = name;
    for (const auto& [w, s] : rows) src.scores[w] = s;
    return src;
}

}  // namespace

TEST_CASE("parse_sentiwordnet averages per-occurrence pos minus neg") {
    testing::TempDir dir("swn");
    const std::string path = dir.file("swn.tsv");
    testing::write_file(path,
                        "# POS\tID\tPosScore\tNegScore\tSynsetTerms\tGloss\n"
                        "a\t00001\t0.75\t0\tgood#1\thaving merit\n"
                        "a\t00002\t0.25\t0\tgood#2 ripe#1\tfully developed\n"
                        "n\t00003\t0.5\t0.5\tbalance#1\tequal weighting\n"
                        "v\t00004\t0\t0.125\tdrag#1\tpull along\n");
    LexiconSource src = parse_sentiwordnet(path);
    CHECK(src.size() == 4);
    CHECK(src.scores.at("good") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(src.scores.at("ripe") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(src.scores.at("balance") == 0.0);  // PosScore == NegScore cancels
    CHECK(src.scores.at("drag") == doctest::Approx(-0.125).epsilon(1e-12));
    CHECK(src.pos_tags.at("good") == std::set<char>{'a'});
    CHECK(src.pos_tags.at("balance") == std::set<char>{'n'});
}

TEST_CASE("parse_sentiwordnet skips comments and malformed lines") {
    testing::TempDir dir("swn_bad");
    const std::string path = dir.file("swn.tsv");
    testing::write_file(path,
                        "# header only\n"
                        "\n"
                        "a\t1\tnot_a_number\t0\tword#1\tgloss\n"
                        "a\t2\t0.5\n"
                        "a\t3\t1.5\t0\ttoobig#1\tgloss\n"
                        "a\t4\t0.5\t0\tkept#1\tgloss\n");
    LexiconSource src = parse_sentiwordnet(path);
    CHECK(src.size() == 1);
    CHECK(src.scores.at("kept") == 0.5);
}

TEST_CASE("parse_sentiwordnet on a comment-only file yields an empty source") {
    testing::TempDir dir("swn_empty");
    const std::string path = dir.file("swn.tsv");
    testing::write_file(path, "# nothing\n# here\n");
    CHECK(parse_sentiwordnet(path).size() == 0);
    CHECK_THROWS_AS(parse_sentiwordnet(dir.file("absent.tsv")), DataError);
}

TEST_CASE("parse_aux_lexicon averages duplicate words and accepts zero") {
    testing::TempDir dir("aux");
    const std::string path = dir.file("aux.tsv");
    testing::write_file(path,
                        "# word pos score\n"
                        "love\tv\t0.0\n"
                        "fine\ta\t0.4\n"
                        "fine\ta\t0.2\n"
                        "junk\tz\n");
    LexiconSource src = parse_aux_lexicon(path);
    CHECK(src.size() == 2);
    CHECK(src.scores.at("love") == 0.0);
    CHECK(src.scores.at("fine") == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(src.pos_tags.at("love") == std::set<char>{'v'});
}

TEST_CASE("merge averages across the sources containing each word") {
    auto main = source_of("m", {{"love", 0.71}, {"solo", 0.4}, {"clash", 0.4}});
    auto aux = source_of("x", {{"love", 0.0}, {"clash", -0.4}});
    SentimentLexicon lex = merge({main, aux});

    // Exact in binary: (0.71 + 0.0) / 2 halves the significand only.
    CHECK(lex.senti("love") == 0.355);
    CHECK(lex.senti("solo") == 0.4);
    CHECK(lex.senti("clash") == 0.0);
    CHECK(lex.contains("clash"));  // zero from cancellation is a real entry
    CHECK(lex.senti("absent") == 1.0);
    CHECK(!lex.contains("absent"));
    CHECK(lex.source_names() == std::vector<std::string>{"m", "x"});
}

TEST_CASE("merge excludes words scored zero by every source") {
    auto main = source_of("m", {{"cable", 0.0}, {"fine", 0.2}});
    auto aux = source_of("x", {{"cable", 0.0}, {"fine", 0.0}});
    SentimentLexicon lex = merge({main, aux}, 1.0);
    CHECK(!lex.contains("cable"));
    CHECK(lex.senti("cable") == 1.0);  // falls through to the absent default
    // A zero next to a nonzero source still averages in.
    CHECK(lex.contains("fine"));
    CHECK(lex.senti("fine") == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("merge is invariant under source permutation") {
    auto a = source_of("a", {{"p", 0.3}, {"q", -0.1}});
    auto b = source_of("b", {{"p", 0.5}, {"r", 0.2}});
    auto c = source_of("c", {{"q", 0.7}});
    SentimentLexicon fwd = merge({a, b, c});
    SentimentLexicon rev = merge({c, b, a});
    CHECK(fwd.size() == rev.size());
    for (const auto& [w, s] : fwd.entries()) CHECK(rev.senti(w) == s);
}

TEST_CASE("merging a source with itself reproduces its scores") {
    auto a = source_of("a", {{"p", 0.3}, {"q", -0.1}});
    SentimentLexicon twice = merge({a, a});
    CHECK(twice.senti("p") == 0.3);
    CHECK(twice.senti("q") == -0.1);
}

TEST_CASE("merge requires at least one source") {
    CHECK_THROWS_AS(merge({}), UsageError);
}

TEST_CASE("absent_default is configurable") {
    auto a = source_of("a", {{"p", 0.3}});
    SentimentLexicon lex = merge({a}, 0.5);
    CHECK(lex.senti("missing") == 0.5);
    CHECK(lex.absent_default() == 0.5);
}

TEST_CASE("lexicon round-trips through its json artifact") {
    testing::TempDir dir("lex_rt");
    auto a = source_of("a", {{"p", 0.3}, {"q", -0.125}, {"love", 0.355}});
    SentimentLexicon lex = merge({a}, 1.0);
    const std::string path = dir.file("lexicon.json");
    save_lexicon_json(path, lex);
    SentimentLexicon back = load_lexicon_json(path);
    CHECK(back.size() == lex.size());
    CHECK(back.absent_default() == 1.0);
    for (const auto& [w, s] : lex.entries()) CHECK(back.senti(w) == s);
    CHECK(back.source_names() == lex.source_names());
}

TEST_CASE("noun_set keeps only n-tagged words") {
    LexiconSource src;
    src.name = "s";
    src.scores = {{"cable", 0.0}, {"quickly", 0.1}, {"watch", 0.05}};
    src.pos_tags["cable"] = {'n'};
    src.pos_tags["quickly"] = {'r'};
    src.pos_tags["watch"] = {'n', 'v'};
    auto nouns = noun_set(src);
    CHECK(nouns.count("cable") == 1);
    CHECK(nouns.count("quickly") == 0);
    CHECK(nouns.count("watch") == 1);
    CHECK(nouns.count("") == 0);
}

TEST_CASE("bundled dictionaries merge to the documented anchor values") {
    LexiconSource main = parse_sentiwordnet("data/sentiwordnet_mini.tsv");
    LexiconSource aux = parse_aux_lexicon("data/aux_lexicon.tsv");
    SentimentLexicon lex = merge({main, aux}, 1.0);

    CHECK(lex.senti("love") == 0.355);
    CHECK(lex.senti("notaword") == 1.0);
    for (const auto& [w, s] : lex.entries()) {
        CHECK(std::abs(s) <= 1.0);
        CHECK(std::isfinite(s));
    }
    // The generator's gear nouns carry no polarity, so the all-zero rule
    // drops them from the merged entries while the noun filter keeps them.
    auto nouns = noun_set(main);
    CHECK(nouns.count("cable") == 1);
    CHECK(nouns.count("fender") == 1);
    CHECK(!lex.contains("cable"));
    CHECK(lex.senti("cable") == 1.0);
    CHECK(lex.senti("great") == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(lex.senti("terrible") == doctest::Approx(-0.45).epsilon(1e-12));
}
