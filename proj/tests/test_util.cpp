#include <cstdlib>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "sentilens/util.hpp"

using namespace sentilens;

TEST_CASE("rng sequences are reproducible and seed-separated") {
    Rng a(123), b(123), c(124);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        if (x != b.uniform()) all_equal = false;
        if (x != c.uniform()) any_diff = true;
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("uniform_int stays in range and exhausts small supports") {
    Rng rng(7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 200; ++i) {
        const std::uint64_t v = rng.uniform_int(5);
        CHECK(v < 5);
        seen.insert(v);
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("shuffle permutes and preserves the multiset") {
    Rng rng(9);
    std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<int> orig = v;
    rng.shuffle(v);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == orig);
}

TEST_CASE("derive_seed separates labels and argument slots") {
    const std::uint64_t root = 42;
    std::set<std::uint64_t> seeds{
        derive_seed(root, "a"),       derive_seed(root, "b"),
        derive_seed(root, "a", 1),    derive_seed(root, "a", 0, 1),
        derive_seed(root, "a", 1, 1),
    };
    CHECK(seeds.size() == 5);
    CHECK(derive_seed(root, "a", 2, 3) == derive_seed(root, "a", 2, 3));
}

TEST_CASE("format_double round-trips through strtod") {
    for (double v : {0.0, 1.0, -1.5, 0.355, 0.1, 1e-7, 1234567.875, -2.2250738585072014e-308}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("fnv1a distinguishes order and content") {
    CHECK(fnv1a("ab") != fnv1a("ba"));
    CHECK(fnv1a("") == kFnvOffset);
    CHECK(fnv1a_u64(1) != fnv1a_u64(2));
}

TEST_CASE("hash_file matches in-memory hash and fails on missing files") {
    testing::TempDir dir("util");
    testing::write_file(dir.file("x.bin"), "payload");
    CHECK(hash_file(dir.file("x.bin")) == fnv1a("payload"));
    CHECK_THROWS_AS(hash_file(dir.file("absent.bin")), DataError);
}

TEST_CASE("read and write text files round-trip binary content") {
    testing::TempDir dir("util_io");
    const std::string content = std::string("line\n\0binary", 12);
    write_text_file(dir.file("t.txt"), content);
    CHECK(read_text_file(dir.file("t.txt")) == content);
}
