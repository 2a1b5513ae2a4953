#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "hmmboost/errors.hpp"
#include "hmmboost/features.hpp"
#include "hmmboost/rng.hpp"

using namespace hmmboost;

namespace {
OpcodeListing listing_of(std::vector<std::string> mnemonics, std::string id = "s0",
                         std::string family = "fam") {
    return {std::move(id), std::move(family), std::move(mnemonics)};
}
}  // namespace

TEST_CASE("parse_listing: lowercasing, comments, blanks, operands") {
    std::istringstream in("MOV\npush\n\n; comment\nadd");
    CHECK(parse_listing(in) == std::vector<std::string>{"mov", "push", "add"});

    std::istringstream messy("  MOV eax, ebx\r\n\t; indented comment\r\n  ADD\n");
    CHECK(parse_listing(messy) == std::vector<std::string>{"mov", "add"});

    std::istringstream empty("");
    CHECK(parse_listing(empty).empty());
}

TEST_CASE("parse_listing: a million lines survive intact") {
    std::string big;
    big.reserve(4'000'000);
    for (int i = 0; i < 1'000'000; ++i) big += "nop\n";
    std::istringstream in(big);
    CHECK(parse_listing(in).size() == 1'000'000);
}

TEST_CASE("build_vocabulary: frequency order with lexicographic ties") {
    std::vector<OpcodeListing> corpus = {
        listing_of({"mov", "mov", "mov", "push", "push", "add"}),
        listing_of({"mov", "mov", "push", "add", "xor"}, "s1")};
    const Vocabulary vocab = build_vocabulary(corpus, 2);
    CHECK(vocab.top_opcodes == std::vector<std::string>{"mov", "push"});
    CHECK(vocab.symbol_of("mov") == 0);
    CHECK(vocab.symbol_of("push") == 1);
    CHECK(vocab.symbol_of("add") == vocab.other_symbol());
    CHECK(vocab.symbol_count() == 3);

    std::vector<OpcodeListing> tied = {
        listing_of({"mov", "mov", "mov", "add", "add", "add"})};
    CHECK(build_vocabulary(tied, 1).top_opcodes == std::vector<std::string>{"add"});
}

TEST_CASE("build_vocabulary: fewer distinct opcodes than K") {
    std::vector<OpcodeListing> corpus = {listing_of({"mov", "add", "mov"})};
    const Vocabulary vocab = build_vocabulary(corpus, 30);
    CHECK(vocab.top_opcodes.size() == 2);
    CHECK(vocab.symbol_count() == 3);
    CHECK(vocab.k_requested == 30);
}

TEST_CASE("encode: map application and totality") {
    std::vector<OpcodeListing> corpus = {listing_of({"mov", "mov", "push"})};
    const Vocabulary vocab = build_vocabulary(corpus, 2);
    CHECK(encode(listing_of({"mov", "xor", "push"}), vocab) ==
          ObservationSequence{0, 2, 1});
    CHECK(encode(listing_of({"aaa", "bbb"}), vocab) == ObservationSequence{2, 2});
}

TEST_CASE("coverage matches a direct recount and the encode OTHER fraction") {
    // planted Zipf distribution over 60 tokens
    const int alphabet = 60, k = 30;
    std::vector<double> weights(alphabet);
    double total = 0.0;
    for (int r = 0; r < alphabet; ++r) {
        weights[r] = 1.0 / std::pow(r + 1.0, 1.1);
        total += weights[r];
    }
    double head = 0.0;
    for (int r = 0; r < k; ++r) head += weights[r];
    const double analytic_head_pct = 100.0 * head / total;

    Rng rng(909);
    std::vector<OpcodeListing> corpus;
    for (int s = 0; s < 40; ++s) {
        OpcodeListing sample{"s" + std::to_string(s), "fam", {}};
        for (int t = 0; t < 5000; ++t) {
            const auto tok = rng.pick_weighted(weights.data(), alphabet);
            sample.mnemonics.push_back("tok" + std::to_string(tok));
        }
        corpus.push_back(std::move(sample));
    }
    const Vocabulary vocab = build_vocabulary(corpus, k);
    const double coverage = coverage_stats(corpus, vocab);
    CHECK(coverage == doctest::Approx(analytic_head_pct).epsilon(0.02));

    // brute-force recount oracle
    std::set<std::string> top(vocab.top_opcodes.begin(), vocab.top_opcodes.end());
    long covered = 0, count = 0;
    for (const auto& sample : corpus) {
        for (const auto& m : sample.mnemonics) {
            ++count;
            covered += top.contains(m) ? 1 : 0;
        }
    }
    CHECK(coverage == doctest::Approx(100.0 * covered / count).epsilon(1e-12));

    // encode consistency: OTHER fraction is the complement of coverage
    long other = 0;
    for (const auto& sample : corpus) {
        for (int symbol : encode(sample, vocab)) {
            other += symbol == vocab.other_symbol() ? 1 : 0;
        }
    }
    CHECK(100.0 * other / count == doctest::Approx(100.0 - coverage).epsilon(1e-12));
}

TEST_CASE("vocabulary JSON round trip") {
    std::vector<OpcodeListing> corpus = {listing_of({"mov", "mov", "push", "add"})};
    const Vocabulary vocab = build_vocabulary(corpus, 2);
    // push and add tie at count 1; add wins lexicographically
    CHECK(vocab.top_opcodes == std::vector<std::string>{"mov", "add"});
    const Vocabulary back = vocabulary_from_json(vocabulary_to_json(vocab));
    CHECK(back.family == vocab.family);
    CHECK(back.k_requested == vocab.k_requested);
    CHECK(back.top_opcodes == vocab.top_opcodes);
    CHECK(back.symbol_of("add") == 1);
    CHECK(back.symbol_of("push") == back.other_symbol());
}

TEST_CASE("dataset loading: layout, ordering, unusable samples") {
    const auto root = std::filesystem::temp_directory_path() / "hmmboost_features_test";
    std::filesystem::remove_all(root);
    std::filesystem::create_directories(root / "fam");

    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(root / "fam" / name);
        out << content;
    };
    write("b.opcodes", "mov\nadd\n");
    write("a.opcodes", "push\n");
    write("empty.opcodes", "; nothing here\n");
    write("notes.txt", "ignored\n");

    const FamilyCorpus corpus = load_family(root, "fam");
    REQUIRE(corpus.samples.size() == 2);
    CHECK(corpus.samples[0].sample_id == "a");  // sorted by id
    CHECK(corpus.samples[1].sample_id == "b");
    CHECK(corpus.unusable_ids == std::vector<std::string>{"empty"});

    CHECK_THROWS_AS(load_family(root, "missing"), DatasetError);
    CHECK_THROWS_AS(load_listing(root / "fam" / "empty.opcodes", "fam"), DatasetError);
    CHECK(load_listing(root / "fam" / "b.opcodes", "fam").mnemonics ==
          std::vector<std::string>{"mov", "add"});
    std::filesystem::remove_all(root);
}
