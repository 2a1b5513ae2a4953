#include <cmath>
#include <set>

#include <doctest.h>

#include "hmmboost/morphing.hpp"
#include "hmmboost/rng.hpp"

using namespace hmmboost;

namespace {
std::vector<OpcodeListing> donor_corpus() {
    return {{"d0", "benign", {"ben0", "ben1", "ben2", "ben3", "ben4", "ben5"}},
            {"d1", "benign", {"ben6", "ben7", "ben8"}}};
}

std::vector<std::string> numbered_malware(int len) {
    std::vector<std::string> out;
    for (int i = 0; i < len; ++i) out.push_back("mal" + std::to_string(i));
    return out;
}
}  // namespace

TEST_CASE("morph: length contract") {
    const auto donors = donor_corpus();
    MorphConfig cfg;
    cfg.seed = 5;

    cfg.rate = 0.1;
    CHECK(morph(numbered_malware(10), donors, cfg).opcodes.size() == 11);

    cfg.rate = 1.0;
    CHECK(morph(numbered_malware(10), donors, cfg).opcodes.size() == 20);
    CHECK(morph(numbered_malware(37), donors, cfg).opcodes.size() == 74);

    cfg.rate = 0.0;
    const auto original = numbered_malware(12);
    const MorphResult untouched = morph(original, donors, cfg);
    CHECK(untouched.opcodes == original);
    CHECK(untouched.inserted_positions.empty());
}

TEST_CASE("morph: randomized sweep keeps the contract exact") {
    const auto donors = donor_corpus();
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const int len = 1 + static_cast<int>(rng.below(400));
        const double rates[] = {0.0, 0.1, 0.25, 0.5, 1.0, 1.7};
        MorphConfig cfg;
        cfg.rate = rates[rng.below(6)];
        cfg.block_length = 1 + static_cast<int>(rng.below(12));
        cfg.seed = mix_seed(42, trial);

        const auto original = numbered_malware(len);
        const MorphResult result = morph(original, donors, cfg);
        const auto expected_injection =
            static_cast<std::size_t>(std::llround(cfg.rate * len));
        CHECK(result.opcodes.size() == original.size() + expected_injection);
        CHECK(result.inserted_positions.size() == expected_injection);

        // deleting the traced positions recovers the original exactly
        std::set<std::size_t> inserted(result.inserted_positions.begin(),
                                       result.inserted_positions.end());
        std::vector<std::string> recovered;
        for (std::size_t i = 0; i < result.opcodes.size(); ++i) {
            if (!inserted.contains(i)) recovered.push_back(result.opcodes[i]);
        }
        CHECK(recovered == original);

        // injected content comes from the donors
        for (std::size_t pos : result.inserted_positions) {
            CHECK(result.opcodes[pos].starts_with("ben"));
        }
    }
}

TEST_CASE("morph: deterministic per seed") {
    const auto donors = donor_corpus();
    MorphConfig cfg;
    cfg.rate = 0.5;
    cfg.seed = 11;
    const auto a = morph(numbered_malware(50), donors, cfg);
    const auto b = morph(numbered_malware(50), donors, cfg);
    CHECK(a.opcodes == b.opcodes);
    CHECK(a.inserted_positions == b.inserted_positions);
    cfg.seed = 12;
    CHECK(morph(numbered_malware(50), donors, cfg).opcodes != a.opcodes);
}

TEST_CASE("morph: rejects empty inputs") {
    MorphConfig cfg;
    cfg.rate = 0.5;
    CHECK_THROWS_AS(morph(numbered_malware(5), {}, cfg), std::invalid_argument);
    const std::vector<OpcodeListing> hollow = {{"d", "benign", {}}};
    CHECK_THROWS_AS(morph(numbered_malware(5), hollow, cfg), std::invalid_argument);
    CHECK_THROWS_AS(morph({}, donor_corpus(), cfg), std::invalid_argument);
    cfg.rate = -0.1;
    CHECK_THROWS_AS(morph(numbered_malware(5), donor_corpus(), cfg), std::invalid_argument);
    cfg.rate = 0.5;
    cfg.block_length = 0;
    CHECK_THROWS_AS(morph(numbered_malware(5), donor_corpus(), cfg), std::invalid_argument);
}
