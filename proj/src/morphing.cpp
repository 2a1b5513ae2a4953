#include "hmmboost/morphing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hmmboost/rng.hpp"

namespace hmmboost {

MorphResult morph(const std::vector<std::string>& malware_opcodes,
                  const std::vector<OpcodeListing>& benign_corpus, const MorphConfig& cfg) {
    if (malware_opcodes.empty()) throw std::invalid_argument("malware sequence is empty");
    if (cfg.rate < 0.0) throw std::invalid_argument("morph rate must be non-negative");
    if (cfg.block_length < 1) throw std::invalid_argument("block length must be >= 1");

    std::vector<const OpcodeListing*> donors;
    for (const auto& sample : benign_corpus) {
        if (!sample.mnemonics.empty()) donors.push_back(&sample);
    }
    if (donors.empty()) throw std::invalid_argument("benign donor corpus is empty");

    const std::size_t original_len = malware_opcodes.size();
    const auto inject_total = static_cast<std::size_t>(
        std::llround(cfg.rate * static_cast<double>(original_len)));

    MorphResult result;
    if (inject_total == 0) {
        result.opcodes = malware_opcodes;
        return result;
    }

    Rng rng(cfg.seed);
    // blocks[gap] = runs to splice in before original position `gap`
    std::vector<std::vector<std::vector<std::string>>> blocks(original_len + 1);
    std::size_t remaining = inject_total;
    while (remaining > 0) {
        const auto& donor = *donors[rng.below(donors.size())];
        const std::size_t offset = rng.below(donor.mnemonics.size());
        const std::size_t want = std::min<std::size_t>(remaining, cfg.block_length);
        const std::size_t take = std::min(want, donor.mnemonics.size() - offset);
        const std::size_t gap = rng.below(original_len + 1);
        blocks[gap].emplace_back(donor.mnemonics.begin() + offset,
                                 donor.mnemonics.begin() + offset + take);
        remaining -= take;
    }

    result.opcodes.reserve(original_len + inject_total);
    for (std::size_t gap = 0; gap <= original_len; ++gap) {
        for (const auto& block : blocks[gap]) {
            for (const auto& opcode : block) {
                result.inserted_positions.push_back(result.opcodes.size());
                result.opcodes.push_back(opcode);
            }
        }
        if (gap < original_len) result.opcodes.push_back(malware_opcodes[gap]);
    }
    return result;
}

}  // namespace hmmboost
