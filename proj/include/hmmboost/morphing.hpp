#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hmmboost/features.hpp"

namespace hmmboost {

struct MorphConfig {
    double rate = 0.0;     // injected fraction of the original length
    int block_length = 10; // target length of each inserted benign run
    std::uint64_t seed = 0;
};

struct MorphResult {
    std::vector<std::string> opcodes;
    // Output indices holding injected opcodes, ascending. Erasing them
    // recovers the input exactly.
    std::vector<std::size_t> inserted_positions;
};

// Injects round(rate * T) benign opcodes into a length-T malware sequence
// as contiguous blocks copied from uniformly chosen benign samples at
// uniformly chosen offsets (truncated at the donor's end, shortfall made
// up by further blocks), each block inserted at a uniformly chosen
// position. The original opcodes keep their relative order; the output
// length is exactly T + round(rate * T). Operates on raw mnemonics, before
// any vocabulary encoding.
MorphResult morph(const std::vector<std::string>& malware_opcodes,
                  const std::vector<OpcodeListing>& benign_corpus, const MorphConfig& cfg);

}  // namespace hmmboost
