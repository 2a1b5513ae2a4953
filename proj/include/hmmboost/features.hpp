#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hmmboost/hmm.hpp"

namespace hmmboost {

// One disassembled sample: its mnemonic opcode sequence, lowercased, in
// file order.
struct OpcodeListing {
    std::string sample_id;
    std::string family;  // "benign" or a malware family name
    std::vector<std::string> mnemonics;
};

// Parses the .opcodes format: one mnemonic per line, UTF-8. Blank lines
// and lines whose first non-blank character is ';' are skipped; anything
// after the first whitespace-delimited token is ignored; tokens are
// lowercased. May return an empty list (an unusable sample).
std::vector<std::string> parse_listing(std::istream& in);

// Reads one sample file; sample_id is the filename stem. Throws
// DatasetError if the file is missing or parses to nothing.
OpcodeListing load_listing(const std::filesystem::path& file, const std::string& family);

struct FamilyCorpus {
    std::vector<OpcodeListing> samples;     // usable, sorted by sample_id
    std::vector<std::string> unusable_ids;  // parsed to empty
};

// Loads <root>/<family>/*.opcodes. Throws DatasetError when the directory
// is missing or no sample is usable.
FamilyCorpus load_family(const std::filesystem::path& dataset_root, const std::string& family);

// Top-K opcode map for one family. Opcodes outside top_opcodes encode to
// the OTHER symbol; the model alphabet size is M = |top_opcodes| + 1.
// top_opcodes is ordered by descending training-corpus frequency, ties
// broken lexicographically, and may be shorter than the requested K when
// the corpus has fewer distinct opcodes.
struct Vocabulary {
    std::string family;
    int k_requested = 0;
    std::vector<std::string> top_opcodes;
    std::unordered_map<std::string, int> index;

    int other_symbol() const { return static_cast<int>(top_opcodes.size()); }
    int symbol_count() const { return static_cast<int>(top_opcodes.size()) + 1; }

    int symbol_of(const std::string& mnemonic) const {
        const auto it = index.find(mnemonic);
        return it == index.end() ? other_symbol() : it->second;
    }
};

// Counts over the concatenation of the given training samples (the
// harness passes training-fold malware only).
Vocabulary build_vocabulary(const std::vector<OpcodeListing>& train_samples, int k);

ObservationSequence encode(const OpcodeListing& listing, const Vocabulary& vocab);

// Percentage of mnemonics across the samples that map to a top-K symbol.
double coverage_stats(const std::vector<OpcodeListing>& samples, const Vocabulary& vocab);

nlohmann::json vocabulary_to_json(const Vocabulary& vocab);
Vocabulary vocabulary_from_json(const nlohmann::json& j);

}  // namespace hmmboost
