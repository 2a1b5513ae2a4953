#include "hmmboost/features.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hmmboost/errors.hpp"

namespace hmmboost {

std::vector<std::string> parse_listing(std::istream& in) {
    std::vector<std::string> mnemonics;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        if (line[begin] == ';') continue;
        std::size_t end = line.find_first_of(" \t\r", begin);
        if (end == std::string::npos) end = line.size();
        std::string token = line.substr(begin, end - begin);
        for (char& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        mnemonics.push_back(std::move(token));
    }
    return mnemonics;
}

OpcodeListing load_listing(const std::filesystem::path& file, const std::string& family) {
    std::ifstream in(file);
    if (!in) throw DatasetError("cannot open sample file " + file.string());
    OpcodeListing listing;
    listing.sample_id = file.stem().string();
    listing.family = family;
    listing.mnemonics = parse_listing(in);
    if (listing.mnemonics.empty()) {
        throw DatasetError("sample " + file.string() + " contains no opcodes");
    }
    return listing;
}

FamilyCorpus load_family(const std::filesystem::path& dataset_root, const std::string& family) {
    const std::filesystem::path dir = dataset_root / family;
    if (!std::filesystem::is_directory(dir)) {
        throw DatasetError("dataset has no directory for family '" + family + "' under " +
                           dataset_root.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".opcodes") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    FamilyCorpus corpus;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw DatasetError("cannot open sample file " + file.string());
        OpcodeListing listing;
        listing.sample_id = file.stem().string();
        listing.family = family;
        listing.mnemonics = parse_listing(in);
        if (listing.mnemonics.empty()) {
            corpus.unusable_ids.push_back(listing.sample_id);
        } else {
            corpus.samples.push_back(std::move(listing));
        }
    }
    if (corpus.samples.empty()) {
        throw DatasetError("family '" + family + "' has no usable samples");
    }
    return corpus;
}

Vocabulary build_vocabulary(const std::vector<OpcodeListing>& train_samples, int k) {
    if (k < 1) throw std::invalid_argument("vocabulary size must be positive");
    if (train_samples.empty()) throw std::invalid_argument("no training samples");

    // std::map: counting and lexicographic tie-break in one pass
    std::map<std::string, long> counts;
    for (const auto& sample : train_samples) {
        for (const auto& mnemonic : sample.mnemonics) ++counts[mnemonic];
    }

    std::vector<std::pair<std::string, long>> ranked(counts.begin(), counts.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    Vocabulary vocab;
    vocab.family = train_samples.front().family;
    vocab.k_requested = k;
    const std::size_t take = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < take; ++i) {
        vocab.index.emplace(ranked[i].first, static_cast<int>(i));
        vocab.top_opcodes.push_back(ranked[i].first);
    }
    return vocab;
}

ObservationSequence encode(const OpcodeListing& listing, const Vocabulary& vocab) {
    ObservationSequence symbols;
    symbols.reserve(listing.mnemonics.size());
    for (const auto& mnemonic : listing.mnemonics) {
        symbols.push_back(vocab.symbol_of(mnemonic));
    }
    return symbols;
}

double coverage_stats(const std::vector<OpcodeListing>& samples, const Vocabulary& vocab) {
    long total = 0, covered = 0;
    for (const auto& sample : samples) {
        for (const auto& mnemonic : sample.mnemonics) {
            ++total;
            if (vocab.index.contains(mnemonic)) ++covered;
        }
    }
    if (total == 0) throw std::invalid_argument("no mnemonics to measure coverage on");
    return 100.0 * static_cast<double>(covered) / static_cast<double>(total);
}

nlohmann::json vocabulary_to_json(const Vocabulary& vocab) {
    return nlohmann::json{{"family", vocab.family},
                          {"k", vocab.k_requested},
                          {"top_opcodes", vocab.top_opcodes}};
}

Vocabulary vocabulary_from_json(const nlohmann::json& j) {
    Vocabulary vocab;
    vocab.family = j.at("family").get<std::string>();
    vocab.k_requested = j.at("k").get<int>();
    vocab.top_opcodes = j.at("top_opcodes").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < vocab.top_opcodes.size(); ++i) {
        vocab.index.emplace(vocab.top_opcodes[i], static_cast<int>(i));
    }
    return vocab;
}

}  // namespace hmmboost
