#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hmmboost/hmm.hpp"

namespace hmmboost {

// A planted Markov source for one synthetic family. Samples are emitted
// by simulating the generator HMM; lengths are uniform in
// [min_length, max_length]. Sample i uses seed
// mix_seed(mix_seed(seed, hash64(family)), i), so corpora are
// reproducible and per-sample generation parallelizes.
struct SourceSpec {
    HmmParams generator;
    std::vector<std::string> alphabet;  // token per generator symbol
    int sample_count = 0;
    int min_length = 0;
    int max_length = 0;
    std::string family;
    std::uint64_t seed = 0;
};

// The fixed synthetic token set: "op00", "op01", ...
std::vector<std::string> synthetic_alphabet(int size);

std::vector<std::string> simulate_sample(const SourceSpec& spec, int sample_index);

// Writes <root>/<family>/s<index>.opcodes for every spec, plus
// <root>/sources.json describing the generators.
void generate_corpus(const std::vector<SourceSpec>& specs, const std::filesystem::path& root);

struct DialOptions {
    int alphabet_size = 40;   // split evenly between the two supports
    int generator_states = 3; // more states than the default learner
    int malware_samples = 60;
    int benign_samples = 107;
    int min_length = 150;
    int max_length = 300;
    std::uint64_t seed = 0;
};

// Paired malware/benign sources whose emission rows interpolate linearly
// between identical (delta = 0, AUC ~ 0.5) and disjoint-support
// (delta = 1, trivially separable). Rows are Zipf-shaped so a top-K
// vocabulary with an OTHER bucket is exercised realistically.
std::pair<SourceSpec, SourceSpec> separability_dial(double delta,
                                                    const DialOptions& options = {});

nlohmann::json source_spec_to_json(const SourceSpec& spec);
SourceSpec source_spec_from_json(const nlohmann::json& j);

}  // namespace hmmboost
