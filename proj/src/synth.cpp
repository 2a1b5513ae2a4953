#include "hmmboost/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hmmboost/rng.hpp"
#include "hmmboost/serialize.hpp"

namespace hmmboost {

std::vector<std::string> synthetic_alphabet(int size) {
    if (size < 1) throw std::invalid_argument("alphabet size must be positive");
    std::vector<std::string> tokens;
    tokens.reserve(size);
    char buf[16];
    for (int i = 0; i < size; ++i) {
        std::snprintf(buf, sizeof(buf), "op%02d", i);
        tokens.emplace_back(buf);
    }
    return tokens;
}

std::vector<std::string> simulate_sample(const SourceSpec& spec, int sample_index) {
    spec.generator.validate();
    if (spec.alphabet.size() != static_cast<std::size_t>(spec.generator.num_symbols)) {
        throw std::invalid_argument("alphabet size does not match generator symbols");
    }
    if (spec.min_length < 1 || spec.max_length < spec.min_length) {
        throw std::invalid_argument("bad sample length range");
    }

    Rng rng(mix_seed(mix_seed(spec.seed, hash64(spec.family)), sample_index));
    const auto n = static_cast<std::size_t>(spec.generator.num_states);
    const auto m = static_cast<std::size_t>(spec.generator.num_symbols);
    const std::size_t len =
        spec.min_length + rng.below(spec.max_length - spec.min_length + 1);

    std::vector<std::string> opcodes;
    opcodes.reserve(len);
    std::size_t state = rng.pick_weighted(spec.generator.initial.data(), n);
    for (std::size_t t = 0; t < len; ++t) {
        const std::size_t symbol = rng.pick_weighted(spec.generator.emission.row(state), m);
        opcodes.push_back(spec.alphabet[symbol]);
        state = rng.pick_weighted(spec.generator.transition.row(state), n);
    }
    return opcodes;
}

void generate_corpus(const std::vector<SourceSpec>& specs, const std::filesystem::path& root) {
    if (specs.empty()) throw std::invalid_argument("no source specs");
    for (const auto& spec : specs) {
        if (spec.sample_count < 1) throw std::invalid_argument("sample_count must be positive");
        spec.generator.validate();

        const std::filesystem::path dir = root / spec.family;
        std::filesystem::create_directories(dir);
        char name[32];
        for (int i = 0; i < spec.sample_count; ++i) {
            const auto opcodes = simulate_sample(spec, i);
            std::snprintf(name, sizeof(name), "s%04d.opcodes", i);
            std::ofstream out(dir / name);
            if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
            for (const auto& opcode : opcodes) out << opcode << '\n';
        }
    }

    nlohmann::json sources = nlohmann::json::array();
    for (const auto& spec : specs) sources.push_back(source_spec_to_json(spec));
    std::ofstream out(root / "sources.json");
    out << sources.dump(2) << '\n';
}

namespace {

// Zipf-shaped weights over `support` tokens, rotated so each state
// emphasizes a different head.
std::vector<double> zipf_row(int alphabet_size, int support_begin, int support_size,
                             int rotation, double exponent) {
    std::vector<double> row(alphabet_size, 0.0);
    double sum = 0.0;
    for (int r = 0; r < support_size; ++r) {
        const int token = support_begin + (r + rotation) % support_size;
        row[token] = 1.0 / std::pow(r + 1.0, exponent);
        sum += row[token];
    }
    for (double& w : row) w /= sum;
    return row;
}

HmmParams make_generator(int states, int alphabet_size, int support_begin, int support_size,
                         double exponent) {
    HmmParams g;
    g.num_states = states;
    g.num_symbols = alphabet_size;
    g.initial.assign(states, 1.0 / states);
    // sticky, doubly stochastic: the stationary state distribution is
    // uniform, matching pi
    g.transition = Matrix(states, states, states == 1 ? 0.0 : 0.2 / (states - 1));
    for (int i = 0; i < states; ++i) g.transition(i, i) = states == 1 ? 1.0 : 0.8;
    g.emission = Matrix(states, alphabet_size);
    for (int i = 0; i < states; ++i) {
        const auto row = zipf_row(alphabet_size, support_begin, support_size, 7 * i, exponent);
        for (int k = 0; k < alphabet_size; ++k) g.emission(i, k) = row[k];
    }
    return g;
}

}  // namespace

std::pair<SourceSpec, SourceSpec> separability_dial(double delta, const DialOptions& options) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0, 1]");
    if (options.alphabet_size < 2) throw std::invalid_argument("alphabet too small to split");

    // The benign source is near-uniform over its support while the
    // disjoint target is steeply Zipf, so the malware mixture is more
    // concentrated than benign and its own model genuinely prefers it.
    // Without the entropy gap the per-opcode likelihood ordering flips
    // below delta 0.5 and the dial stops being monotone in practice.
    const int half = options.alphabet_size / 2;
    const HmmParams benign_gen =
        make_generator(options.generator_states, options.alphabet_size, 0, half, 0.2);
    const HmmParams disjoint_gen =
        make_generator(options.generator_states, options.alphabet_size, half,
                       options.alphabet_size - half, 1.7);

    // convex combination of stochastic rows is stochastic; no
    // renormalization, so delta = 0 reproduces the benign rows bit for bit
    HmmParams malware_gen = benign_gen;
    for (int i = 0; i < malware_gen.num_states; ++i) {
        for (int k = 0; k < malware_gen.num_symbols; ++k) {
            malware_gen.emission(i, k) =
                (1.0 - delta) * benign_gen.emission(i, k) + delta * disjoint_gen.emission(i, k);
        }
    }

    const auto alphabet = synthetic_alphabet(options.alphabet_size);
    SourceSpec malware{malware_gen,        alphabet,           options.malware_samples,
                       options.min_length, options.max_length, "malware",
                       options.seed};
    SourceSpec benign{benign_gen,         alphabet,           options.benign_samples,
                      options.min_length, options.max_length, "benign",
                      options.seed};
    return {malware, benign};
}

nlohmann::json source_spec_to_json(const SourceSpec& spec) {
    return nlohmann::json{{"family", spec.family},
                          {"seed", spec.seed},
                          {"sample_count", spec.sample_count},
                          {"min_length", spec.min_length},
                          {"max_length", spec.max_length},
                          {"alphabet", spec.alphabet},
                          {"generator", params_to_json(spec.generator)}};
}

SourceSpec source_spec_from_json(const nlohmann::json& j) {
    SourceSpec spec;
    spec.family = j.at("family").get<std::string>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.sample_count = j.at("sample_count").get<int>();
    spec.min_length = j.at("min_length").get<int>();
    spec.max_length = j.at("max_length").get<int>();
    spec.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    spec.generator = params_from_json(j.at("generator"));
    return spec;
}

}  // namespace hmmboost
