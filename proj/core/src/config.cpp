#include "cayley_spectra/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cayspec {

using nlohmann::json;

std::string to_string(Convention c) {
    return c == Convention::adjacency ? "adjacency" : "laplacian";
}

Convention convention_from_string(std::string_view text) {
    if (text == "adjacency") return Convention::adjacency;
    if (text == "laplacian") return Convention::laplacian;
    throw ConfigError("unknown convention '" + std::string(text) +
                      "' (expected adjacency or laplacian)");
}

RunConfig default_config() {
    RunConfig cfg;
    if (const char* env = std::getenv("CAYLEY_SPECTRA_MAX_BALL")) {
        std::size_t value = 0;
        const char* end = env + std::string_view(env).size();
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec != std::errc() || ptr != end || value == 0)
            throw ConfigError("CAYLEY_SPECTRA_MAX_BALL: bad value '" + std::string(env) + "'");
        cfg.ball_guard = value;
    }
    return cfg;
}

namespace {

std::complex<double> complex_from_json(const json& j, const std::string& key) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError(key + ": expected a number or [re, im]");
}

std::vector<double> potential_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>()};
    if (j.is_array()) {
        std::vector<double> out;
        for (const auto& entry : j) {
            if (!entry.is_number()) throw ConfigError("potential: expected numbers");
            out.push_back(entry.get<double>());
        }
        if (out.empty()) throw ConfigError("potential: empty array");
        return out;
    }
    throw ConfigError("potential: expected a number or array of numbers");
}

InvolutiveHom hom_from_json(const json& j, int k) {
    if (!j.is_object() || !j.contains("m") || !j.contains("images"))
        throw ConfigError("hom: expected {\"m\": ..., \"images\": [...]} with cycle strings");
    const int m = j.at("m").get<int>();
    const auto& images_json = j.at("images");
    if (!images_json.is_array())
        throw ConfigError("hom: images must be an array of cycle strings");
    std::vector<Perm> images;
    for (const auto& entry : images_json) {
        if (!entry.is_string()) throw ConfigError("hom: images must be cycle strings");
        try {
            images.push_back(parse_perm(entry.get<std::string>(), m));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("hom: ") + e.what());
        }
    }
    try {
        return make_hom(GroupParams{k}, m, std::move(images));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("hom: ") + e.what());
    }
}

} // namespace

RunConfig parse_config_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

    RunConfig cfg = default_config();
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "k") cfg.k = value.get<int>();
            else if (key == "subgroup") cfg.subgroup = value.get<std::string>();
            else if (key == "hom") ; // parsed after k is known
            else if (key == "epsilon") cfg.epsilon = value.get<double>();
            else if (key == "potential") cfg.potential = potential_from_json(value);
            else if (key == "energy") cfg.energy = value.get<double>();
            else if (key == "convention")
                cfg.convention = convention_from_string(value.get<std::string>());
            else if (key == "radius") cfg.radius = value.get<int>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "trials") cfg.trials = value.get<int>();
            else if (key == "out") cfg.out = value.get<std::string>();
            else if (key == "max_ball") cfg.ball_guard = value.get<std::size_t>();
            else if (key == "image_cap") cfg.image_cap = value.get<std::size_t>();
            else if (key == "c1") cfg.c1 = complex_from_json(value, "c1");
            else if (key == "c2") cfg.c2 = complex_from_json(value, "c2");
            else if (key == "phi0") cfg.phi0 = complex_from_json(value, "phi0");
            else if (key == "phi1") cfg.phi1 = complex_from_json(value, "phi1");
            else throw ConfigError("config: unknown key '" + key + "'");
        } catch (const json::exception& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }
    if (doc.contains("hom")) {
        cfg.inline_hom = hom_from_json(doc.at("hom"), cfg.k);
        if (!doc.contains("subgroup")) cfg.subgroup = "inline";
    }

    // The environment variable wins over the config file.
    if (std::getenv("CAYLEY_SPECTRA_MAX_BALL")) cfg.ball_guard = default_config().ball_guard;
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_json(buffer.str());
}

SubgroupSpec resolve_subgroup(const RunConfig& cfg) {
    if (cfg.subgroup == "inline") {
        if (!cfg.inline_hom)
            throw ConfigError("subgroup 'inline' requires a hom table in the config file");
        if (cfg.inline_hom->params.k != cfg.k)
            throw ConfigError("inline hom has k = " + std::to_string(cfg.inline_hom->params.k) +
                              " but the run uses k = " + std::to_string(cfg.k));
        return SubgroupSpec{"inline", *cfg.inline_hom};
    }
    return parse_subgroup(cfg.subgroup, GroupParams{cfg.k});
}

} // namespace cayspec
