#pragma once

/// @file nk_landscape_io.hpp
/// @brief Versioned JSON form of an NK instance (n, k, seed, wiring, tables).

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sotea/nk_landscape.hpp"

namespace sotea {

inline constexpr int kLandscapeFormatVersion = 1;

inline nlohmann::json landscape_to_json(const NkLandscape& landscape) {
    nlohmann::json wiring = nlohmann::json::array();
    nlohmann::json tables = nlohmann::json::array();
    for (std::size_t i = 0; i < landscape.n(); ++i) {
        const auto w = landscape.wiring(i);
        wiring.push_back(std::vector<std::uint32_t>(w.begin(), w.end()));
        const auto t = landscape.table(i);
        tables.push_back(std::vector<double>(t.begin(), t.end()));
    }
    return {
        {"format", "nk-landscape"},
        {"version", kLandscapeFormatVersion},
        {"n", landscape.n()},
        {"k", landscape.k()},
        {"seed", landscape.seed()},
        {"wiring", std::move(wiring)},
        {"tables", std::move(tables)},
    };
}

inline NkLandscape landscape_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "nk-landscape") {
        throw std::invalid_argument("landscape_from_json: not an nk-landscape document");
    }
    if (j.at("version").get<int>() != kLandscapeFormatVersion) {
        throw std::invalid_argument("landscape_from_json: unsupported version");
    }
    return NkLandscape(j.at("n").get<std::size_t>(), j.at("k").get<std::size_t>(),
                       j.at("wiring").get<std::vector<std::vector<std::size_t>>>(),
                       j.at("tables").get<std::vector<std::vector<double>>>(),
                       j.at("seed").get<std::uint64_t>());
}

inline void save_landscape(const NkLandscape& landscape, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << landscape_to_json(landscape).dump() << '\n';
}

inline NkLandscape load_landscape(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return landscape_from_json(nlohmann::json::parse(in));
}

} // namespace sotea
