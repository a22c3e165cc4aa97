#pragma once

/// @file nk_landscape.hpp
/// @brief Seeded NK fitness landscapes with random (non-adjacent) epistasis wiring.
///
/// Bit i contributes tables[i][pattern], where pattern packs x_i followed by
/// its K partners in wiring order, x_i being the most significant bit. The
/// objective of a genome is the mean contribution over all N bits, so it
/// always lies in [0, 1].

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sotea/genome.hpp"
#include "sotea/rng.hpp"

namespace sotea {

/// Upper bound on n * 2^(k+1) stored table entries.
inline constexpr std::uint64_t kDefaultMaxTableEntries = std::uint64_t{1} << 30;

class NkLandscape {
public:
    /// Builds an instance from explicit wiring and tables (no RNG involved).
    /// wiring[i] lists the partners of bit i; tables[i] has 2^(k+1) entries.
    NkLandscape(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>> wiring,
                std::vector<std::vector<double>> tables, std::uint64_t seed = 0)
        : n_(n), k_(k), seed_(seed) {
        check_shape(n, k, kDefaultMaxTableEntries);
        if (wiring.size() != n || tables.size() != n) {
            throw std::invalid_argument("NkLandscape: wiring and tables need one entry per bit");
        }
        wiring_.reserve(n * k);
        tables_.reserve(n * table_size());
        for (std::size_t i = 0; i < n; ++i) {
            if (wiring[i].size() != k) {
                throw std::invalid_argument("NkLandscape: bit " + std::to_string(i) +
                                            " does not have exactly k partners");
            }
            for (std::size_t a = 0; a < k; ++a) {
                const auto z = wiring[i][a];
                if (z >= n || z == i) {
                    throw std::invalid_argument("NkLandscape: bad partner index for bit " +
                                                std::to_string(i));
                }
                for (std::size_t b = 0; b < a; ++b) {
                    if (wiring[i][b] == z) {
                        throw std::invalid_argument("NkLandscape: duplicate partner for bit " +
                                                    std::to_string(i));
                    }
                }
                wiring_.push_back(static_cast<std::uint32_t>(z));
            }
            if (tables[i].size() != table_size()) {
                throw std::invalid_argument("NkLandscape: table " + std::to_string(i) +
                                            " must have 2^(k+1) entries");
            }
            for (double v : tables[i]) {
                if (!(v >= 0.0 && v <= 1.0)) {
                    throw std::invalid_argument("NkLandscape: table entries must lie in [0,1]");
                }
                tables_.push_back(v);
            }
        }
    }

    /// Draws a random instance. A single stream seeded from `seed` is consumed
    /// in a fixed order: wiring for bits 0..n-1, then tables for bits 0..n-1.
    static NkLandscape generate(std::size_t n, std::size_t k, std::uint64_t seed,
                                std::uint64_t max_table_entries = kDefaultMaxTableEntries) {
        check_shape(n, k, max_table_entries);
        Rng rng{seed};
        std::vector<std::vector<std::size_t>> wiring(n);
        std::vector<std::size_t> candidates;
        candidates.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            candidates.clear();
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    candidates.push_back(j);
                }
            }
            // Partial Fisher-Yates: the first k slots become the sampled partners.
            for (std::size_t a = 0; a < k; ++a) {
                const auto pick = a + uniform_index(rng, candidates.size() - a);
                std::swap(candidates[a], candidates[pick]);
            }
            wiring[i].assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k));
        }
        const std::size_t entries = std::size_t{1} << (k + 1);
        std::vector<std::vector<double>> tables(n, std::vector<double>(entries));
        for (auto& table : tables) {
            for (auto& v : table) {
                v = uniform01(rng);
            }
        }
        return NkLandscape(n, k, std::move(wiring), std::move(tables), seed);
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::size_t table_size() const noexcept { return std::size_t{1} << (k_ + 1); }

    [[nodiscard]] std::span<const std::uint32_t> wiring(std::size_t i) const {
        check_bit(i);
        return {wiring_.data() + i * k_, k_};
    }

    [[nodiscard]] std::span<const double> table(std::size_t i) const {
        check_bit(i);
        return {tables_.data() + i * table_size(), table_size()};
    }

    /// Table index for bit i: x_i, then partners in wiring order, MSB first.
    [[nodiscard]] std::size_t pattern(std::size_t i, const Genome& genome) const {
        check_bit(i);
        check_length(genome);
        return pattern_unchecked(i, genome);
    }

    [[nodiscard]] double fitness_contribution(std::size_t i, const Genome& genome) const {
        return tables_[i * table_size() + pattern(i, genome)];
    }

    [[nodiscard]] double evaluate(const Genome& genome) const {
        check_length(genome);
        const std::size_t stride = table_size();
        double sum = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            sum += tables_[i * stride + pattern_unchecked(i, genome)];
        }
        return sum / static_cast<double>(n_);
    }

    friend bool operator==(const NkLandscape&, const NkLandscape&) = default;

private:
    static void check_shape(std::size_t n, std::size_t k, std::uint64_t max_table_entries) {
        if (n == 0) {
            throw std::invalid_argument("NkLandscape: n must be at least 1");
        }
        if (k > n - 1) {
            throw std::invalid_argument("NkLandscape: k = " + std::to_string(k) +
                                        " exceeds n - 1 = " + std::to_string(n - 1));
        }
        if (k + 1 >= 63 || static_cast<std::uint64_t>(n) > (max_table_entries >> (k + 1))) {
            throw std::length_error("NkLandscape: n * 2^(k+1) = " + std::to_string(n) +
                                    " * 2^" + std::to_string(k + 1) +
                                    " table entries exceeds the limit of " +
                                    std::to_string(max_table_entries));
        }
    }

    void check_bit(std::size_t i) const {
        if (i >= n_) {
            throw std::out_of_range("NkLandscape: bit index " + std::to_string(i) +
                                    " out of range");
        }
    }

    void check_length(const Genome& genome) const {
        if (genome.size() != n_) {
            throw std::invalid_argument("NkLandscape: genome length " +
                                        std::to_string(genome.size()) + " != n = " +
                                        std::to_string(n_));
        }
    }

    [[nodiscard]] std::size_t pattern_unchecked(std::size_t i, const Genome& genome) const {
        std::size_t idx = genome[i] ? 1U : 0U;
        const auto* z = wiring_.data() + i * k_;
        for (std::size_t a = 0; a < k_; ++a) {
            idx = (idx << 1) | (genome[z[a]] ? 1U : 0U);
        }
        return idx;
    }

    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::uint32_t> wiring_; // n * k, row-major
    std::vector<double> tables_;        // n * 2^(k+1), row-major
};

} // namespace sotea
