#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sotea {

/// Fixed-length bit string packed into 64-bit words.
class Genome {
public:
    Genome() = default;
    explicit Genome(std::size_t length) : words_((length + 63) / 64, 0), length_(length) {}

    /// Parses a string of '0'/'1' characters; position 0 is the first character.
    static Genome from_string(std::string_view bits) {
        Genome g(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') {
                g.set(i, true);
            } else if (bits[i] != '0') {
                throw std::invalid_argument("Genome::from_string: expected only '0' and '1'");
            }
        }
        return g;
    }

    [[nodiscard]] std::size_t size() const noexcept { return length_; }

    [[nodiscard]] bool operator[](std::size_t i) const noexcept {
        return (words_[i >> 6] >> (i & 63)) & 1U;
    }

    void set(std::size_t i, bool value) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }

    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    [[nodiscard]] std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) {
            c += static_cast<std::size_t>(std::popcount(w));
        }
        return c;
    }

    [[nodiscard]] std::string to_string() const {
        std::string s(length_, '0');
        for (std::size_t i = 0; i < length_; ++i) {
            if ((*this)[i]) {
                s[i] = '1';
            }
        }
        return s;
    }

    [[nodiscard]] const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    friend bool operator==(const Genome&, const Genome&) = default;

private:
    // Bits beyond length_ in the last word are always zero.
    std::vector<std::uint64_t> words_;
    std::size_t length_ = 0;
};

} // namespace sotea
