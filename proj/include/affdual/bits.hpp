#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace affdual {

// Fixed-size dynamic bitset used for down-sets and up-sets.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bits& operator&=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    bool subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    std::vector<int> members() const {
        std::vector<int> out;
        for (std::size_t w = 0; w < words_.size(); ++w)
            for (auto x = words_[w]; x; x &= x - 1)
                out.push_back(static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(x))));
        return out;
    }

    friend bool operator==(const Bits&, const Bits&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace affdual
