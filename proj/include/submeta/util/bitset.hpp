#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace submeta {

/// Fixed-universe dynamic bitset used for node/edge sets in cascade
/// simulation. Word-level ops keep greedy marginal scans cheap.
class BitSet {
  public:
    BitSet() = default;
    explicit BitSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    void set(std::size_t i) { words_[i >> 6] |= (1ULL << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    BitSet& operator|=(const BitSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    BitSet& operator&=(const BitSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    /// |this & ~other|
    std::size_t count_andnot(const BitSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & ~o.words_[i]);
        return c;
    }

    bool intersects(const BitSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    bool operator==(const BitSet& o) const = default;

    std::vector<std::uint32_t> to_indices() const {
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < size_; ++i)
            if (test(i)) out.push_back(static_cast<std::uint32_t>(i));
        return out;
    }

  private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace submeta
