#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace ccsim {

// Fixed-size packed bit array. Bit indices are 0-based.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(int64_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    int64_t size() const { return nbits_; }

    bool test(int64_t i) const {
        assert(i >= 0 && i < nbits_);
        return (words_[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1u;
    }
    void set(int64_t i) {
        assert(i >= 0 && i < nbits_);
        words_[static_cast<size_t>(i >> 6)] |= uint64_t{1} << (i & 63);
    }
    void reset(int64_t i) {
        assert(i >= 0 && i < nbits_);
        words_[static_cast<size_t>(i >> 6)] &= ~(uint64_t{1} << (i & 63));
    }
    void set(int64_t i, bool v) {
        if (v)
            set(i);
        else
            reset(i);
    }
    void flip(int64_t i) {
        assert(i >= 0 && i < nbits_);
        words_[static_cast<size_t>(i >> 6)] ^= uint64_t{1} << (i & 63);
    }

    int64_t count() const {
        int64_t c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (uint64_t w : words_)
            if (w) return true;
        return false;
    }

    BitVector slice(int64_t begin, int64_t len) const {
        assert(begin >= 0 && len >= 0 && begin + len <= nbits_);
        BitVector out(len);
        for (int64_t k = 0; k < len; ++k)
            if (test(begin + k)) out.set(k);
        return out;
    }

    // Sorted positions of set bits. Callers keep sizes below 2^32 bits.
    std::vector<uint32_t> set_indices() const {
        std::vector<uint32_t> out;
        out.reserve(static_cast<size_t>(count()));
        for (size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w) {
                int b = std::countr_zero(w);
                out.push_back(static_cast<uint32_t>(wi * 64 + b));
                w &= w - 1;
            }
        }
        return out;
    }

    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t>& words() { return words_; }

    // Clears bits past nbits_ in the last word.
    void trim_tail() {
        int tail = static_cast<int>(nbits_ & 63);
        if (tail != 0 && !words_.empty()) words_.back() &= (uint64_t{1} << tail) - 1;
    }

    bool operator==(const BitVector&) const = default;

private:
    int64_t nbits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace ccsim
