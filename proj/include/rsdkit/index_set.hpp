#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsdkit/errors.hpp"

namespace rsdkit {

// Set over a fixed universe {0..n-1}, packed 64 indices per word. Also the
// canonical memoization key for (surviving alternatives, remaining agents)
// states: equal sets hash and compare equal regardless of how they were built.
class IndexSet {
public:
    IndexSet() = default;

    explicit IndexSet(int universe_size) : n_(universe_size), words_(word_count(universe_size), 0) {}

    static IndexSet full(int universe_size) {
        IndexSet s(universe_size);
        for (int i = 0; i < universe_size; ++i) s.set(i);
        return s;
    }

    int universe_size() const { return n_; }

    bool test(int i) const { return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u; }

    void set(int i) { words_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }

    void reset(int i) { words_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    int count() const {
        int c = 0;
        for (std::uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }

    bool empty() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

    bool is_singleton() const { return count() == 1; }

    // Smallest member, or -1 when empty.
    int first() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return static_cast<int>(k * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[k])));
        return -1;
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                out.push_back(static_cast<int>(k * 64 + static_cast<std::size_t>(__builtin_ctzll(w))));
                w &= w - 1;
            }
        }
        return out;
    }

    IndexSet intersect(const IndexSet& o) const {
        IndexSet r(n_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] & o.words_[k];
        return r;
    }

    IndexSet unite(const IndexSet& o) const {
        IndexSet r(n_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] | o.words_[k];
        return r;
    }

    IndexSet without(int i) const {
        IndexSet r = *this;
        r.reset(i);
        return r;
    }

    bool is_subset_of(const IndexSet& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

    bool operator==(const IndexSet& o) const = default;

    std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(n_);
        for (std::uint64_t w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h);
    }

private:
    static std::size_t word_count(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct IndexSetHash {
    std::size_t operator()(const IndexSet& s) const { return s.hash(); }
};

}  // namespace rsdkit
