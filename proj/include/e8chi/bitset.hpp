#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace e8chi {

using Word = std::uint64_t;
inline constexpr int kWordBits = 64;

constexpr int words_for(int bits) { return (bits + kWordBits - 1) / kWordBits; }

// Word-span helpers used by the solvers on raw adjacency rows.
namespace bits {

inline bool test(std::span<const Word> w, int i) { return (w[i >> 6] >> (i & 63)) & 1u; }
inline void set(std::span<Word> w, int i) { w[i >> 6] |= Word{1} << (i & 63); }
inline void reset(std::span<Word> w, int i) { w[i >> 6] &= ~(Word{1} << (i & 63)); }

inline int count(std::span<const Word> w)
{
    int c = 0;
    for (Word x : w)
        c += std::popcount(x);
    return c;
}

inline bool none(std::span<const Word> w)
{
    for (Word x : w)
        if (x)
            return false;
    return true;
}

/// Index of the lowest set bit, or -1.
inline int first(std::span<const Word> w)
{
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i])
            return static_cast<int>(i * kWordBits) + std::countr_zero(w[i]);
    return -1;
}

template <typename F>
void for_each(std::span<const Word> w, F&& f)
{
    for (std::size_t i = 0; i < w.size(); ++i) {
        Word x = w[i];
        while (x) {
            f(static_cast<int>(i * kWordBits) + std::countr_zero(x));
            x &= x - 1;
        }
    }
}

} // namespace bits

/// Fixed-size dynamic bitset.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int size) : size_(size), words_(static_cast<std::size_t>(words_for(size)), 0) {}

    int size() const { return size_; }
    std::span<Word> words() { return words_; }
    std::span<const Word> words() const { return words_; }

    bool test(int i) const { return bits::test(words_, i); }
    void set(int i) { bits::set(words_, i); }
    void reset(int i) { bits::reset(words_, i); }
    int count() const { return bits::count(words_); }
    bool none() const { return bits::none(words_); }
    int first() const { return bits::first(words_); }

    void set_all()
    {
        for (auto& w : words_)
            w = ~Word{0};
        trim();
    }

    std::vector<int> to_indices() const
    {
        std::vector<int> out;
        bits::for_each(words_, [&](int i) { out.push_back(i); });
        return out;
    }

    bool operator==(const Bitset&) const = default;

private:
    void trim()
    {
        if (size_ % kWordBits && !words_.empty())
            words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
    }

    int size_ = 0;
    std::vector<Word> words_;
};

} // namespace e8chi
