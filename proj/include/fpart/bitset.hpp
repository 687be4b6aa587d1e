#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "fpart/errors.hpp"

namespace fpart {

// Dynamic bitset over a fixed universe 0..size-1. Used for vertex sets and
// adjacency rows; everything downstream leans on the word-parallel ops here.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int size) : size_(size), words_((size + 63) / 64, 0) {
        if (size < 0) throw InputError("Bitset: negative size");
    }

    static Bitset full(int size) {
        Bitset b(size);
        for (auto& w : b.words_) w = ~std::uint64_t{0};
        b.trim();
        return b;
    }

    int size() const { return size_; }

    bool test(int i) const {
        check(i);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    void set(int i) {
        check(i);
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void reset(int i) {
        check(i);
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    // First set bit, or -1.
    int first() const { return next(0); }

    // First set bit >= from, or -1.
    int next(int from) const {
        if (from >= size_) return -1;
        if (from < 0) from = 0;
        int wi = from >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) return wi * 64 + std::countr_zero(w);
            if (++wi == static_cast<int>(words_.size())) return -1;
            w = words_[wi];
        }
    }

    Bitset& operator&=(const Bitset& o) {
        match(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        match(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bitset& operator^=(const Bitset& o) {
        match(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }
    // Set difference: this \ o.
    Bitset& operator-=(const Bitset& o) {
        match(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    Bitset operator~() const {
        Bitset r(*this);
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    bool is_subset_of(const Bitset& o) const {
        match(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool intersects(const Bitset& o) const {
        match(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    bool operator==(const Bitset& o) const = default;

    // Deterministic total order (word-lexicographic); used to canonicalize
    // lists of vertex sets.
    bool operator<(const Bitset& o) const {
        if (size_ != o.size_) return size_ < o.size_;
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
        return false;
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        v.reserve(count());
        for (int i = first(); i != -1; i = next(i + 1)) v.push_back(i);
        return v;
    }

    static Bitset of(int size, const std::vector<int>& members) {
        Bitset b(size);
        for (int m : members) b.set(m);
        return b;
    }

    class const_iterator {
    public:
        const_iterator(const Bitset* bs, int pos) : bs_(bs), pos_(pos) {}
        int operator*() const { return pos_; }
        const_iterator& operator++() {
            pos_ = bs_->next(pos_ + 1);
            return *this;
        }
        bool operator!=(const const_iterator& o) const { return pos_ != o.pos_; }

    private:
        const Bitset* bs_;
        int pos_;
    };

    const_iterator begin() const { return {this, first()}; }
    const_iterator end() const { return {this, -1}; }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    void check(int i) const {
        if (i < 0 || i >= size_) throw InputError("Bitset: index out of range");
    }
    void match(const Bitset& o) const {
        if (size_ != o.size_) throw InputError("Bitset: size mismatch");
    }
    void trim() {
        if (size_ & 63) words_.back() &= (~std::uint64_t{0}) >> (64 - (size_ & 63));
    }

    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace fpart
