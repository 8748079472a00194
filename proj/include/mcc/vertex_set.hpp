#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace mcc {

// Fixed-universe bitset over vertex ids 0..n-1. Binary operations require
// equal universe sizes. Set intersections dominate the runtime of the
// covering pipeline, hence the word-level representation.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int n) : n_(n), w_(words_for(n), 0) {}

    static VertexSet full(int n) {
        VertexSet s(n);
        for (auto& w : s.w_) w = ~uint64_t{0};
        s.trim();
        return s;
    }

    static VertexSet of(int n, std::initializer_list<int> vs) {
        VertexSet s(n);
        for (int v : vs) s.set(v);
        return s;
    }

    static VertexSet of(int n, const std::vector<int>& vs) {
        VertexSet s(n);
        for (int v : vs) s.set(v);
        return s;
    }

    int universe() const { return n_; }

    bool test(int v) const {
        return v >= 0 && v < n_ && (w_[v >> 6] >> (v & 63)) & 1;
    }

    void set(int v) {
        check(v);
        w_[v >> 6] |= uint64_t{1} << (v & 63);
    }

    void reset(int v) {
        check(v);
        w_[v >> 6] &= ~(uint64_t{1} << (v & 63));
    }

    void clear() {
        for (auto& w : w_) w = 0;
    }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    bool empty() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    // Lowest member, or -1.
    int first() const { return next(-1); }

    // Lowest member strictly greater than v, or -1.
    int next(int v) const {
        int i = v < 0 ? 0 : (v + 1);
        if (i >= n_) return -1;
        size_t wi = size_t(i) >> 6;
        uint64_t w = w_[wi] >> (i & 63);
        if (w) return i + std::countr_zero(w);
        for (++wi; wi < w_.size(); ++wi)
            if (w_[wi]) return int(wi << 6) + std::countr_zero(w_[wi]);
        return -1;
    }

    bool contains(const VertexSet& o) const {
        match(o);
        for (size_t i = 0; i < w_.size(); ++i)
            if (o.w_[i] & ~w_[i]) return false;
        return true;
    }

    bool intersects(const VertexSet& o) const {
        match(o);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    VertexSet& operator&=(const VertexSet& o) {
        match(o);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    VertexSet& operator|=(const VertexSet& o) {
        match(o);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

    // Set difference.
    VertexSet& operator-=(const VertexSet& o) {
        match(o);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    VertexSet complement() const {
        VertexSet s(n_);
        for (size_t i = 0; i < w_.size(); ++i) s.w_[i] = ~w_[i];
        s.trim();
        return s;
    }

    bool operator==(const VertexSet&) const = default;

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for (int v = first(); v >= 0; v = next(v)) out.push_back(v);
        return out;
    }

    friend int intersection_size(const VertexSet& a, const VertexSet& b) {
        a.match(b);
        int c = 0;
        for (size_t i = 0; i < a.w_.size(); ++i)
            c += std::popcount(a.w_[i] & b.w_[i]);
        return c;
    }

private:
    static size_t words_for(int n) {
        if (n < 0) throw std::invalid_argument("VertexSet: negative universe");
        return (size_t(n) + 63) / 64;
    }

    void check(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("VertexSet: vertex out of range");
    }

    void match(const VertexSet& o) const {
        if (n_ != o.n_) throw std::invalid_argument("VertexSet: universe mismatch");
    }

    void trim() {
        if (n_ & 63) w_.back() &= (uint64_t{1} << (n_ & 63)) - 1;
    }

    int n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace mcc
