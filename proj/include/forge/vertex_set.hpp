#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace forge {

using Vertex = std::int32_t;

// Membership bitmap over ids 0..universe-1. Binary operators require equal
// universes and throw std::invalid_argument otherwise.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(Vertex universe);
    VertexSet(Vertex universe, std::initializer_list<Vertex> members);
    VertexSet(Vertex universe, std::span<const Vertex> members);

    static VertexSet full(Vertex universe);

    Vertex universe() const { return universe_; }
    bool contains(Vertex v) const {
        return v >= 0 && v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U);
    }
    void insert(Vertex v);
    void erase(Vertex v);
    void clear();

    Vertex count() const;
    bool empty() const;
    std::vector<Vertex> to_vector() const;

    bool is_subset_of(const VertexSet& other) const;
    bool intersects(const VertexSet& other) const;

    VertexSet& operator|=(const VertexSet& other);
    VertexSet& operator&=(const VertexSet& other);
    VertexSet& operator-=(const VertexSet& other);

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    friend bool operator==(const VertexSet& a, const VertexSet& b) = default;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                f(static_cast<Vertex>(w * 64 + std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

private:
    void require_same(const VertexSet& other) const;

    Vertex universe_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace forge
