#include "forge/vertex_set.hpp"

#include <stdexcept>
#include <string>

namespace forge {

VertexSet::VertexSet(Vertex universe) : universe_(universe) {
    if (universe < 0) throw std::invalid_argument("negative universe");
    words_.assign((static_cast<std::size_t>(universe) + 63) / 64, 0);
}

VertexSet::VertexSet(Vertex universe, std::initializer_list<Vertex> members)
    : VertexSet(universe, std::span<const Vertex>(members.begin(), members.size())) {}

VertexSet::VertexSet(Vertex universe, std::span<const Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
}

VertexSet VertexSet::full(Vertex universe) {
    VertexSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    if (universe % 64 != 0 && !s.words_.empty()) {
        s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
    }
    return s;
}

void VertexSet::insert(Vertex v) {
    if (v < 0 || v >= universe_) {
        throw std::out_of_range("vertex " + std::to_string(v) + " outside universe " +
                                std::to_string(universe_));
    }
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
}

void VertexSet::erase(Vertex v) {
    if (v < 0 || v >= universe_) return;
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
}

void VertexSet::clear() {
    for (auto& w : words_) w = 0;
}

Vertex VertexSet::count() const {
    Vertex c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

bool VertexSet::empty() const {
    for (auto w : words_) {
        if (w != 0) return false;
    }
    return true;
}

std::vector<Vertex> VertexSet::to_vector() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
}

void VertexSet::require_same(const VertexSet& other) const {
    if (universe_ != other.universe_) {
        throw std::invalid_argument("vertex sets over different universes (" +
                                    std::to_string(universe_) + " vs " +
                                    std::to_string(other.universe_) + ")");
    }
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    require_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
    require_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & other.words_[i]) != 0) return true;
    }
    return false;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
    require_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
    require_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
    require_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
}

}  // namespace forge
