#ifndef TILEREPAIR_MESH_HPP
#define TILEREPAIR_MESH_HPP

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tilerepair/geom.hpp"

namespace tilerepair {

using VId = int;

// Registry of snapped vertices.  Points within `tol` of an existing vertex
// are merged onto it; all downstream topology is expressed in vertex ids, so
// coincidence checks become id comparisons.
class VertexPool {
public:
    explicit VertexPool(double tol = 0.0) : tol_(tol), cell_(tol > 0 ? 2.0 * tol : 1.0) {}

    VId add(Point p);
    VId find(Point p) const;  // -1 if no vertex within tol

    const Point& operator[](VId v) const { return pts_[static_cast<std::size_t>(v)]; }
    std::size_t size() const { return pts_.size(); }
    double tol() const { return tol_; }

private:
    std::int64_t key(double x, double y) const;

    double tol_;
    double cell_;
    std::vector<Point> pts_;
    std::unordered_map<std::int64_t, std::vector<VId>> grid_;
};

// A closed walk is a cyclic vertex sequence (no repeated closing vertex);
// edge i runs from walk[i] to walk[i+1 mod n].
double loop_area(const VertexPool& pool, const std::vector<VId>& loop);
double loop_length(const VertexPool& pool, const std::vector<VId>& loop);
Ring loop_ring(const VertexPool& pool, const std::vector<VId>& loop);

// A closed walk with one tag per edge.
template <class Tag>
struct TaggedWalk {
    std::vector<VId> verts;
    std::vector<Tag> tags;  // tags[i] tags edge verts[i] -> verts[i+1]
};

// Splits a possibly non-simple closed walk into simple loops: immediate
// back-tracks (a,b,a) cancel, then the walk is cut at repeated vertices.
// Loops keep their traversal orientation; degenerate (<3 vertices or zero
// area) loops are dropped.
std::vector<std::vector<VId>> split_walk(const VertexPool& pool, std::vector<VId> walk);

template <class Tag>
std::vector<TaggedWalk<Tag>> split_walk_tagged(const VertexPool& pool, TaggedWalk<Tag> walk);

// --- implementation of the tagged splitter ---

namespace detail {

// Cancels adjacent reverse edge pairs (…, a->b, b->a, …) in place, treating
// the walk as cyclic.  Returns false if everything cancelled.
template <class Tag>
bool cancel_spurs(std::vector<VId>& v, std::vector<Tag>& t) {
    struct E { VId from, to; Tag tag; };
    std::size_t n = v.size();
    std::vector<E> edges(n);
    for (std::size_t i = 0; i < n; ++i) edges[i] = {v[i], v[(i + 1) % n], t[i]};
    bool changed = true;
    while (changed && edges.size() >= 2) {
        changed = false;
        std::size_t m = edges.size();
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t j = (i + 1) % m;
            if (edges[i].from == edges[j].to && edges[i].to == edges[j].from) {
                if (i < j) { edges.erase(edges.begin() + j); edges.erase(edges.begin() + i); }
                else       { edges.erase(edges.begin() + i); edges.erase(edges.begin() + j); }
                changed = true;
                break;
            }
        }
    }
    v.clear();
    t.clear();
    if (edges.size() < 3) return false;
    for (const E& e : edges) { v.push_back(e.from); t.push_back(e.tag); }
    return true;
}

}  // namespace detail

template <class Tag>
std::vector<TaggedWalk<Tag>> split_walk_tagged(const VertexPool& pool, TaggedWalk<Tag> walk) {
    std::vector<TaggedWalk<Tag>> out;
    std::vector<TaggedWalk<Tag>> stack{std::move(walk)};
    while (!stack.empty()) {
        TaggedWalk<Tag> w = std::move(stack.back());
        stack.pop_back();
        if (!detail::cancel_spurs(w.verts, w.tags)) continue;
        // find a repeated vertex
        std::unordered_map<VId, std::size_t> seen;
        std::size_t cut_i = 0, cut_j = 0;
        bool dup = false;
        for (std::size_t i = 0; i < w.verts.size(); ++i) {
            auto [it, inserted] = seen.emplace(w.verts[i], i);
            if (!inserted) { cut_i = it->second; cut_j = i; dup = true; break; }
        }
        if (!dup) {
            if (std::abs(loop_area(pool, w.verts)) > 0.0) out.push_back(std::move(w));
            continue;
        }
        TaggedWalk<Tag> inner, rest;
        inner.verts.assign(w.verts.begin() + cut_i, w.verts.begin() + cut_j);
        inner.tags.assign(w.tags.begin() + cut_i, w.tags.begin() + cut_j);
        rest.verts.assign(w.verts.begin(), w.verts.begin() + cut_i);
        rest.verts.insert(rest.verts.end(), w.verts.begin() + cut_j, w.verts.end());
        rest.tags.assign(w.tags.begin(), w.tags.begin() + cut_i);
        rest.tags.insert(rest.tags.end(), w.tags.begin() + cut_j, w.tags.end());
        stack.push_back(std::move(inner));
        stack.push_back(std::move(rest));
    }
    return out;
}

}  // namespace tilerepair

#endif
