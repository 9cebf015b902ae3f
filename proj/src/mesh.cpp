#include "tilerepair/mesh.hpp"

#include <cmath>

namespace tilerepair {

std::int64_t VertexPool::key(double x, double y) const {
    auto ix = static_cast<std::int64_t>(std::floor(x / cell_));
    auto iy = static_cast<std::int64_t>(std::floor(y / cell_));
    return ix * 73856093LL ^ iy * 19349663LL;
}

VId VertexPool::find(Point p) const {
    if (tol_ == 0.0) {
        auto it = grid_.find(key(p.x, p.y));
        if (it != grid_.end())
            for (VId v : it->second)
                if (pts_[static_cast<std::size_t>(v)] == p) return v;
        return -1;
    }
    VId best = -1;
    double bestd = tol_;
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy) {
            auto it = grid_.find(key(p.x + dx * cell_, p.y + dy * cell_));
            if (it == grid_.end()) continue;
            for (VId v : it->second) {
                double d = dist(pts_[static_cast<std::size_t>(v)], p);
                if (d <= bestd) { bestd = d; best = v; }
            }
        }
    return best;
}

VId VertexPool::add(Point p) {
    VId v = find(p);
    if (v >= 0) return v;
    v = static_cast<VId>(pts_.size());
    pts_.push_back(p);
    grid_[key(p.x, p.y)].push_back(v);
    return v;
}

double loop_area(const VertexPool& pool, const std::vector<VId>& loop) {
    double a = 0.0;
    std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = pool[loop[i]];
        const Point& q = pool[loop[(i + 1) % n]];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

double loop_length(const VertexPool& pool, const std::vector<VId>& loop) {
    double len = 0.0;
    std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) len += dist(pool[loop[i]], pool[loop[(i + 1) % n]]);
    return len;
}

Ring loop_ring(const VertexPool& pool, const std::vector<VId>& loop) {
    Ring r;
    r.pts.reserve(loop.size());
    for (VId v : loop) r.pts.push_back(pool[v]);
    return r;
}

std::vector<std::vector<VId>> split_walk(const VertexPool& pool, std::vector<VId> walk) {
    TaggedWalk<char> tw;
    tw.verts = std::move(walk);
    tw.tags.assign(tw.verts.size(), 0);
    std::vector<std::vector<VId>> out;
    for (auto& w : split_walk_tagged(pool, std::move(tw))) out.push_back(std::move(w.verts));
    return out;
}

}  // namespace tilerepair
