#include "tilerepair/geom.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cassert>

namespace tilerepair {

namespace {

using Rational = boost::multiprecision::cpp_rational;

int exact_orient_sign(Point p, Point q, Point r) {
    Rational px(p.x), py(p.y), qx(q.x), qy(q.y), rx(r.x), ry(r.y);
    Rational det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    if (det > 0) return 1;
    if (det < 0) return -1;
    return 0;
}

}  // namespace

Orientation orientation(Point p, Point q, Point r) {
    double detleft = (q.x - p.x) * (r.y - p.y);
    double detright = (q.y - p.y) * (r.x - p.x);
    double det = detleft - detright;

    // Error bound from the standard adaptive-predicate filter.
    double detsum;
    if (detleft > 0) {
        if (detright <= 0) return det > 0 ? Orientation::CCW : (det < 0 ? Orientation::CW : Orientation::Collinear);
        detsum = detleft + detright;
    } else if (detleft < 0) {
        if (detright >= 0) return det > 0 ? Orientation::CCW : (det < 0 ? Orientation::CW : Orientation::Collinear);
        detsum = -detleft - detright;
    } else {
        return det > 0 ? Orientation::CCW : (det < 0 ? Orientation::CW : Orientation::Collinear);
    }

    constexpr double eps = 3.3306690738754716e-16;  // ~ (3 + 16u)u
    double errbound = eps * detsum;
    if (det > errbound) return Orientation::CCW;
    if (-det > errbound) return Orientation::CW;

    int s = exact_orient_sign(p, q, r);
    return s > 0 ? Orientation::CCW : (s < 0 ? Orientation::CW : Orientation::Collinear);
}

bool point_on_segment(Point p, const Segment& s) {
    if (orientation(s.a, s.b, p) != Orientation::Collinear) return false;
    return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
           std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

SegIntersection segment_intersection(const Segment& s1, const Segment& s2) {
    SegIntersection out;
    Orientation o1 = orientation(s1.a, s1.b, s2.a);
    Orientation o2 = orientation(s1.a, s1.b, s2.b);
    Orientation o3 = orientation(s2.a, s2.b, s1.a);
    Orientation o4 = orientation(s2.a, s2.b, s1.b);

    if (o1 == Orientation::Collinear && o2 == Orientation::Collinear) {
        // Collinear: project on the dominant axis.
        Point d = s1.b - s1.a;
        bool usex = std::abs(d.x) >= std::abs(d.y);
        auto key = [usex](Point p) { return usex ? p.x : p.y; };
        Point lo1 = s1.a, hi1 = s1.b, lo2 = s2.a, hi2 = s2.b;
        if (key(lo1) > key(hi1)) std::swap(lo1, hi1);
        if (key(lo2) > key(hi2)) std::swap(lo2, hi2);
        Point lo = key(lo1) >= key(lo2) ? lo1 : lo2;
        Point hi = key(hi1) <= key(hi2) ? hi1 : hi2;
        if (key(lo) > key(hi)) return out;  // disjoint
        if (key(lo) == key(hi)) {
            out.kind = SegIntersection::Kind::AtPoint;
            out.p = lo;
            return out;
        }
        out.kind = SegIntersection::Kind::Overlap;
        out.sub = {lo, hi};
        return out;
    }

    auto between = [](Orientation a, Orientation b) {
        return (a == Orientation::CCW && b == Orientation::CW) ||
               (a == Orientation::CW && b == Orientation::CCW) ||
               a == Orientation::Collinear || b == Orientation::Collinear;
    };
    if (!between(o1, o2) || !between(o3, o4)) return out;

    // Endpoint touching cases: return the exact endpoint.
    if (o1 == Orientation::Collinear && point_on_segment(s2.a, s1)) { out.kind = SegIntersection::Kind::AtPoint; out.p = s2.a; return out; }
    if (o2 == Orientation::Collinear && point_on_segment(s2.b, s1)) { out.kind = SegIntersection::Kind::AtPoint; out.p = s2.b; return out; }
    if (o3 == Orientation::Collinear && point_on_segment(s1.a, s2)) { out.kind = SegIntersection::Kind::AtPoint; out.p = s1.a; return out; }
    if (o4 == Orientation::Collinear && point_on_segment(s1.b, s2)) { out.kind = SegIntersection::Kind::AtPoint; out.p = s1.b; return out; }
    if (o1 == Orientation::Collinear || o2 == Orientation::Collinear ||
        o3 == Orientation::Collinear || o4 == Orientation::Collinear)
        return out;  // collinear witness off-segment: no intersection

    // Proper transversal crossing.
    Point r = s1.b - s1.a;
    Point s = s2.b - s2.a;
    double denom = cross(r, s);
    double t = cross(s2.a - s1.a, s) / denom;
    t = std::clamp(t, 0.0, 1.0);
    out.kind = SegIntersection::Kind::AtPoint;
    out.p = {s1.a.x + t * r.x, s1.a.y + t * r.y};
    return out;
}

double point_segment_distance(Point p, const Segment& s) {
    Point d = s.b - s.a;
    double len2 = dot(d, d);
    if (len2 == 0.0) return dist(p, s.a);
    double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
    return dist(p, s.a + t * d);
}

double segment_distance(const Segment& s1, const Segment& s2) {
    if (segment_intersection(s1, s2).kind != SegIntersection::Kind::Empty) return 0.0;
    double d = point_segment_distance(s1.a, s2);
    d = std::min(d, point_segment_distance(s1.b, s2));
    d = std::min(d, point_segment_distance(s2.a, s1));
    d = std::min(d, point_segment_distance(s2.b, s1));
    return d;
}

double signed_area(const std::vector<Point>& pts) {
    double a = 0.0;
    std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point p = pts[i], q = pts[(i + 1) % n];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

double perimeter(const Ring& r) {
    double len = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) len += dist(r.at(i), r.at(i + 1));
    return len;
}

Point centroid(const Ring& r) {
    double a = 0.0, cx = 0.0, cy = 0.0;
    std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i) {
        Point p = r.at(i), q = r.at(i + 1);
        double w = p.x * q.y - q.x * p.y;
        a += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    if (a == 0.0) {  // degenerate: average the vertices
        for (Point p : r.pts) { cx += p.x; cy += p.y; }
        return {cx / n, cy / n};
    }
    return {cx / (3.0 * a), cy / (3.0 * a)};
}

int point_in_ring(Point p, const Ring& r) {
    std::size_t n = r.size();
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        Point a = r.at(i), b = r.at(i + 1);
        if (point_on_segment(p, {a, b})) return 0;
        // Crossing test on the half-open edge [a, b).
        if ((a.y > p.y) != (b.y > p.y)) {
            Orientation o = orientation(a, b, p);
            if (b.y > a.y ? o == Orientation::CCW : o == Orientation::CW) inside = !inside;
        }
    }
    return inside ? 1 : -1;
}

double interior_angle(const Ring& r, std::size_t k) {
    if (k >= r.size()) throw std::out_of_range("interior_angle: index");
    Point prev = r.at(k + r.size() - 1), v = r.at(k), next = r.at(k + 1);
    Point u = prev - v, w = next - v;
    double ang = std::atan2(cross(w, u), dot(w, u));
    if (ang <= 0) ang += 2.0 * M_PI;
    return ang;
}

VertexClass classify_vertex(const Ring& r, std::size_t k) {
    if (k >= r.size()) throw std::out_of_range("classify_vertex: index");
    Point prev = r.at(k + r.size() - 1), v = r.at(k), next = r.at(k + 1);
    // Exact where it matters: theta < pi iff the corner turns left.
    Orientation o = orientation(prev, v, next);
    return o == Orientation::CCW ? VertexClass::Convex : VertexClass::Reflex;
}

Point incenter(Point a, Point b, Point c) {
    double la = dist(b, c), lb = dist(c, a), lc = dist(a, b);
    double s = la + lb + lc;
    if (s == 0.0 || collinear(a, b, c))
        throw std::invalid_argument("incenter: degenerate triangle");
    return {(la * a.x + lb * b.x + lc * c.x) / s, (la * a.y + lb * b.y + lc * c.y) / s};
}

Point incenter(const Ring& tri) {
    if (tri.size() != 3) throw std::invalid_argument("incenter: not a triangle");
    return incenter(tri.pts[0], tri.pts[1], tri.pts[2]);
}

Ray angle_bisector(Point prev, Point v, Point next) {
    Point u = prev - v, w = next - v;
    double lu = norm(u), lw = norm(w);
    if (lu == 0.0 || lw == 0.0) throw std::invalid_argument("angle_bisector: degenerate angle");
    Point d = (1.0 / lu) * u + (1.0 / lw) * w;
    double ld = norm(d);
    if (ld < 1e-12) {
        // Straight angle: perpendicular, pointing to the interior (left of w).
        Point perp{-w.y / lw, w.x / lw};
        return {v, perp};
    }
    d = (1.0 / ld) * d;
    // Interior of a CCW corner: bisector must be left of the outgoing edge w
    // when the corner is convex, right when reflex.  The normalized-sum
    // direction already points into the wedge between the edges; flip if the
    // wedge is the exterior one.
    double s = cross(w, u);
    if (s < 0) d = {-d.x, -d.y};
    return {v, d};
}

Ray angle_bisector_ray(const Ring& r, std::size_t k) {
    if (k >= r.size()) throw std::out_of_range("angle_bisector_ray: index");
    return angle_bisector(r.at(k + r.size() - 1), r.at(k), r.at(k + 1));
}

std::vector<std::size_t> convex_hull(const std::vector<Point>& pts) {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
    });
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](std::size_t a, std::size_t b) { return pts[a] == pts[b]; }),
              idx.end());
    if (idx.size() < 3) return idx;
    std::vector<std::size_t> hull;
    auto build = [&](auto begin, auto end) {
        std::size_t base = hull.size();
        for (auto it = begin; it != end; ++it) {
            while (hull.size() >= base + 2 &&
                   orientation(pts[hull[hull.size() - 2]], pts[hull.back()], pts[*it]) !=
                       Orientation::CCW)
                hull.pop_back();
            hull.push_back(*it);
        }
    };
    build(idx.begin(), idx.end());
    hull.pop_back();
    build(idx.rbegin(), idx.rend());
    hull.pop_back();
    return hull;
}

}  // namespace tilerepair
