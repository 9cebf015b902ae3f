#ifndef TILEREPAIR_GEOM_HPP
#define TILEREPAIR_GEOM_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tilerepair {

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point() = default;
    Point(double x_, double y_) : x(x_), y(y_) {
        if (!std::isfinite(x) || !std::isfinite(y))
            throw std::invalid_argument("Point: non-finite coordinate");
    }

    friend bool operator==(const Point& a, const Point& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }

enum class Orientation { CW = -1, Collinear = 0, CCW = 1 };

// Sign of (q-p) x (r-p).  Exact: a floating-point filter with a rational
// fallback when the double result is within the error bound.
Orientation orientation(Point p, Point q, Point r);

inline bool collinear(Point p, Point q, Point r) {
    return orientation(p, q, r) == Orientation::Collinear;
}

struct Segment {
    Point a, b;
};

// True iff p lies on the closed segment (exact test).
bool point_on_segment(Point p, const Segment& s);

struct SegIntersection {
    enum class Kind { Empty, AtPoint, Overlap };
    Kind kind = Kind::Empty;
    Point p;        // valid when kind == AtPoint
    Segment sub;    // valid when kind == Overlap
};

// Exact classification; crossing point at best double precision.
SegIntersection segment_intersection(const Segment& s1, const Segment& s2);

// Minimum distance between closed segments.
double segment_distance(const Segment& s1, const Segment& s2);
double point_segment_distance(Point p, const Segment& s);

// A closed simple-polygon boundary, CCW, no repeated closing vertex.
struct Ring {
    std::vector<Point> pts;

    std::size_t size() const { return pts.size(); }
    Point at(std::size_t k) const { return pts[k % pts.size()]; }
};

double signed_area(const std::vector<Point>& pts);
inline double signed_area(const Ring& r) { return signed_area(r.pts); }
double perimeter(const Ring& r);
Point centroid(const Ring& r);

// -1 outside, 0 on boundary, +1 strictly inside.
int point_in_ring(Point p, const Ring& r);

enum class VertexClass { Convex, Reflex };

// Interior angle at vertex k, in (0, 2*pi); ring must be CCW.
double interior_angle(const Ring& r, std::size_t k);

// Convex iff theta < pi; theta == pi counts as Reflex.
VertexClass classify_vertex(const Ring& r, std::size_t k);

// Side-length-weighted vertex average.
Point incenter(Point a, Point b, Point c);
Point incenter(const Ring& tri);

struct Ray {
    Point origin;
    Point dir;  // unit length
};

// Interior-angle bisector at v for the CCW corner prev -> v -> next.
Ray angle_bisector(Point prev, Point v, Point next);
Ray angle_bisector_ray(const Ring& r, std::size_t k);

// Indices of the convex hull of a point set, CCW.
std::vector<std::size_t> convex_hull(const std::vector<Point>& pts);

}  // namespace tilerepair

#endif
