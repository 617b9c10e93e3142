// geometry.hpp — Convex polygons in the rate plane: monotone-chain hull,
// point containment, support functions, and the O(|A|+|B|) edge-merge
// Minkowski sum.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "duplex/math.hpp"

namespace duplex {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double cross(Vec2 o, Vec2 a, Vec2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

namespace detail {

inline bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

// Rotate vertex order so the polygon starts at its lowest-then-leftmost vertex.
inline void rotate_to_bottom_start(std::vector<Vec2>& v) {
    if (v.empty()) return;
    auto it = std::min_element(v.begin(), v.end(), [](Vec2 a, Vec2 b) {
        return a.y < b.y || (a.y == b.y && a.x < b.x);
    });
    std::rotate(v.begin(), it, v.end());
}

}  // namespace detail

// Counterclockwise convex polygon with strictly convex vertex ordering,
// starting at the lowest-then-leftmost vertex. Degenerate polygons (points,
// segments) are allowed.
class ConvexRegion {
  public:
    ConvexRegion() = default;
    explicit ConvexRegion(std::vector<Vec2> ccw_vertices) : v_(std::move(ccw_vertices)) {
        detail::rotate_to_bottom_start(v_);
    }

    const std::vector<Vec2>& vertices() const { return v_; }
    bool empty() const { return v_.empty(); }
    std::size_t size() const { return v_.size(); }

    double support(Vec2 direction) const {
        double best = -std::numeric_limits<double>::infinity();
        for (const Vec2& p : v_) best = std::max(best, dot(direction, p));
        return best;
    }

    // Signed containment with slack: every edge half-plane test may be
    // violated by at most `slack` in euclidean distance.
    bool contains(Vec2 p, double slack = 0.0) const {
        if (v_.empty()) return false;
        if (v_.size() == 1) return norm(p - v_[0]) <= slack;
        for (std::size_t i = 0; i < v_.size(); ++i) {
            const Vec2 a = v_[i];
            const Vec2 b = v_[(i + 1) % v_.size()];
            const double len = norm(b - a);
            if (len == 0.0) continue;
            if (cross(a, b, p) < -slack * len) return false;
        }
        return true;
    }

    double area() const {
        double twice = 0.0;
        for (std::size_t i = 0; i < v_.size(); ++i) {
            const Vec2 a = v_[i];
            const Vec2 b = v_[(i + 1) % v_.size()];
            twice += a.x * b.y - a.y * b.x;
        }
        return 0.5 * twice;
    }

    double max_coordinate_sum() const {
        double best = 0.0;
        for (const Vec2& p : v_) best = std::max(best, p.x + p.y);
        return best;
    }

  private:
    std::vector<Vec2> v_;
};

// Monotone-chain hull over the point indices; returns indices of hull
// vertices in counterclockwise order. Duplicates within 1e-12 are merged and
// collinear triples dropped.
inline std::vector<int> convex_hull_indices(const std::vector<Vec2>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return detail::lex_less(pts[a], pts[b]); });
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](int a, int b) {
                              return std::abs(pts[a].x - pts[b].x) <= 1e-12 &&
                                     std::abs(pts[a].y - pts[b].y) <= 1e-12;
                          }),
              idx.end());
    const int m = static_cast<int>(idx.size());
    if (m <= 2) return idx;
    std::vector<int> hull(2 * m);
    int k = 0;
    for (int i = 0; i < m; ++i) {  // lower chain
        while (k >= 2 && cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0.0) --k;
        hull[k++] = idx[i];
    }
    const int lower = k + 1;
    for (int i = m - 2; i >= 0; --i) {  // upper chain
        while (k >= lower && cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0.0) --k;
        hull[k++] = idx[i];
    }
    hull.resize(k - 1);
    return hull;
}

inline ConvexRegion convex_hull(const std::vector<Vec2>& pts) {
    if (pts.empty()) return ConvexRegion{};
    std::vector<int> idx = convex_hull_indices(pts);
    std::vector<Vec2> v;
    v.reserve(idx.size());
    for (int i : idx) v.push_back(pts[i]);
    return ConvexRegion(std::move(v));
}

namespace detail {

// Edge list of a CCW polygon, including the closing edge. A two-vertex
// segment yields the forward and backward edge; a single point yields none.
inline std::vector<Vec2> edge_vectors(const std::vector<Vec2>& v) {
    std::vector<Vec2> e;
    if (v.size() < 2) return e;
    e.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) e.push_back(v[(i + 1) % v.size()] - v[i]);
    return e;
}

// Polar angle in [0, 2pi); edge sequences of bottom-started CCW polygons are
// non-decreasing in this angle.
inline double edge_angle(Vec2 e) {
    double a = std::atan2(e.y, e.x);
    if (a < -1e-15) a += 2.0 * M_PI;
    if (a < 0.0) a = 0.0;
    return a;
}

}  // namespace detail

// Minkowski sum {a + b} by the convex edge-merge algorithm. Parallel edges
// are merged by vector addition, so |result| <= |A| + |B|.
inline ConvexRegion minkowski_sum(const ConvexRegion& a, const ConvexRegion& b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("minkowski_sum: empty operand");
    }
    const std::vector<Vec2>& va = a.vertices();
    const std::vector<Vec2>& vb = b.vertices();
    const std::vector<Vec2> ea = detail::edge_vectors(va);
    const std::vector<Vec2> eb = detail::edge_vectors(vb);
    std::vector<Vec2> merged;
    merged.reserve(ea.size() + eb.size());
    std::size_t i = 0, j = 0;
    while (i < ea.size() || j < eb.size()) {
        if (i < ea.size() && j < eb.size()) {
            const double ang_a = detail::edge_angle(ea[i]);
            const double ang_b = detail::edge_angle(eb[j]);
            if (std::abs(ang_a - ang_b) <= 1e-12) {
                merged.push_back(ea[i++] + eb[j++]);
            } else if (ang_a < ang_b) {
                merged.push_back(ea[i++]);
            } else {
                merged.push_back(eb[j++]);
            }
        } else if (i < ea.size()) {
            merged.push_back(ea[i++]);
        } else {
            merged.push_back(eb[j++]);
        }
    }
    std::vector<Vec2> out;
    out.reserve(merged.size() + 1);
    Vec2 cur = va.front() + vb.front();
    out.push_back(cur);
    for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
        cur = cur + merged[k];
        out.push_back(cur);
    }
    // Linear cleanup of duplicates and collinear leftovers from angle ties,
    // preserving the O(|A|+|B|) bound.
    std::vector<Vec2> clean;
    clean.reserve(out.size());
    for (const Vec2& p : out) {
        while (clean.size() >= 2 &&
               cross(clean[clean.size() - 2], clean.back(), p) <= 1e-12 * norm(p - clean.back())) {
            clean.pop_back();
        }
        if (!clean.empty() && norm(p - clean.back()) <= 1e-12) continue;
        clean.push_back(p);
    }
    while (clean.size() >= 3 &&
           cross(clean[clean.size() - 2], clean.back(), clean.front()) <=
               1e-12 * norm(clean.front() - clean.back())) {
        clean.pop_back();
    }
    return ConvexRegion(std::move(clean));
}

inline ConvexRegion scale(const ConvexRegion& a, double factor) {
    std::vector<Vec2> v;
    v.reserve(a.size());
    for (const Vec2& p : a.vertices()) v.push_back(factor * p);
    return ConvexRegion(std::move(v));
}

}  // namespace duplex
