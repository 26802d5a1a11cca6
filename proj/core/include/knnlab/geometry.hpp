#pragma once

#include <cmath>

namespace knnlab {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double dist2(const Point& p, const Point& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

inline double dist(const Point& p, const Point& q) {
    return std::sqrt(dist2(p, q));
}

struct Disk {
    Point center;
    double radius = 0.0;  // >= 0

    // Closed-disk membership.
    bool contains(const Point& p) const {
        return dist2(center, p) <= radius * radius;
    }
    bool inside_unit_square() const {
        return center.x - radius >= 0.0 && center.x + radius <= 1.0 &&
               center.y - radius >= 0.0 && center.y + radius <= 1.0;
    }
};

}  // namespace knnlab
