#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace horolip {

using Coord = std::int64_t;

// Lattice points of Z^d are plain coordinate vectors; the ambient
// dimension is fixed by whatever context (generating set, oracle, ...)
// the point is used with.
using Point = std::vector<Coord>;

inline Point zero_point(int dim) { return Point(static_cast<std::size_t>(dim), 0); }

inline Point add(const Point& a, const Point& b)
{
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Point sub(const Point& a, const Point& b)
{
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Point neg(const Point& a)
{
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Point scale(Coord n, const Point& a)
{
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = n * a[i];
    return r;
}

inline bool is_zero(const Point& a)
{
    for (Coord c : a)
        if (c != 0) return false;
    return true;
}

inline Coord linf_coord(const Point& a)
{
    Coord m = 0;
    for (Coord c : a) m = std::max(m, std::abs(c));
    return m;
}

inline Coord l1_coord(const Point& a)
{
    Coord m = 0;
    for (Coord c : a) m += std::abs(c);
    return m;
}

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull;
        for (Coord c : p) {
            h ^= static_cast<std::uint64_t>(c);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::string to_string(const Point& p)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << ',';
        os << p[i];
    }
    os << ')';
    return os.str();
}

// Enumerates the box [-b, b]^d in lexicographic order and calls fn on
// each point.
template <class Fn>
void for_each_box_point(int dim, Coord b, Fn&& fn)
{
    Point p(static_cast<std::size_t>(dim), -b);
    for (;;) {
        fn(p);
        int i = dim - 1;
        while (i >= 0 && p[static_cast<std::size_t>(i)] == b) {
            p[static_cast<std::size_t>(i)] = -b;
            --i;
        }
        if (i < 0) break;
        ++p[static_cast<std::size_t>(i)];
    }
}

inline std::vector<Point> box_points(int dim, Coord b)
{
    std::vector<Point> pts;
    for_each_box_point(dim, b, [&](const Point& p) { pts.push_back(p); });
    return pts;
}

} // namespace horolip
