#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace e8chi {

/// Integer lattice point; dimension is the coordinate count.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<int> coords) : coords_(std::move(coords)) {}
    Point(std::initializer_list<int> coords) : coords_(coords) {}

    int dimension() const { return static_cast<int>(coords_.size()); }
    int operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }
    std::span<const int> coords() const { return coords_; }

    Point negated() const
    {
        Point p = *this;
        for (auto& c : p.coords_)
            c = -c;
        return p;
    }

    std::string to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i)
                s += ' ';
            s += std::to_string(coords_[i]);
        }
        return s;
    }

    auto operator<=>(const Point&) const = default;
    bool operator==(const Point&) const = default;

private:
    std::vector<int> coords_;
};

inline std::int64_t squared_distance(const Point& a, const Point& b)
{
    std::int64_t s = 0;
    for (int i = 0; i < a.dimension(); ++i) {
        const std::int64_t d = std::int64_t{a[i]} - b[i];
        s += d * d;
    }
    return s;
}

} // namespace e8chi
