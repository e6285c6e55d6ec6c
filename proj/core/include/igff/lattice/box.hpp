#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace igff::lattice {

/// A point of Z^2.
struct Site {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const Site&, const Site&) = default;
    friend constexpr Site operator+(Site a, Site b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Site operator-(Site a, Site b) { return {a.x - b.x, a.y - b.y}; }
};

std::string to_string(Site s);

inline constexpr Site kNeighborOffsets[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

/// Axis-aligned rectangle of lattice sites {x0..x0+wx-1} x {y0..y0+wy-1}.
///
/// A site is on the boundary when at least one of its four nearest neighbours
/// lies outside the box; every other site is interior. Flat indices are
/// row-major (x fastest).
class LatticeBox {
public:
    LatticeBox() = default;
    LatticeBox(Site origin, int width_x, int width_y);

    /// The square {0, ..., n}^2 (V_N for n = N).
    static LatticeBox square(int n) { return LatticeBox({0, 0}, n + 1, n + 1); }
    /// Inclusive corners.
    static LatticeBox from_corners(Site lo, Site hi) {
        return LatticeBox(lo, hi.x - lo.x + 1, hi.y - lo.y + 1);
    }

    Site origin() const { return origin_; }
    int width_x() const { return wx_; }
    int width_y() const { return wy_; }
    Site lo() const { return origin_; }
    Site hi() const { return {origin_.x + wx_ - 1, origin_.y + wy_ - 1}; }
    std::size_t size() const { return static_cast<std::size_t>(wx_) * static_cast<std::size_t>(wy_); }

    bool contains(Site s) const {
        return s.x >= origin_.x && s.x < origin_.x + wx_ && s.y >= origin_.y && s.y < origin_.y + wy_;
    }
    bool is_interior(Site s) const {
        return s.x > origin_.x && s.x < origin_.x + wx_ - 1 && s.y > origin_.y && s.y < origin_.y + wy_ - 1;
    }
    bool is_boundary(Site s) const { return contains(s) && !is_interior(s); }

    std::size_t index(Site s) const {
        return static_cast<std::size_t>(s.y - origin_.y) * static_cast<std::size_t>(wx_) +
               static_cast<std::size_t>(s.x - origin_.x);
    }
    Site site(std::size_t idx) const {
        return {origin_.x + static_cast<int>(idx % static_cast<std::size_t>(wx_)),
                origin_.y + static_cast<int>(idx / static_cast<std::size_t>(wx_))};
    }

    int interior_width_x() const { return wx_ > 2 ? wx_ - 2 : 0; }
    int interior_width_y() const { return wy_ > 2 ? wy_ - 2 : 0; }
    std::size_t interior_count() const {
        return static_cast<std::size_t>(interior_width_x()) * static_cast<std::size_t>(interior_width_y());
    }
    /// Row-major index among interior sites; only valid for interior sites.
    std::size_t interior_index(Site s) const {
        return static_cast<std::size_t>(s.y - origin_.y - 1) * static_cast<std::size_t>(interior_width_x()) +
               static_cast<std::size_t>(s.x - origin_.x - 1);
    }
    Site interior_site(std::size_t idx) const {
        const auto iw = static_cast<std::size_t>(interior_width_x());
        return {origin_.x + 1 + static_cast<int>(idx % iw), origin_.y + 1 + static_cast<int>(idx / iw)};
    }

    std::vector<Site> boundary_sites() const;
    std::vector<Site> interior_sites() const;

    /// Intersection with another box; empty() is true when they are disjoint.
    LatticeBox intersect(const LatticeBox& other) const;
    bool empty() const { return wx_ <= 0 || wy_ <= 0; }
    bool contains(const LatticeBox& other) const {
        return other.empty() || (contains(other.lo()) && contains(other.hi()));
    }

    friend bool operator==(const LatticeBox&, const LatticeBox&) = default;

private:
    Site origin_{};
    int wx_ = 0;
    int wy_ = 0;
};

}  // namespace igff::lattice

template <>
struct std::hash<igff::lattice::Site> {
    std::size_t operator()(const igff::lattice::Site& s) const noexcept {
        return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.x)) << 32) |
                                          static_cast<std::uint32_t>(s.y));
    }
};
