#include "igff/lattice/box.hpp"

#include <algorithm>

#include "igff/error.hpp"

namespace igff::lattice {

std::string to_string(Site s) { return "(" + std::to_string(s.x) + "," + std::to_string(s.y) + ")"; }

LatticeBox::LatticeBox(Site origin, int width_x, int width_y) : origin_(origin), wx_(width_x), wy_(width_y) {
    if (width_x < 0 || width_y < 0) {
        throw InvalidArgument("box widths must be nonnegative");
    }
}

std::vector<Site> LatticeBox::boundary_sites() const {
    std::vector<Site> out;
    for (int y = origin_.y; y < origin_.y + wy_; ++y) {
        for (int x = origin_.x; x < origin_.x + wx_; ++x) {
            if (!is_interior({x, y})) out.push_back({x, y});
        }
    }
    return out;
}

std::vector<Site> LatticeBox::interior_sites() const {
    std::vector<Site> out;
    out.reserve(interior_count());
    for (std::size_t i = 0; i < interior_count(); ++i) out.push_back(interior_site(i));
    return out;
}

LatticeBox LatticeBox::intersect(const LatticeBox& other) const {
    const Site a = lo();
    const Site b = hi();
    const Site c = other.lo();
    const Site d = other.hi();
    const Site l{std::max(a.x, c.x), std::max(a.y, c.y)};
    const Site h{std::min(b.x, d.x), std::min(b.y, d.y)};
    if (h.x < l.x || h.y < l.y) return LatticeBox({l.x, l.y}, 0, 0);
    return from_corners(l, h);
}

}  // namespace igff::lattice
