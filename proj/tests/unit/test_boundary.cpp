#include <doctest.h>

#include <cmath>
#include <set>

#include "unit/helpers.hpp"

using namespace segdist;

namespace {

// Reference morphology: boundary by explicit erosion over all structuring
// element offsets.
std::set<std::size_t> erosion_boundary_oracle(const GridMask& m, bool full) {
    std::set<std::size_t> out;
    for (std::size_t lin = 0; lin < m.size(); ++lin) {
        if (!m.data[lin]) continue;
        const auto idx = m.unravel(lin);
        bool survives = true;
        const int zr = m.rank() == 3 ? 1 : 0;
        for (int dx = -1; dx <= 1 && survives; ++dx)
            for (int dy = -1; dy <= 1 && survives; ++dy)
                for (int dz = -zr; dz <= zr && survives; ++dz) {
                    if (dx == 0 && dy == 0 && dz == 0) continue;
                    const int manhattan = std::abs(dx) + std::abs(dy) + std::abs(dz);
                    if (!full && manhattan != 1) continue;
                    std::array<int, 3> nb{idx[0] + dx, idx[1] + dy, idx[2] + dz};
                    if (!m.in_bounds(nb) || !m.at(nb)) survives = false;
                }
        if (!survives) out.insert(lin);
    }
    return out;
}

}  // namespace

TEST_CASE("erosion of a single element removes it") {
    GridMask m = testutil::make_mask({5, 5}, {1, 1}, std::vector<std::uint8_t>(25, 0));
    m.data[m.linear({2, 3, 0})] = 1;
    for (bool full : {false, true}) {
        const BoundarySet s = extract_erode(m, full);
        REQUIRE(s.count() == 1);
        CHECK(s.points[0][0] == doctest::Approx(2.0));
        CHECK(s.points[0][1] == doctest::Approx(3.0));
        CHECK(s.weights[0] == 1.0);
    }
}

TEST_CASE("3x3 solid block keeps only the border as boundary") {
    const GridMask m = testutil::make_mask({3, 3}, {1, 1}, std::vector<std::uint8_t>(9, 1));
    CHECK(extract_erode(m, false).count() == 8);
    CHECK(extract_erode(m, true).count() == 8);
}

TEST_CASE("plus shape distinguishes face and full connectivity") {
    // Center of a plus survives face erosion but not full erosion.
    GridMask m = testutil::make_mask({3, 3}, {1, 1}, {0, 1, 0, 1, 1, 1, 0, 1, 0});
    CHECK(extract_erode(m, false).count() == 4);
    CHECK(extract_erode(m, true).count() == 5);
}

TEST_CASE("erosion boundary matches the reference morphology oracle") {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const GridMask m = trial % 2 == 0
                               ? testutil::random_mask(rng, {9, 7}, {1, 1}, 0.45)
                               : testutil::random_mask(rng, {5, 6, 4}, {1, 1, 2}, 0.45);
        for (bool full : {false, true}) {
            const BoundarySet s = extract_erode(m, full);
            const auto expected = erosion_boundary_oracle(m, full);
            CHECK(std::set<std::size_t>(s.cells.begin(), s.cells.end()) == expected);
        }
    }
}

TEST_CASE("full-connectivity boundary contains the face-connectivity boundary") {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const GridMask m = testutil::random_mask(rng, {8, 8}, {1, 1}, 0.5);
        const BoundarySet face = extract_erode(m, false);
        const BoundarySet full = extract_erode(m, true);
        const std::set<std::size_t> full_cells(full.cells.begin(), full.cells.end());
        for (std::size_t c : face.cells) CHECK(full_cells.count(c) == 1);
        const std::size_t fg = m.foreground_count();
        CHECK(face.count() <= fg);
        CHECK(full.count() <= fg);
    }
}

TEST_CASE("interface of a single element") {
    GridMask m = testutil::make_mask({3, 3}, {1, 1}, std::vector<std::uint8_t>(9, 0));
    m.data[m.linear({1, 1, 0})] = 1;
    const BoundarySet s = extract_interface(m);
    REQUIRE(s.count() == 4);
    double total = 0.0;
    for (double w : s.weights) total += w;
    CHECK(total == doctest::Approx(4.0));  // perimeter
    std::set<std::pair<double, double>> pts;
    for (const auto& p : s.points) pts.insert({p[0], p[1]});
    CHECK(pts.count({0.5, 1.0}) == 1);
    CHECK(pts.count({1.5, 1.0}) == 1);
    CHECK(pts.count({1.0, 0.5}) == 1);
    CHECK(pts.count({1.0, 1.5}) == 1);
}

TEST_CASE("interface weight equals the analytic perimeter / surface area") {
    SUBCASE("anisotropic single pixel") {
        GridMask m = testutil::make_mask({1, 1}, {0.5, 2.0}, {1});
        const BoundarySet s = extract_interface(m);
        double total = 0.0;
        for (double w : s.weights) total += w;
        CHECK(total == doctest::Approx(2.0 * (0.5 + 2.0)));
    }
    SUBCASE("unit voxel") {
        GridMask m = testutil::make_mask({1, 1, 1}, {1, 1, 1}, {1});
        const BoundarySet s = extract_interface(m);
        CHECK(s.count() == 6);
        double total = 0.0;
        for (double w : s.weights) total += w;
        CHECK(total == doctest::Approx(6.0));
    }
    SUBCASE("anisotropic box") {
        // 3x2x4 solid box, spacing (0.5, 1.5, 2.0).
        GridMask m = testutil::make_mask({3, 2, 4}, {0.5, 1.5, 2.0},
                                         std::vector<std::uint8_t>(24, 1));
        const BoundarySet s = extract_interface(m);
        const double lx = 3 * 0.5, ly = 2 * 1.5, lz = 4 * 2.0;
        double total = 0.0;
        for (double w : s.weights) total += w;
        CHECK(total == doctest::Approx(2.0 * (lx * ly + lx * lz + ly * lz)));
    }
}

TEST_CASE("foreground extraction enumerates all set elements") {
    Rng rng(13);
    CHECK(extract_foreground(testutil::make_mask({3, 3}, {1, 1}, std::vector<std::uint8_t>(9, 0)))
              .empty());
    CHECK(extract_foreground(testutil::make_mask({2, 2}, {1, 1}, {1, 1, 1, 1})).count() == 4);
    const GridMask m = testutil::random_mask(rng, {11, 6}, {1, 1});
    CHECK(extract_foreground(m).count() == m.foreground_count());
}

TEST_CASE("non-overlap extraction") {
    const GridMask a = testutil::make_mask({1, 2}, {1, 1}, {1, 1});
    const GridMask b = testutil::make_mask({1, 2}, {1, 1}, {1, 0});
    SUBCASE("identical masks give empty sets") {
        auto [sa, sb] = extract_pair(a, a, BoundaryMode::ForegroundNonOverlap);
        CHECK(sa.empty());
        CHECK(sb.empty());
    }
    SUBCASE("overlapping pair keeps only the non-shared element") {
        auto [sa, sb] = extract_pair(a, b, BoundaryMode::ForegroundNonOverlap);
        REQUIRE(sa.count() == 1);
        CHECK(sa.points[0][1] == doctest::Approx(1.0));
        CHECK(sb.empty());
    }
    SUBCASE("disjoint masks reduce to foreground extraction") {
        GridMask c = testutil::make_mask({1, 2}, {1, 1}, {0, 1});
        auto [sa, sb] = extract_pair(b, c, BoundaryMode::ForegroundNonOverlap);
        CHECK(sa.count() == extract_foreground(b).count());
        CHECK(sb.count() == extract_foreground(c).count());
    }
}

TEST_CASE("interface and erode-face boundaries stay within half a spacing diagonal") {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pair = testutil::random_pair(300 + trial, {16, 16}, {0.7, 1.9});
        const GridMask& m = pair.ref;
        const BoundarySet inter = extract_interface(m);
        const BoundarySet erode = extract_erode(m, false);
        double half_diag = 0.0;
        for (double s : m.spacing) half_diag += 0.25 * s * s;
        half_diag = std::sqrt(half_diag);
        auto max_min_dist = [](const BoundarySet& from, const BoundarySet& to) {
            double worst = 0.0;
            for (const auto& p : from.points) {
                double best = 1e300;
                for (const auto& q : to.points) {
                    const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
                    best = std::min(best, dx * dx + dy * dy + dz * dz);
                }
                worst = std::max(worst, best);
            }
            return std::sqrt(worst);
        };
        CHECK(max_min_dist(inter, erode) <= half_diag + 1e-12);
        CHECK(max_min_dist(erode, inter) <= half_diag + 1e-12);
    }
}

TEST_CASE("extraction commutes with grid translation") {
    Rng rng(31);
    const GridMask base = testutil::random_mask(rng, {6, 6}, {0.5, 1.5}, 0.4);
    GridMask shifted = testutil::make_mask({9, 9}, {0.5, 1.5}, std::vector<std::uint8_t>(81, 0));
    const std::array<int, 3> k{2, 3, 0};
    for (std::size_t lin = 0; lin < base.size(); ++lin) {
        if (!base.data[lin]) continue;
        auto idx = base.unravel(lin);
        shifted.data[shifted.linear({idx[0] + k[0], idx[1] + k[1], 0})] = 1;
    }
    for (BoundaryMode mode :
         {BoundaryMode::ErodeFace, BoundaryMode::ErodeFull, BoundaryMode::Interface,
          BoundaryMode::ForegroundAll}) {
        auto [s0, unused0] = extract_pair(base, base, mode);
        auto [s1, unused1] = extract_pair(shifted, shifted, mode);
        // The base mask has no border-touching foreground only by chance;
        // compare as point multisets after shifting back.
        if (s0.count() != s1.count()) continue;  // border effects, skip
        std::multiset<std::pair<double, double>> p0, p1;
        for (const auto& p : s0.points) p0.insert({p[0], p[1]});
        for (const auto& p : s1.points)
            p1.insert({p[0] - k[0] * 0.5, p[1] - k[1] * 1.5});
        bool equal = p0.size() == p1.size();
        if (equal) {
            auto it0 = p0.begin();
            for (auto it1 = p1.begin(); it1 != p1.end(); ++it1, ++it0)
                if (std::fabs(it0->first - it1->first) > 1e-9 ||
                    std::fabs(it0->second - it1->second) > 1e-9)
                    equal = false;
        }
        CHECK(equal);
    }
}
