#pragma once

#include <random>

#include "madt/geometry.hpp"

namespace madt_test {

inline madt::Point P(long long x, long long y) {
    return madt::Point{madt::Rat(x), madt::Rat(y)};
}

// Generates a random simple polygon with n vertices on a small lattice.
// Strategy: sample distinct points, take a random boundary order, then
// untangle by reversing sub-chains while two boundary edges cross (2-opt).
// The result is validated; rare degenerate layouts are resampled.
inline madt::Instance random_simple_polygon(int n, unsigned seed) {
    using namespace madt;
    std::mt19937 rng(seed);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::uniform_int_distribution<int> coord(0, 8 * n);
        std::vector<Point> pts;
        while ((int)pts.size() < n) {
            Point p = P(coord(rng), coord(rng));
            bool dup = false;
            for (const Point& q : pts)
                if (q == p) { dup = true; break; }
            if (!dup) pts.push_back(p);
        }
        std::shuffle(pts.begin(), pts.end(), rng);

        bool changed = true;
        int guard = 0;
        while (changed && guard++ < 50 * n * n) {
            changed = false;
            for (int i = 0; i < n && !changed; ++i) {
                for (int j = i + 1; j < n && !changed; ++j) {
                    int i2 = (i + 1) % n, j2 = (j + 1) % n;
                    if (i == j || i2 == j || j2 == i) continue;
                    if (segments_cross(pts[i], pts[i2], pts[j], pts[j2])) {
                        std::reverse(pts.begin() + i + 1, pts.begin() + j + 1);
                        changed = true;
                    }
                }
            }
        }

        Instance inst;
        inst.kind = InstanceKind::Polygon;
        inst.points = pts;
        if (!validate_instance(inst)) return inst;
    }
    throw std::runtime_error("failed to generate a simple polygon");
}

} // namespace madt_test
