#include "oslt/testfuncs.hpp"

#include <algorithm>
#include <cmath>

namespace oslt {

void TestFunction::support_window(const Lattice& lat, std::vector<int>& lo,
                                  std::vector<int>& hi) const {
    const int N = lat.dim();
    lo.assign(N, 0);
    hi.assign(N, 0);
    for (int i = 0; i < N; ++i) {
        const double a = center[i] - radius[i], b = center[i] + radius[i];
        lo[i] = std::max(0, static_cast<int>(std::floor((a - lat.box.lo[i]) / lat.h(i))));
        hi[i] = std::min(lat.nx[i] - 1,
                         static_cast<int>(std::ceil((b - lat.box.lo[i]) / lat.h(i))));
    }
}

std::vector<TestFunction> spatial_test_family(const Box& box) {
    const int N = box.dim();
    std::vector<TestFunction> family;
    const double fractions[3] = {0.25, 0.5, 0.75};
    const double radii[2] = {0.25, 0.5};
    int centers = 1;
    for (int i = 0; i < N; ++i) centers *= 3;
    for (double rf : radii) {
        for (int m = 0; m < centers; ++m) {
            TestFunction tf;
            tf.center.resize(N);
            tf.radius.resize(N);
            int rem = m;
            bool inside = true;
            for (int i = 0; i < N; ++i) {
                const double w = box.width(i);
                tf.center[i] = box.lo[i] + fractions[rem % 3] * w;
                tf.radius[i] = rf * w;
                rem /= 3;
                if (tf.center[i] - tf.radius[i] < box.lo[i] - 1e-12 ||
                    tf.center[i] + tf.radius[i] > box.hi[i] + 1e-12)
                    inside = false;
            }
            if (!inside) continue;
            tf.id = "b" + std::to_string(family.size());
            family.push_back(std::move(tf));
        }
    }
    return family;
}

std::vector<TestFunction> spacetime_test_family(const SpaceTimeGrid& grid) {
    const auto spatial = spatial_test_family(grid.box);
    const double dur = grid.T - grid.t0, dt = grid.dt();
    struct TimeBump {
        double tc, tr;
    };
    std::vector<TimeBump> tb;
    for (double f : {0.3, 0.5, 0.7}) tb.push_back({grid.t0 + f * dur, 0.25 * dur});
    tb.push_back({grid.t0 + 0.5 * dur, 0.45 * dur});
    std::vector<TestFunction> family;
    for (const auto& t : tb) {
        if (t.tc - t.tr < grid.t0 + dt - 1e-12 || t.tc + t.tr > grid.T - dt + 1e-12)
            continue;
        for (const auto& s : spatial) {
            TestFunction tf = s;
            tf.tc = t.tc;
            tf.tr = t.tr;
            tf.id = "st" + std::to_string(family.size());
            family.push_back(std::move(tf));
        }
    }
    return family;
}

} // namespace oslt
