#ifndef OSLT_TESTFUNCS_HPP
#define OSLT_TESTFUNCS_HPP

#include "oslt/grid.hpp"
#include "oslt/vec.hpp"

#include <string>
#include <vector>

namespace oslt {

/// Compactly supported C^1 tensor bump used by every weak-form check:
/// phi(x) = prod_i (1 - ((x_i-c_i)/r_i)^2)^3_+, optionally times the same
/// profile in time. Finite, deterministic surrogate for "all test functions".
struct TestFunction {
    std::string id;
    std::vector<double> center, radius; // spatial
    double tc = 0.0, tr = -1.0;         // time bump; tr < 0 means none

    static double profile(double s) {
        const double u = 1 - s * s;
        return u > 0 ? u * u * u : 0.0;
    }
    static double profile_deriv(double s) {
        const double u = 1 - s * s;
        return u > 0 ? -6.0 * s * u * u : 0.0;
    }

    double time_factor(double t) const {
        return tr < 0 ? 1.0 : profile((t - tc) / tr);
    }
    double time_factor_deriv(double t) const {
        return tr < 0 ? 0.0 : profile_deriv((t - tc) / tr) / tr;
    }

    double space_value(const Vec& x) const {
        double p = 1;
        for (std::size_t i = 0; i < center.size(); ++i) {
            p *= profile((x[i] - center[i]) / radius[i]);
            if (p == 0) return 0;
        }
        return p;
    }
    double value(double t, const Vec& x) const { return time_factor(t) * space_value(x); }

    double space_deriv(const Vec& x, int axis) const {
        double p = 1;
        for (std::size_t i = 0; i < center.size(); ++i) {
            const double s = (x[i] - center[i]) / radius[i];
            p *= static_cast<int>(i) == axis ? profile_deriv(s) / radius[i] : profile(s);
            if (p == 0 && static_cast<int>(i) != axis) return 0;
        }
        return p;
    }
    // d/dt of the space-time bump
    double time_deriv(double t, const Vec& x) const {
        return time_factor_deriv(t) * space_value(x);
    }
    double spacetime_space_deriv(double t, const Vec& x, int axis) const {
        return time_factor(t) * space_deriv(x, axis);
    }

    /// Node index window covering the spatial support on a lattice.
    void support_window(const Lattice& lat, std::vector<int>& lo, std::vector<int>& hi) const;
    bool time_in_support(double t) const {
        return tr < 0 || std::abs(t - tc) < tr;
    }
};

/// 3^N lattice of bump centres at box fractions {1/4, 1/2, 3/4} with radii
/// {1/4, 1/2} of the box width; members whose support leaves the box are
/// dropped.
std::vector<TestFunction> spatial_test_family(const Box& box);

/// The spatial family crossed with time bumps (centres {0.3,0.5,0.7} of the
/// horizon at radius 1/4, plus a wide centred one), restricted to
/// (t0+dt, T-dt).
std::vector<TestFunction> spacetime_test_family(const SpaceTimeGrid& grid);

} // namespace oslt

#endif
