#ifndef OSLT_GRID_HPP
#define OSLT_GRID_HPP

#include "oslt/vec.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oslt {

/// Uniform node lattice over a box. Nodes sit on the box corners and edges,
/// spacing h_i = width_i / (nx_i - 1).
struct Lattice {
    Box box;
    std::vector<int> nx;

    int dim() const { return box.dim(); }
    double h(int i) const { return box.width(i) / (nx[i] - 1); }
    double hmax() const {
        double m = 0;
        for (int i = 0; i < dim(); ++i) m = std::max(m, h(i));
        return m;
    }
    std::size_t num_nodes() const {
        std::size_t n = 1;
        for (int v : nx) n *= static_cast<std::size_t>(v);
        return n;
    }
    // Row-major flattening, last axis fastest.
    std::size_t flat(const std::vector<int>& idx) const {
        std::size_t f = 0;
        for (int i = 0; i < dim(); ++i) f = f * nx[i] + idx[i];
        return f;
    }
    std::vector<int> unflat(std::size_t f) const {
        std::vector<int> idx(dim());
        for (int i = dim() - 1; i >= 0; --i) {
            idx[i] = static_cast<int>(f % nx[i]);
            f /= nx[i];
        }
        return idx;
    }
    Vec node(const std::vector<int>& idx) const {
        Vec x(dim());
        for (int i = 0; i < dim(); ++i) x[i] = box.lo[i] + idx[i] * h(i);
        return x;
    }
    Vec node(std::size_t f) const { return node(unflat(f)); }

    /// Trapezoid quadrature weight of a node (product of 1 or 1/2 times h_i).
    double quad_weight(const std::vector<int>& idx) const {
        double w = 1;
        for (int i = 0; i < dim(); ++i) {
            w *= h(i);
            if (idx[i] == 0 || idx[i] == nx[i] - 1) w *= 0.5;
        }
        return w;
    }

    /// Multilinear interpolation of per-node data with `ncomp` interleaved
    /// components, node-major layout. Queries outside the box are clamped.
    void interp(const std::vector<double>& data, int ncomp, const Vec& x,
                double* out) const {
        const int N = dim();
        int base[Vec::kMaxDim];
        double frac[Vec::kMaxDim];
        for (int i = 0; i < N; ++i) {
            double s = (x[i] - box.lo[i]) / h(i);
            if (s < 0) s = 0;
            if (s > nx[i] - 1) s = nx[i] - 1;
            int b = static_cast<int>(s);
            if (b > nx[i] - 2) b = nx[i] - 2;
            base[i] = b;
            frac[i] = s - b;
        }
        for (int c = 0; c < ncomp; ++c) out[c] = 0;
        const int corners = 1 << N;
        for (int m = 0; m < corners; ++m) {
            double w = 1;
            std::size_t f = 0;
            for (int i = 0; i < N; ++i) {
                const int bit = (m >> i) & 1;
                w *= bit ? frac[i] : 1 - frac[i];
                f = f * nx[i] + (base[i] + bit);
            }
            if (w == 0) continue;
            const double* d = data.data() + f * ncomp;
            for (int c = 0; c < ncomp; ++c) out[c] += w * d[c];
        }
    }

    double interp1(const std::vector<double>& data, const Vec& x) const {
        double v;
        interp(data, 1, x, &v);
        return v;
    }
};

/// Box-shaped spatial grid plus uniform time partition; the discretization
/// contract shared by flows, solutions and diagnostics. `padding` is the
/// extra collar the flow machinery may roam into (finite propagation speed).
struct SpaceTimeGrid {
    Box box;
    std::vector<int> nx;
    double t0 = 0.0, T = 1.0;
    int nt = 2;
    double padding = 0.0;

    int dim() const { return box.dim(); }
    double h(int i) const { return box.width(i) / (nx[i] - 1); }
    double hmax() const { return spatial().hmax(); }
    double dt() const { return (T - t0) / (nt - 1); }
    double time(int k) const { return t0 + k * dt(); }
    std::size_t num_nodes() const { return spatial().num_nodes(); }

    Lattice spatial() const { return Lattice{box, nx}; }

    /// Lattice extended by the padding collar, same spacing, nodes aligned
    /// with the core lattice.
    Lattice padded(double margin = -1.0) const {
        if (margin < 0) margin = padding;
        Lattice ext;
        ext.box.lo.resize(dim());
        ext.box.hi.resize(dim());
        ext.nx.resize(dim());
        for (int i = 0; i < dim(); ++i) {
            const int extra = static_cast<int>(std::ceil(margin / h(i) - 1e-12));
            ext.box.lo[i] = box.lo[i] - extra * h(i);
            ext.box.hi[i] = box.hi[i] + extra * h(i);
            ext.nx[i] = nx[i] + 2 * extra;
        }
        return ext;
    }

    void validate(double sup_bound) const {
        if (dim() < 1 || dim() > Vec::kMaxDim)
            throw std::invalid_argument("grid: unsupported dimension");
        for (int i = 0; i < dim(); ++i)
            if (nx[i] < 2) throw std::invalid_argument("grid: nx must be >= 2");
        if (nt < 2) throw std::invalid_argument("grid: nt must be >= 2");
        if (T <= t0) throw std::invalid_argument("grid: T must exceed t0");
        if (padding < sup_bound * (T - t0) - 1e-12)
            throw std::invalid_argument(
                "grid: padding below sup_bound*(T-t0), flow queries would leave the box");
    }
};

enum class FieldRole { conservative_pi, nonconservative_u, jacobian_J, test_function };

inline std::string role_name(FieldRole r) {
    switch (r) {
        case FieldRole::conservative_pi: return "conservative_pi";
        case FieldRole::nonconservative_u: return "nonconservative_u";
        case FieldRole::jacobian_J: return "jacobian_J";
        default: return "test_function";
    }
}

/// Time-indexed grid samples of a scalar quantity (pi, u, J or a test
/// function). `tindex[k]` is the grid time sample that `values[k]` lives on.
struct ScalarField {
    SpaceTimeGrid grid;
    FieldRole role = FieldRole::conservative_pi;
    std::vector<int> tindex;
    std::vector<std::vector<double>> values; // [stored time][node]

    int num_times() const { return static_cast<int>(tindex.size()); }
    double time(int k) const { return grid.time(tindex[k]); }

    int find_time(int grid_tidx) const {
        for (int k = 0; k < num_times(); ++k)
            if (tindex[k] == grid_tidx) return k;
        return -1;
    }

    /// Value at an arbitrary point of the stored slice (multilinear, zero
    /// outside the box is NOT applied here; queries are clamped).
    double at(int k, const Vec& x) const {
        return grid.spatial().interp1(values[k], x);
    }

    /// Same, but vanishing outside the grid box (for compactly supported data).
    double at_or_zero(int k, const Vec& x) const {
        if (!grid.box.contains(x)) return 0.0;
        return at(k, x);
    }

    static ScalarField all_times(const SpaceTimeGrid& g, FieldRole role) {
        ScalarField f;
        f.grid = g;
        f.role = role;
        f.tindex.resize(g.nt);
        for (int k = 0; k < g.nt; ++k) f.tindex[k] = k;
        f.values.assign(g.nt, std::vector<double>(g.num_nodes(), 0.0));
        return f;
    }
    static ScalarField single_time(const SpaceTimeGrid& g, FieldRole role, int tidx) {
        ScalarField f;
        f.grid = g;
        f.role = role;
        f.tindex = {tidx};
        f.values.assign(1, std::vector<double>(g.num_nodes(), 0.0));
        return f;
    }
};

} // namespace oslt

#endif
