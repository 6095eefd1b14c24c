#ifndef OSLT_JACOBIAN_HPP
#define OSLT_JACOBIAN_HPP

#include "oslt/flow.hpp"
#include "oslt/grid.hpp"
#include "oslt/testfuncs.hpp"

#include <functional>
#include <vector>

namespace oslt {

/// Second-order derivative of node data along one axis: centered in the
/// interior, one-sided at the box faces. Keeps affine data exact.
double fd_derivative(const std::vector<double>& data, const Lattice& lat,
                     const std::vector<int>& idx, int axis);

/// Determinant of a small dense matrix (row-major): direct expansion up to
/// 3x3, pivoted elimination above.
double det_n(const double* A, int n);

/// Jacobian determinant of a stored flow slice X(s, t_idx, .) on the core
/// grid nodes.
ScalarField jacobian_det(const FlowMap& map, int t_idx);

/// det(grad p_1, ..., grad p_N) per stored time; each p_i is a Lipschitz
/// solution of the nonconservative equation sampled on the shared grid.
ScalarField jacobian_solution(const std::vector<ScalarField>& p, const SpaceTimeGrid& grid);

struct LiftResult {
    std::vector<ScalarField> V; // N+1 components, component 0 is the time slot
    double residual = 0.0;      // max over space-time tests of |int V . grad phi|
};

/// Space-time divergence-free lift of N hamiltonians: V_k is the alternating
/// minor determinant of (dH_i/dx_j) with column k removed (x_0 = t), so that
/// div_{t,x} V = 0 holds weakly.
LiftResult divergence_free_lift(const std::vector<ScalarField>& H);

/// A map sampled on a lattice at a fixed time: d components, node-major.
struct SampledMap {
    Lattice lattice;
    std::vector<std::vector<double>> comp; // comp[c][node]

    int dim() const { return static_cast<int>(comp.size()); }
    Vec value(std::size_t node) const {
        Vec v(dim());
        for (int c = 0; c < dim(); ++c) v[c] = comp[c][node];
        return v;
    }
};

struct WeakJacobianReport {
    std::vector<std::vector<double>> traces; // [n][test]
    std::vector<double> limit_values;        // [test]
    std::vector<double> deviation;           // [n], max over tests
    double final_deviation = 0.0;
    double max_step_ratio = 0.0; // max over n >= 1 of deviation[n]/deviation[n-1]
};

/// Weak stability of psi(u) det(grad u): for each test phi the trace
/// n -> int psi_n(u_n) det(grad u_n) phi against the limit value.
WeakJacobianReport weak_jacobian_limit_check(
    const std::vector<SampledMap>& u_seq,
    const std::vector<std::function<double(const Vec&)>>& psi_seq,
    const std::function<double(const Vec&)>& psi_limit, const SampledMap& u_limit,
    const std::vector<TestFunction>& tests);

} // namespace oslt

#endif
