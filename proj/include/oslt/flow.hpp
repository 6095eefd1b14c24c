#ifndef OSLT_FLOW_HPP
#define OSLT_FLOW_HPP

#include "oslt/fields.hpp"
#include "oslt/grid.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace oslt {

enum class FlowDirection { backward_transport, forward, general };

/// Sampled generalized flow X(s,t,x) on grid nodes. Backward-transport maps
/// are stored on the padded lattice (the recursion needs the collar); the
/// core grid block is what diagnostics and solvers read.
struct FlowMap {
    struct StoredPair {
        int s_idx = 0, t_idx = 0;
        std::vector<double> X; // node-major on `lattice`, dim components
    };

    SpaceTimeGrid grid;
    Lattice lattice;
    std::vector<int> core_offset; // per-axis index of grid node 0 in `lattice`
    FlowDirection direction = FlowDirection::backward_transport;
    std::vector<StoredPair> pairs;
    double eps_used = 0.0;

    int dim() const { return grid.dim(); }

    const StoredPair* find(int s_idx, int t_idx) const {
        for (const auto& p : pairs)
            if (p.s_idx == s_idx && p.t_idx == t_idx) return &p;
        return nullptr;
    }
    const StoredPair& pair(int s_idx, int t_idx) const {
        const StoredPair* p = find(s_idx, t_idx);
        if (!p) throw std::invalid_argument("FlowMap: pair (s,t) not stored");
        return *p;
    }

    Vec at_lattice_node(const StoredPair& p, std::size_t flat) const {
        Vec v(dim());
        for (int c = 0; c < dim(); ++c) v[c] = p.X[flat * dim() + c];
        return v;
    }
    std::size_t core_to_lattice(std::size_t core_flat) const;
    Vec at_core_node(const StoredPair& p, std::size_t core_flat) const {
        return at_lattice_node(p, core_to_lattice(core_flat));
    }
    Vec interp(const StoredPair& p, const Vec& x) const {
        Vec v(dim());
        double comp[Vec::kMaxDim];
        lattice.interp(p.X, dim(), x, comp);
        for (int c = 0; c < dim(); ++c) v[c] = comp[c];
        return v;
    }
};

struct ConvergenceError : std::runtime_error {
    std::vector<double> cauchy_trace;
    explicit ConvergenceError(const std::string& msg, std::vector<double> trace = {})
        : std::runtime_error(msg), cauchy_trace(std::move(trace)) {}
};

struct FlowOptions {
    double eps0 = -1.0;      // default: 2 * max grid spacing
    int schedule_len = 7;    // eps_k = eps0 * 2^{-k}
    double tol = -1.0;       // default: 3 * max grid spacing
    double j_tol = -1.0;     // default: 10 * max grid spacing
    bool tabulate_field = true;
};

/// One classical RK4 trajectory of `field` from (t_from, x) to t_to (either
/// direction); |step| <= max_step.
Vec integrate_ode(const CoefficientField& field, double t_from, double t_to, Vec x,
                  double max_step);

/// Mollifies with a fixed eps and integrates the flow ODE from every grid
/// node with the fixed fourth-order integrator, sub-stepping so that each
/// step moves at most eps/4. The requested (s,t) index pairs default to the
/// full backward family X(T, t_k, .) or the forward family X(t_k, 0, .).
FlowMap integrate_regularized_flow(const CoefficientField& field, double eps,
                                   const SpaceTimeGrid& grid,
                                   FlowDirection direction,
                                   std::vector<std::pair<int, int>> requested_pairs = {},
                                   bool tabulate_field = true);

/// Runs the eps schedule until consecutive maps agree within tol and returns
/// the converged backward-transport map (final-time identity exact,
/// jacobian checked nonnegative). Throws ConvergenceError with the Cauchy
/// distance trace when the schedule is exhausted.
FlowMap build_transport_flow(const CoefficientField& field, const SpaceTimeGrid& grid,
                             const FlowOptions& opts = {});
FlowMap build_transport_flow(const CoefficientField& field, const SpaceTimeGrid& grid,
                             const std::vector<double>& schedule, double tol,
                             double j_tol = -1.0, bool tabulate_field = true);

struct FlowDiagnostics {
    struct PerPair {
        int s_idx = 0, t_idx = 0;
        double lip_measured = 0.0;
        double lip_bound = 0.0; // exp(int alpha)
        double excess_displacement = 0.0; // max |X-x| - sup|s-t|
    };
    std::vector<PerPair> per_pair;
    double final_identity_residual = 0.0;
    double max_lip_ratio = 0.0; // max measured/bound
};

FlowDiagnostics flow_diagnostics(const FlowMap& flow, const CoefficientField& field);

/// Max over nodes and triples (tau <= t <= s) of
/// |X(s,t,X(t,tau,x)) - X(s,tau,x)|, inner value interpolated.
double check_semigroup(const FlowMap& flow,
                       const std::vector<std::array<int, 3>>& triples_tau_t_s);

/// Sup over core nodes and common stored pairs of |X_a - X_b|.
double flow_distance(const FlowMap& a, const FlowMap& b);

/// Sup over core nodes of |X(stored pair) - reference(s,t,node)|.
double flow_distance_to(const FlowMap& flow,
                        const std::function<Vec(double s, double t, const Vec&)>& reference);

} // namespace oslt

#endif
