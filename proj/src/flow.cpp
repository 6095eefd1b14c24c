#include "oslt/flow.hpp"

#include "oslt/jacobian.hpp"
#include "oslt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace oslt {

std::size_t FlowMap::core_to_lattice(std::size_t core_flat) const {
    const Lattice core = grid.spatial();
    auto idx = core.unflat(core_flat);
    for (int i = 0; i < dim(); ++i) idx[i] += core_offset[i];
    return lattice.flat(idx);
}

namespace {

struct Stepper {
    const CoefficientField* field;
    double max_step;

    Vec rk4(double t_from, double t_to, Vec x) const {
        const double span = t_to - t_from;
        if (span == 0) return x;
        const int m = std::max(1, static_cast<int>(std::ceil(std::abs(span) / max_step - 1e-12)));
        const double h = span / m;
        double t = t_from;
        for (int i = 0; i < m; ++i) {
            const Vec k1 = field->eval(t, x);
            const Vec k2 = field->eval(t + h / 2, x + (h / 2) * k1);
            const Vec k3 = field->eval(t + h / 2, x + (h / 2) * k2);
            const Vec k4 = field->eval(t + h, x + h * k3);
            x += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t = t_from + (i + 1) * span / m;
        }
        return x;
    }
};

double substep_for(double dt, double eps, double sup) {
    if (sup <= 0) return dt;
    const double s = std::min(dt, eps / (4.0 * sup));
    if (!(s > 0) || dt / s > 1e6) {
        std::ostringstream msg;
        msg << "flow integration: eps=" << eps
            << " forces a sub-step below the resolution floor";
        throw ConvergenceError(msg.str());
    }
    return s;
}

// Tabulation lattice for the mollified field: the padded box refined 4x
// (8x when eps drops under the grid spacing).
Lattice fine_lattice(const SpaceTimeGrid& grid, double eps) {
    const Lattice ext = grid.padded();
    const int refine = eps >= grid.hmax() ? 4 : 8;
    Lattice fine;
    fine.box = ext.box;
    fine.nx.resize(ext.dim());
    for (int i = 0; i < ext.dim(); ++i) fine.nx[i] = (ext.nx[i] - 1) * refine + 1;
    return fine;
}

CoefficientField prepare_field(const CoefficientField& field, double eps,
                               const SpaceTimeGrid& grid, bool tabulate_field) {
    CoefficientField a_eps = mollify(field, eps);
    a_eps.domain = grid.padded().box;
    if (tabulate_field && field.time_independent) {
        const Lattice fine = fine_lattice(grid, eps);
        // Parallel sampling: tabulate() itself is serial, so fill here.
        const int N = field.dim;
        auto data = std::make_shared<std::vector<double>>(fine.num_nodes() * N);
        const CoefficientField* src = &a_eps;
        parallel_for(fine.num_nodes(), [&](std::size_t f) {
            const Vec v = src->eval(grid.t0, fine.node(f));
            for (int c = 0; c < N; ++c) (*data)[f * N + c] = v[c];
        });
        CoefficientField tab = a_eps;
        tab.kind = FieldKind::grid_sampled;
        tab.name = a_eps.name + "_tab";
        tab.domain = fine.box;
        auto latp = std::make_shared<Lattice>(fine);
        tab.eval_fn = [data, latp, N](double, const Vec& x) {
            Vec v(N);
            double comp[Vec::kMaxDim];
            latp->interp(*data, N, x, comp);
            for (int c = 0; c < N; ++c) v[c] = comp[c];
            return v;
        };
        return tab;
    }
    return a_eps;
}

} // namespace

Vec integrate_ode(const CoefficientField& field, double t_from, double t_to, Vec x,
                  double max_step) {
    Stepper st{&field, max_step};
    return st.rk4(t_from, t_to, x);
}

FlowMap integrate_regularized_flow(const CoefficientField& field, double eps,
                                   const SpaceTimeGrid& grid, FlowDirection direction,
                                   std::vector<std::pair<int, int>> requested_pairs,
                                   bool tabulate_field) {
    if (!(eps > 0)) throw std::invalid_argument("integrate_regularized_flow: eps must be > 0");
    grid.validate(field.sup_bound);

    FlowMap out;
    out.grid = grid;
    out.direction = direction;
    out.eps_used = eps;

    const int N = grid.dim();
    const double dt = grid.dt();
    const CoefficientField a = prepare_field(field, eps, grid, tabulate_field);
    const Stepper st{&a, substep_for(dt, eps, field.sup_bound)};

    if (requested_pairs.empty()) {
        if (direction == FlowDirection::backward_transport)
            for (int k = 0; k < grid.nt; ++k) requested_pairs.push_back({grid.nt - 1, k});
        else if (direction == FlowDirection::forward)
            for (int k = 0; k < grid.nt; ++k) requested_pairs.push_back({k, 0});
        else
            throw std::invalid_argument("integrate_regularized_flow: general direction "
                                        "needs an explicit pair list");
    }
    for (auto [s, t] : requested_pairs)
        if (s < 0 || s >= grid.nt || t < 0 || t > s)
            throw std::invalid_argument("integrate_regularized_flow: bad (s,t) pair");

    if (direction == FlowDirection::forward) {
        // Trajectories from the core nodes, recorded at every requested s.
        out.lattice = grid.spatial();
        out.core_offset.assign(N, 0);
        std::sort(requested_pairs.begin(), requested_pairs.end());
        const std::size_t n = out.lattice.num_nodes();
        for (auto [s, t] : requested_pairs) {
            (void)s;
            if (t != 0)
                throw std::invalid_argument("forward flow stores X(s,0,.) pairs only");
        }
        out.pairs.resize(requested_pairs.size());
        for (std::size_t p = 0; p < requested_pairs.size(); ++p) {
            out.pairs[p].s_idx = requested_pairs[p].first;
            out.pairs[p].t_idx = 0;
            out.pairs[p].X.resize(n * N);
        }
        parallel_for(n, [&](std::size_t f) {
            Vec x = out.lattice.node(f);
            double t_cur = grid.t0;
            for (std::size_t p = 0; p < out.pairs.size(); ++p) {
                const double s_time = grid.time(out.pairs[p].s_idx);
                x = st.rk4(t_cur, s_time, x);
                t_cur = s_time;
                for (int c = 0; c < N; ++c) out.pairs[p].X[f * N + c] = x[c];
            }
        });
        return out;
    }

    // Backward-in-time march from each requested upper time s: maintain the
    // map W_j = X(s, t_j, .) on the padded lattice; one short forward ODE leg
    // per node and step, then evaluation of the previous map.
    out.lattice = grid.padded();
    out.core_offset.resize(N);
    for (int i = 0; i < N; ++i)
        out.core_offset[i] = static_cast<int>(
            std::lround((grid.box.lo[i] - out.lattice.box.lo[i]) / grid.h(i)));

    std::set<int> s_values;
    for (auto [s, t] : requested_pairs) s_values.insert(s);
    const std::size_t n = out.lattice.num_nodes();

    for (int s_idx : s_values) {
        int t_min = s_idx;
        for (auto [s, t] : requested_pairs)
            if (s == s_idx) t_min = std::min(t_min, t);

        std::vector<double> W(n * N), W_next(n * N);
        parallel_for(n, [&](std::size_t f) {
            const Vec x = out.lattice.node(f);
            for (int c = 0; c < N; ++c) W[f * N + c] = x[c];
        });
        auto store = [&](int t_idx, const std::vector<double>& data) {
            for (auto [s, t] : requested_pairs)
                if (s == s_idx && t == t_idx)
                    out.pairs.push_back({s_idx, t_idx, data});
        };
        store(s_idx, W);
        for (int j = s_idx - 1; j >= t_min; --j) {
            const double tj = grid.time(j), tj1 = grid.time(j + 1);
            const std::vector<double>* prev = &W;
            parallel_for(n, [&](std::size_t f) {
                const Vec y = st.rk4(tj, tj1, out.lattice.node(f));
                double comp[Vec::kMaxDim];
                out.lattice.interp(*prev, N, y, comp);
                for (int c = 0; c < N; ++c) W_next[f * N + c] = comp[c];
            });
            W.swap(W_next);
            store(j, W);
        }
    }
    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const FlowMap::StoredPair& a, const FlowMap::StoredPair& b) {
                  return std::tie(a.s_idx, a.t_idx) < std::tie(b.s_idx, b.t_idx);
              });
    return out;
}

double flow_distance(const FlowMap& a, const FlowMap& b) {
    if (a.grid.num_nodes() != b.grid.num_nodes())
        throw std::invalid_argument("flow_distance: grids differ");
    double d = 0;
    const std::size_t n = a.grid.num_nodes();
    for (const auto& pa : a.pairs) {
        const FlowMap::StoredPair* pb = b.find(pa.s_idx, pa.t_idx);
        if (!pb) continue;
        for (std::size_t f = 0; f < n; ++f)
            d = std::max(d, norm(a.at_core_node(pa, f) - b.at_core_node(*pb, f)));
    }
    return d;
}

double flow_distance_to(const FlowMap& flow,
                        const std::function<Vec(double, double, const Vec&)>& reference) {
    double d = 0;
    const std::size_t n = flow.grid.num_nodes();
    const Lattice core = flow.grid.spatial();
    for (const auto& p : flow.pairs) {
        const double s = flow.grid.time(p.s_idx), t = flow.grid.time(p.t_idx);
        for (std::size_t f = 0; f < n; ++f)
            d = std::max(d, norm(flow.at_core_node(p, f) - reference(s, t, core.node(f))));
    }
    return d;
}

FlowMap build_transport_flow(const CoefficientField& field, const SpaceTimeGrid& grid,
                             const FlowOptions& opts) {
    const double h = grid.hmax();
    std::vector<double> schedule;
    const double eps0 = opts.eps0 > 0 ? opts.eps0 : 2.0 * h;
    for (int k = 0; k < opts.schedule_len; ++k) schedule.push_back(eps0 * std::pow(2.0, -k));
    return build_transport_flow(field, grid, schedule,
                                opts.tol > 0 ? opts.tol : 3.0 * h, opts.j_tol,
                                opts.tabulate_field);
}

FlowMap build_transport_flow(const CoefficientField& field, const SpaceTimeGrid& grid,
                             const std::vector<double>& schedule, double tol,
                             double j_tol, bool tabulate_field) {
    if (schedule.size() < 2)
        throw std::invalid_argument("build_transport_flow: schedule needs >= 2 entries");
    for (std::size_t k = 1; k < schedule.size(); ++k)
        if (!(schedule[k] < schedule[k - 1]))
            throw std::invalid_argument("build_transport_flow: schedule must decrease");
    if (!(tol > 0)) throw std::invalid_argument("build_transport_flow: tol must be > 0");
    if (j_tol < 0) j_tol = 10.0 * grid.hmax();

    std::vector<double> trace;
    FlowMap prev = integrate_regularized_flow(field, schedule[0], grid,
                                              FlowDirection::backward_transport, {},
                                              tabulate_field);
    for (std::size_t k = 1; k < schedule.size(); ++k) {
        FlowMap cur = integrate_regularized_flow(field, schedule[k], grid,
                                                 FlowDirection::backward_transport, {},
                                                 tabulate_field);
        const double d = flow_distance(prev, cur);
        trace.push_back(d);
        FlowMap* converged = nullptr;
        if (d == 0.0) converged = &prev; // already exact at the coarser width
        else if (d <= tol) converged = &cur;
        if (converged) {
            double min_j = 0.0;
            for (int t_idx = 0; t_idx < grid.nt; ++t_idx) {
                const ScalarField J = jacobian_det(*converged, t_idx);
                for (double v : J.values[0]) min_j = std::min(min_j, v);
            }
            if (min_j < -j_tol) {
                std::ostringstream msg;
                msg << "build_transport_flow: converged map has jacobian " << min_j
                    << " below -" << j_tol;
                throw ConvergenceError(msg.str(), trace);
            }
            return std::move(*converged);
        }
        prev = std::move(cur);
    }
    std::ostringstream msg;
    msg << "build_transport_flow: schedule exhausted at eps=" << schedule.back()
        << " with Cauchy distance " << trace.back() << " > tol " << tol;
    throw ConvergenceError(msg.str(), trace);
}

FlowDiagnostics flow_diagnostics(const FlowMap& flow, const CoefficientField& field) {
    if (flow.pairs.size() < 2)
        throw std::invalid_argument("flow_diagnostics: needs at least two stored pairs");
    FlowDiagnostics d;
    const Lattice core = flow.grid.spatial();
    const std::size_t n = core.num_nodes();
    const int N = flow.dim();
    for (const auto& p : flow.pairs) {
        FlowDiagnostics::PerPair pp;
        pp.s_idx = p.s_idx;
        pp.t_idx = p.t_idx;
        const double s = flow.grid.time(p.s_idx), t = flow.grid.time(p.t_idx);
        pp.lip_bound = std::exp(field.alpha_int(t, s));
        double lip = 0.0, excess = -1e300;
        for (std::size_t f = 0; f < n; ++f) {
            const auto idx = core.unflat(f);
            const Vec Xf = flow.at_core_node(p, f);
            excess = std::max(excess, norm(Xf - core.node(idx)) -
                                          field.sup_bound * std::abs(s - t));
            for (int i = 0; i < N; ++i) {
                if (idx[i] + 1 >= core.nx[i]) continue;
                auto jdx = idx;
                jdx[i] += 1;
                const Vec Xg = flow.at_core_node(p, core.flat(jdx));
                lip = std::max(lip, norm(Xg - Xf) / core.h(i));
            }
        }
        pp.lip_measured = lip;
        pp.excess_displacement = excess;
        if (p.s_idx == p.t_idx) {
            for (std::size_t f = 0; f < n; ++f)
                d.final_identity_residual =
                    std::max(d.final_identity_residual,
                             norm(flow.at_core_node(p, f) - core.node(f)));
        }
        d.max_lip_ratio = std::max(d.max_lip_ratio, pp.lip_measured / pp.lip_bound);
        d.per_pair.push_back(pp);
    }
    return d;
}

double check_semigroup(const FlowMap& flow,
                       const std::vector<std::array<int, 3>>& triples) {
    double err = 0;
    const Lattice core = flow.grid.spatial();
    const std::size_t n = core.num_nodes();
    for (const auto& tr : triples) {
        const int tau = tr[0], t = tr[1], s = tr[2];
        if (!(tau <= t && t <= s))
            throw std::invalid_argument("check_semigroup: triple must satisfy tau <= t <= s");
        const auto& p_st = flow.pair(s, t);
        const auto& p_ttau = flow.pair(t, tau);
        const auto& p_stau = flow.pair(s, tau);
        for (std::size_t f = 0; f < n; ++f) {
            const Vec inner = flow.at_core_node(p_ttau, f);
            const Vec composed = flow.interp(p_st, inner);
            err = std::max(err, norm(composed - flow.at_core_node(p_stau, f)));
        }
    }
    return err;
}

} // namespace oslt
