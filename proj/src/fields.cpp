#include "oslt/fields.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace oslt {

namespace {

// 9-point Gauss-Legendre rule on [-1,1].
constexpr int kQuadN = 9;
constexpr double kQuadX[kQuadN] = {
    -0.9681602395076261, -0.8360311073266358, -0.6133714327005904,
    -0.3242534234038089, 0.0,
    0.3242534234038089, 0.6133714327005904, 0.8360311073266358,
    0.9681602395076261};
constexpr double kQuadW[kQuadN] = {
    0.0812743883615744, 0.1806481606948574, 0.2606106964029354,
    0.3123470770400029, 0.3302393550012598,
    0.3123470770400029, 0.2606106964029354, 0.1806481606948574,
    0.0812743883615744};

// Unit-mass bump kernel on [-1,1].
inline double bump_kernel(double s) {
    const double u = 1.0 - s * s;
    return u > 0 ? (35.0 / 32.0) * u * u * u : 0.0;
}

// Deterministic uniform in [0,1) built from raw 64-bit draws; avoids the
// implementation-defined std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

double CoefficientField::alpha_int(double a, double b) const {
    if (!alpha || b <= a) return 0.0;
    const int n = 256; // composite Simpson, fixed resolution
    const double h = (b - a) / n;
    double s = alpha(a) + alpha(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * alpha(a + i * h);
    return s * h / 3.0;
}

Vec evaluate(const CoefficientField& field, double t, const Vec& x) {
    Vec v = field.eval(t, x);
    if (!finite(v))
        throw std::runtime_error("evaluate: field '" + field.name +
                                 "' returned a non-finite velocity (corrupt definition)");
    return v;
}

CoefficientField mollify(const CoefficientField& field, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("mollify: eps must be positive");
    const int N = field.dim;

    CoefficientField out = field;
    out.kind = FieldKind::closed_form;
    out.interfaces.clear();
    out.name = field.name + "_eps";
    out.differentiable = true;

    // Tensor-product quadrature of rho_eps * a. The kernel mass under this
    // rule is exactly 1, so constants pass through unchanged.
    auto base = std::make_shared<CoefficientField>(field);
    out.eval_fn = [base, eps, N](double t, const Vec& x) {
        Vec acc(N);
        int qi[Vec::kMaxDim] = {0};
        for (;;) {
            double w = 1.0;
            Vec y = x;
            for (int d = 0; d < N; ++d) {
                w *= kQuadW[qi[d]] * bump_kernel(kQuadX[qi[d]]);
                y[d] -= eps * kQuadX[qi[d]];
            }
            acc += w * base->eval(t, y);
            int d = 0;
            while (d < N && ++qi[d] == kQuadN) qi[d++] = 0;
            if (d == N) break;
        }
        return acc;
    };
    return out;
}

namespace {

// Largest eigenvalue of the symmetrized finite-difference gradient of a at x.
// Used as an extra probe for differentiable closed-form fields.
double sym_grad_max_eig(const CoefficientField& field, double t, const Vec& x, double step) {
    const int N = field.dim;
    double S[Vec::kMaxDim][Vec::kMaxDim] = {};
    for (int j = 0; j < N; ++j) {
        Vec xp = x, xm = x;
        xp[j] += step;
        xm[j] -= step;
        const Vec ap = field.eval(t, xp), am = field.eval(t, xm);
        for (int i = 0; i < N; ++i) {
            const double g = (ap[i] - am[i]) / (2 * step);
            S[i][j] += 0.5 * g;
            S[j][i] += 0.5 * g;
        }
    }
    // Shifted power iteration: S + c*Id is positive semidefinite for
    // c = max row sum, and its top eigenvalue is max_eig(S) + c.
    double c = 0;
    for (int i = 0; i < N; ++i) {
        double r = 0;
        for (int j = 0; j < N; ++j) r += std::abs(S[i][j]);
        c = std::max(c, r);
    }
    if (c == 0) return 0.0;
    Vec v(N);
    for (int i = 0; i < N; ++i) v[i] = 1.0 / std::sqrt(static_cast<double>(N));
    double lam = 0;
    for (int it = 0; it < 200; ++it) {
        Vec w(N);
        for (int i = 0; i < N; ++i) {
            double s = c * v[i];
            for (int j = 0; j < N; ++j) s += S[i][j] * v[j];
            w[i] = s;
        }
        const double nw = norm(w);
        if (nw == 0) return -c;
        w *= 1.0 / nw;
        lam = nw;
        v = w;
    }
    return lam - c;
}

struct PairSet {
    std::vector<std::pair<Vec, Vec>> pairs;
};

PairSet draw_pairs(const CoefficientField& field, double t, const PairSampler& s) {
    const int N = field.dim;
    if (s.domain.dim() != N)
        throw std::invalid_argument("estimate_oslc: sampler domain dimension mismatch");
    PairSet out;
    std::mt19937_64 rng(s.seed);

    // Stratified random pairs: split each axis in 4, draw pairs with the
    // second point at a random scale down to h/4.
    const int strata = 4;
    std::vector<int> cell(N, 0);
    int total_cells = 1;
    for (int i = 0; i < N; ++i) total_cells *= strata;
    const int per_cell = std::max(1, s.random_pairs / total_cells);
    const double scale_min = s.h > 0 ? s.h / 4 : 1e-3 * s.domain.diameter();
    for (int cflat = 0; cflat < total_cells; ++cflat) {
        int rem = cflat;
        for (int i = N - 1; i >= 0; --i) {
            cell[i] = rem % strata;
            rem /= strata;
        }
        for (int p = 0; p < per_cell; ++p) {
            Vec x(N), dir(N);
            for (int i = 0; i < N; ++i) {
                const double w = s.domain.width(i) / strata;
                x[i] = s.domain.lo[i] + (cell[i] + uniform01(rng)) * w;
                dir[i] = 2 * uniform01(rng) - 1;
            }
            double nd = norm(dir);
            if (nd < 1e-12) { dir[0] = 1; nd = 1; }
            dir *= 1.0 / nd;
            const double r = scale_min * std::pow(s.domain.diameter() / scale_min,
                                                  uniform01(rng));
            Vec y = s.domain.clamp(x + r * dir);
            if (norm(y - x) > 1e-14) out.pairs.emplace_back(x, y);
        }
    }

    // Deterministic interface-straddling pairs at scales h, h/2, h/4.
    if (s.h > 0) {
        for (const auto& itf : field.interfaces) {
            for (int p = 0; p < s.interface_points; ++p) {
                // Bisect between two random points of opposite signed distance.
                Vec a(N), b(N);
                bool found = false;
                for (int attempt = 0; attempt < 64 && !found; ++attempt) {
                    for (int i = 0; i < N; ++i) {
                        a[i] = s.domain.lo[i] + uniform01(rng) * s.domain.width(i);
                        b[i] = s.domain.lo[i] + uniform01(rng) * s.domain.width(i);
                    }
                    found = itf.signed_distance(t, a) * itf.signed_distance(t, b) < 0;
                }
                if (!found) continue;
                for (int it = 0; it < 80; ++it) {
                    Vec m = 0.5 * (a + b);
                    if (itf.signed_distance(t, a) * itf.signed_distance(t, m) <= 0)
                        b = m;
                    else
                        a = m;
                }
                const Vec q = 0.5 * (a + b);
                const Vec n = itf.normal(t, q);
                for (double scale : {s.h, s.h / 2, s.h / 4}) {
                    Vec x = q - (scale / 2) * n;
                    Vec y = q + (scale / 2) * n;
                    if (s.domain.contains(x) && s.domain.contains(y))
                        out.pairs.emplace_back(x, y);
                }
            }
        }
    }
    return out;
}

} // namespace

OslcReport estimate_oslc(const CoefficientField& field, double t,
                         const PairSampler& sampler, double tolerance) {
    return estimate_oslc(field, std::vector<double>{t}, sampler, tolerance);
}

OslcReport estimate_oslc(const CoefficientField& field,
                         const std::vector<double>& times,
                         const PairSampler& sampler, double tolerance) {
    OslcReport rep;
    rep.worst_ratio = -std::numeric_limits<double>::infinity();
    bool any_pair = false;
    for (double t : times) {
        const PairSet ps = draw_pairs(field, t, sampler);
        if (ps.pairs.empty())
            throw std::invalid_argument("estimate_oslc: sampler produced no pairs");
        any_pair = true;
        double ahat = -std::numeric_limits<double>::infinity();
        Vec wx, wy;
        for (const auto& [x, y] : ps.pairs) {
            const Vec d = y - x;
            const double r = dot(field.eval(t, y) - field.eval(t, x), d) / norm2(d);
            if (r > ahat) {
                ahat = r;
                wx = x;
                wy = y;
            }
        }
        if (field.differentiable) {
            // Matrix form of the condition, probed at stratum centres.
            std::mt19937_64 rng(sampler.seed ^ 0x9e3779b97f4a7c15ull);
            const double step = std::max(1e-6, sampler.h > 0 ? sampler.h * 1e-3 : 1e-5);
            for (int p = 0; p < 16; ++p) {
                Vec x(field.dim);
                for (int i = 0; i < field.dim; ++i)
                    x[i] = sampler.domain.lo[i] + uniform01(rng) * sampler.domain.width(i);
                ahat = std::max(ahat, sym_grad_max_eig(field, t, x, step));
            }
        }
        rep.pairs_sampled += ps.pairs.size();
        rep.alpha_hat.push_back(ahat);
        rep.times.push_back(t);
        if (ahat > rep.worst_ratio) {
            rep.worst_ratio = ahat;
            rep.worst_time = t;
            rep.worst_x = wx;
            rep.worst_y = wy;
        }
        const double claimed = field.alpha ? field.alpha(t) : 0.0;
        if (ahat > claimed + tolerance) rep.violated = true;
    }
    if (!any_pair) throw std::invalid_argument("estimate_oslc: no sample times");
    return rep;
}

std::pair<double, double> translation_bound(const CoefficientField& field, double t,
                                            const Box& convex_box, const Box& inner_region,
                                            const Vec& shift) {
    const int N = field.dim;
    const double hn = norm(shift);
    for (int i = 0; i < N; ++i) {
        if (inner_region.lo[i] - hn < convex_box.lo[i] - 1e-12 ||
            inner_region.hi[i] + hn > convex_box.hi[i] + 1e-12)
            throw std::invalid_argument(
                "translation_bound: inner region plus |h|-ball must fit inside C");
    }
    // Tensor trapezoid over the inner region.
    Lattice lat;
    lat.box = inner_region;
    lat.nx.assign(N, N <= 1 ? 4097 : (N == 2 ? 257 : 65));
    double lhs = 0;
    const std::size_t n = lat.num_nodes();
    for (std::size_t f = 0; f < n; ++f) {
        const auto idx = lat.unflat(f);
        const Vec x = lat.node(idx);
        lhs += lat.quad_weight(idx) *
               std::abs(dot(field.eval(t, x + shift) - field.eval(t, x), shift));
    }
    const double alpha_t = field.alpha ? field.alpha(t) : 0.0;
    const double rhs = 2.0 *
                       (alpha_t * convex_box.volume() +
                        field.sup_bound * std::pow(convex_box.diameter(), N - 1)) *
                       norm2(shift);
    return {lhs, rhs};
}

JumpCheck jump_direction_check(const CoefficientField& field, const Vec& interface_point,
                               double t, double on_interface_tol) {
    if (field.kind != FieldKind::piecewise_interface || field.interfaces.empty())
        throw std::invalid_argument("jump_direction_check: field has no declared interfaces");
    const Interface* found = nullptr;
    for (const auto& itf : field.interfaces) {
        if (std::abs(itf.signed_distance(t, interface_point)) <= on_interface_tol) {
            found = &itf;
            break;
        }
    }
    if (!found)
        throw std::invalid_argument("jump_direction_check: point is not on an interface");
    JumpCheck c;
    c.normal = found->normal(t, interface_point);
    c.jump = found->plus_limit(t, interface_point) - found->minus_limit(t, interface_point);
    c.lambda = -dot(c.jump, c.normal);
    c.colinearity_error = norm(c.jump + c.lambda * c.normal);
    return c;
}

CoefficientField tabulate(const CoefficientField& field, const Lattice& lattice, double t) {
    const int N = field.dim;
    auto data = std::make_shared<std::vector<double>>(lattice.num_nodes() * N);
    for (std::size_t f = 0; f < lattice.num_nodes(); ++f) {
        const Vec v = field.eval(t, lattice.node(f));
        for (int c = 0; c < N; ++c) (*data)[f * N + c] = v[c];
    }
    CoefficientField out = field;
    out.kind = FieldKind::grid_sampled;
    out.interfaces.clear();
    out.name = field.name + "_tab";
    out.domain = lattice.box;
    auto lat = std::make_shared<Lattice>(lattice);
    out.eval_fn = [data, lat, N](double, const Vec& x) {
        Vec v(N);
        double comp[Vec::kMaxDim];
        lat->interp(*data, N, x, comp);
        for (int c = 0; c < N; ++c) v[c] = comp[c];
        return v;
    };
    return out;
}

// -- builders -----------------------------------------------------------------

CoefficientField make_constant_field(const Vec& value) {
    CoefficientField f;
    f.kind = FieldKind::closed_form;
    f.dim = value.size();
    f.eval_fn = [value](double, const Vec&) { return value; };
    f.sup_bound = norm(value);
    f.alpha = [](double) { return 0.0; };
    f.alpha_integral = 0.0;
    f.name = "constant";
    f.differentiable = true;
    return f;
}

namespace {

CoefficientField make_plane_jump_2d(double left1, double right1, const std::string& name) {
    CoefficientField f;
    f.kind = FieldKind::piecewise_interface;
    f.dim = 2;
    f.eval_fn = [left1, right1](double, const Vec& x) {
        Vec v(2);
        v[0] = x[0] > 0 ? right1 : (x[0] < 0 ? left1 : 0.5 * (left1 + right1));
        v[1] = 0.0;
        return v;
    };
    f.sup_bound = std::max(std::abs(left1), std::abs(right1));
    f.alpha = [](double) { return 0.0; };
    f.name = name;
    Interface itf;
    itf.signed_distance = [](double, const Vec& x) { return x[0]; };
    itf.normal = [](double, const Vec&) { return Vec{1.0, 0.0}; };
    itf.plus_limit = [right1](double, const Vec&) { return Vec{right1, 0.0}; };
    itf.minus_limit = [left1](double, const Vec&) { return Vec{left1, 0.0}; };
    f.interfaces.push_back(itf);
    return f;
}

} // namespace

CoefficientField make_sgn2d_field() {
    // a(t,x1,x2) = (-sgn x1, 0); convention sgn(0)=0 makes the interface value
    // the midpoint of the two one-sided limits.
    CoefficientField f = make_plane_jump_2d(+1.0, -1.0, "sgn2d");
    f.sup_bound = 1.0;
    return f;
}

CoefficientField make_plus_sgn2d_field() {
    CoefficientField f = make_plane_jump_2d(-1.0, +1.0, "plus_sgn2d");
    f.sup_bound = 1.0;
    return f;
}

CoefficientField make_sgn1d_field(double orientation) {
    CoefficientField f;
    f.kind = FieldKind::piecewise_interface;
    f.dim = 1;
    f.eval_fn = [orientation](double, const Vec& x) {
        Vec v(1);
        v[0] = orientation * sgn(x[0]);
        return v;
    };
    f.sup_bound = 1.0;
    f.alpha = [](double) { return 0.0; };
    f.name = orientation < 0 ? "sgn1d" : "plus_sgn1d";
    Interface itf;
    itf.signed_distance = [](double, const Vec& x) { return x[0]; };
    itf.normal = [](double, const Vec&) { return Vec{1.0}; };
    itf.plus_limit = [orientation](double, const Vec&) { return Vec{orientation}; };
    itf.minus_limit = [orientation](double, const Vec&) { return Vec{-orientation}; };
    f.interfaces.push_back(itf);
    return f;
}

CoefficientField make_linear_field(const std::vector<double>& A, int dim,
                                   const Box& bounding_box) {
    if (static_cast<int>(A.size()) != dim * dim)
        throw std::invalid_argument("make_linear_field: matrix size mismatch");
    CoefficientField f;
    f.kind = FieldKind::closed_form;
    f.dim = dim;
    f.eval_fn = [A, dim](double, const Vec& x) {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) {
            double s = 0;
            for (int j = 0; j < dim; ++j) s += A[i * dim + j] * x[j];
            v[i] = s;
        }
        return v;
    };
    // sup over the bounding box corners; the field is linear so the max of
    // |Ax| over a box is attained at a corner.
    double sup = 0;
    const int corners = 1 << dim;
    for (int m = 0; m < corners; ++m) {
        Vec x(dim);
        for (int i = 0; i < dim; ++i)
            x[i] = ((m >> i) & 1) ? bounding_box.hi[i] : bounding_box.lo[i];
        sup = std::max(sup, norm(f.eval_fn(0, x)));
    }
    f.sup_bound = sup;
    // Exact modulus: top eigenvalue of (A + A^t)/2, clipped at zero.
    CoefficientField probe = f;
    probe.differentiable = true;
    const double lam = sym_grad_max_eig(probe, 0.0, Vec::zero(dim), 1e-4);
    const double a0 = std::max(0.0, lam);
    f.alpha = [a0](double) { return a0; };
    f.name = "linear";
    f.differentiable = true;
    f.domain = bounding_box;
    return f;
}

CoefficientField make_rotation_field(const Box& bounding_box) {
    CoefficientField f;
    f.kind = FieldKind::closed_form;
    f.dim = 2;
    f.eval_fn = [](double, const Vec& x) { return Vec{-x[1], x[0]}; };
    double sup = 0;
    for (int m = 0; m < 4; ++m) {
        Vec x{(m & 1) ? bounding_box.hi[0] : bounding_box.lo[0],
              (m & 2) ? bounding_box.hi[1] : bounding_box.lo[1]};
        sup = std::max(sup, norm(x));
    }
    f.sup_bound = sup;
    f.alpha = [](double) { return 0.0; };
    f.name = "rotation";
    f.differentiable = true;
    f.domain = bounding_box;
    return f;
}

// -- JSON / CSV ---------------------------------------------------------------

namespace {

std::function<double(double)> parse_alpha(const nlohmann::json& j, double* integral,
                                          double horizon) {
    if (j.is_number()) {
        const double a = j.get<double>();
        if (integral) *integral = a * horizon;
        return [a](double) { return a; };
    }
    if (j.is_object() && j.contains("pieces")) {
        // [[t_lo, t_hi, value], ...]
        std::vector<std::array<double, 3>> pieces;
        for (const auto& p : j.at("pieces"))
            pieces.push_back({p.at(0).get<double>(), p.at(1).get<double>(),
                              p.at(2).get<double>()});
        if (integral) {
            *integral = 0;
            for (const auto& p : pieces) *integral += (p[1] - p[0]) * p[2];
        }
        return [pieces](double t) {
            for (const auto& p : pieces)
                if (t >= p[0] && t <= p[1]) return p[2];
            return 0.0;
        };
    }
    throw std::invalid_argument("field json: unsupported alpha spec");
}

} // namespace

CoefficientField load_field_json(const std::string& json_text, const std::string& base_dir) {
    const auto j = nlohmann::json::parse(json_text);
    const std::string kind = j.at("kind").get<std::string>();
    const double horizon = j.value("horizon", 1.0);

    CoefficientField f;
    if (kind == "grid_sampled") {
        std::string path = j.at("grid").get<std::string>();
        if (!path.empty() && path[0] != '/') path = base_dir + "/" + path;
        f = load_grid_field_csv(path);
    } else {
        const auto& e = j.contains("expr") ? j.at("expr") : j.at("pieces");
        const std::string name = e.at("name").get<std::string>();
        if (name == "constant") {
            Vec v(static_cast<int>(e.at("value").size()));
            for (int i = 0; i < v.size(); ++i) v[i] = e.at("value")[i].get<double>();
            f = make_constant_field(v);
        } else if (name == "sgn2d") {
            f = make_sgn2d_field();
        } else if (name == "plus_sgn2d") {
            f = make_plus_sgn2d_field();
        } else if (name == "sgn1d") {
            f = make_sgn1d_field(e.value("orientation", -1.0));
        } else if (name == "linear") {
            const int dim = j.at("dim").get<int>();
            std::vector<double> A;
            for (const auto& v : e.at("matrix")) A.push_back(v.get<double>());
            Box bb;
            for (const auto& ax : e.at("box")) {
                bb.lo.push_back(ax.at(0).get<double>());
                bb.hi.push_back(ax.at(1).get<double>());
            }
            f = make_linear_field(A, dim, bb);
        } else if (name == "rotation") {
            Box bb;
            for (const auto& ax : e.at("box")) {
                bb.lo.push_back(ax.at(0).get<double>());
                bb.hi.push_back(ax.at(1).get<double>());
            }
            f = make_rotation_field(bb);
        } else {
            throw std::invalid_argument("field json: unknown expr name '" + name + "'");
        }
        if (kind == "piecewise_interface" && f.kind != FieldKind::piecewise_interface)
            throw std::invalid_argument("field json: expr is not a piecewise field");
    }
    if (j.contains("sup_bound")) f.sup_bound = j.at("sup_bound").get<double>();
    if (j.contains("alpha")) f.alpha = parse_alpha(j.at("alpha"), &f.alpha_integral, horizon);
    if (j.contains("name")) f.name = j.at("name").get<std::string>();
    return f;
}

CoefficientField load_grid_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open grid field csv: " + path);
    // Header: dim, nx_1..nx_dim, lo_1, hi_1, ..., lo_dim, hi_dim
    std::string header;
    std::getline(in, header);
    std::replace(header.begin(), header.end(), ',', ' ');
    std::istringstream hs(header);
    int dim = 0;
    hs >> dim;
    if (dim < 1 || dim > Vec::kMaxDim)
        throw std::invalid_argument("grid field csv: bad dimension in header");
    Lattice lat;
    lat.nx.resize(dim);
    lat.box.lo.resize(dim);
    lat.box.hi.resize(dim);
    for (int i = 0; i < dim; ++i) hs >> lat.nx[i];
    for (int i = 0; i < dim; ++i) hs >> lat.box.lo[i] >> lat.box.hi[i];
    auto data = std::make_shared<std::vector<double>>();
    data->reserve(lat.num_nodes() * dim);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double v;
        while (ls >> v) data->push_back(v);
    }
    if (data->size() != lat.num_nodes() * dim)
        throw std::invalid_argument("grid field csv: node count mismatch");

    CoefficientField f;
    f.kind = FieldKind::grid_sampled;
    f.dim = dim;
    f.domain = lat.box;
    f.name = "grid_sampled";
    auto latp = std::make_shared<Lattice>(lat);
    f.eval_fn = [data, latp, dim](double, const Vec& x) {
        Vec v(dim);
        double comp[Vec::kMaxDim];
        latp->interp(*data, dim, x, comp);
        for (int c = 0; c < dim; ++c) v[c] = comp[c];
        return v;
    };
    double sup = 0;
    for (std::size_t f2 = 0; f2 < lat.num_nodes(); ++f2) {
        double s = 0;
        for (int c = 0; c < dim; ++c) s += (*data)[f2 * dim + c] * (*data)[f2 * dim + c];
        sup = std::max(sup, s);
    }
    f.sup_bound = std::sqrt(sup);
    f.alpha = [](double) { return 0.0; };
    return f;
}

void save_grid_field_csv(const std::string& path, const CoefficientField& field,
                         const Lattice& lattice, double t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write grid field csv: " + path);
    out << field.dim;
    for (int i = 0; i < lattice.dim(); ++i) out << "," << lattice.nx[i];
    for (int i = 0; i < lattice.dim(); ++i)
        out << "," << lattice.box.lo[i] << "," << lattice.box.hi[i];
    out << "\n";
    char buf[64];
    for (std::size_t f = 0; f < lattice.num_nodes(); ++f) {
        const Vec v = field.eval(t, lattice.node(f));
        for (int c = 0; c < field.dim; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", v[c]);
            out << (c ? "," : "") << buf;
        }
        out << "\n";
    }
}

} // namespace oslt
