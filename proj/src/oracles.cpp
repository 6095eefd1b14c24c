#include "oslt/oracles.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace oslt {

double Shape::eval(const std::vector<double>& x) const {
    switch (kind) {
        case Kind::zero:
            return 0.0;
        case Kind::one:
            return amp;
        case Kind::affine: {
            double s = c0;
            for (std::size_t i = 0; i < c.size() && i < x.size(); ++i) s += c[i] * x[i];
            return s;
        }
        case Kind::bump: {
            double p = amp;
            for (std::size_t i = 0; i < center.size() && i < x.size(); ++i) {
                const double s = (x[i] - center[i]) / radius[i];
                const double u = 1 - s * s;
                if (u <= 0) return 0.0;
                p *= u * u * u;
            }
            return p;
        }
        case Kind::sine: {
            double ph = phase;
            for (std::size_t i = 0; i < k.size() && i < x.size(); ++i) ph += k[i] * x[i];
            return amp * std::sin(ph);
        }
        case Kind::indicator: {
            double w = amp;
            for (std::size_t i = 0; i < lo.size() && i < x.size(); ++i) {
                if (x[i] < lo[i] || x[i] > hi[i]) return 0.0;
                if (x[i] == lo[i] || x[i] == hi[i]) w *= 0.5; // boundary convention
            }
            return w;
        }
    }
    return 0.0;
}

double Shape::deriv(const std::vector<double>& x, int axis) const {
    switch (kind) {
        case Kind::zero:
        case Kind::one:
        case Kind::indicator:
            return 0.0;
        case Kind::affine:
            return axis < static_cast<int>(c.size()) ? c[axis] : 0.0;
        case Kind::bump: {
            double p = amp;
            for (std::size_t i = 0; i < center.size() && i < x.size(); ++i) {
                const double s = (x[i] - center[i]) / radius[i];
                const double u = 1 - s * s;
                if (u <= 0) return 0.0;
                if (static_cast<int>(i) == axis)
                    p *= -6.0 * s * u * u / radius[i];
                else
                    p *= u * u * u;
            }
            return p;
        }
        case Kind::sine: {
            double ph = phase;
            for (std::size_t i = 0; i < k.size() && i < x.size(); ++i) ph += k[i] * x[i];
            return axis < static_cast<int>(k.size()) ? amp * k[axis] * std::cos(ph) : 0.0;
        }
    }
    return 0.0;
}

Shape Shape::one() {
    Shape s;
    s.kind = Kind::one;
    return s;
}
Shape Shape::affine(double c0, std::vector<double> c) {
    Shape s;
    s.kind = Kind::affine;
    s.c0 = c0;
    s.c = std::move(c);
    return s;
}
Shape Shape::bump(std::vector<double> center, std::vector<double> radius, double amp) {
    Shape s;
    s.kind = Kind::bump;
    s.center = std::move(center);
    s.radius = std::move(radius);
    s.amp = amp;
    return s;
}
Shape Shape::sine(std::vector<double> k, double amp, double phase) {
    Shape s;
    s.kind = Kind::sine;
    s.k = std::move(k);
    s.amp = amp;
    s.phase = phase;
    return s;
}
Shape Shape::indicator(std::vector<double> lo, std::vector<double> hi, double amp) {
    Shape s;
    s.kind = Kind::indicator;
    s.lo = std::move(lo);
    s.hi = std::move(hi);
    s.amp = amp;
    return s;
}

Vec sgn_flow(const SgnExampleSpec& spec, double s, double t, const Vec& x) {
    if (t > s) throw std::invalid_argument("sgn_flow: requires t <= s");
    Vec y(2);
    y[0] = pos_part(std::abs(x[0]) - (s - t)) * sgn(x[0]);
    y[1] = x[1] + spec.lambda * pos_part(s - t - std::abs(x[0]));
    return y;
}

double sgn_jacobian(double t, const Vec& x, double T) {
    return std::abs(x[0]) >= T - t ? 1.0 : 0.0;
}

SgnValue sgn_general_nonconservative(const SgnExampleSpec& spec, double t, const Vec& x) {
    SgnValue out;
    const double tau = spec.T - t;
    out.value = spec.phi(pos_part(std::abs(x[0]) - tau) * sgn(x[0]), x[1]) +
                spec.h(pos_part(tau - std::abs(x[0])), x[1]);
    out.exceptional_member = spec.phi.is_zero();
    return out;
}

SgnValue sgn_general_conservative(const SgnExampleSpec& spec, double t, const Vec& x) {
    SgnValue out;
    const double tau = spec.T - t;
    if (std::abs(x[0]) >= tau)
        out.value = spec.psi(pos_part(std::abs(x[0]) - tau) * sgn(x[0]), x[1]);
    else
        out.value = spec.g(pos_part(tau - std::abs(x[0])), x[1]) * sgn(x[0]);
    out.reversible = spec.g.is_zero();
    return out;
}

bool sgn_exceptional_set(double t, const Vec& x, double T) {
    if (!(t > 0 && t < T))
        throw std::invalid_argument("sgn_exceptional_set: requires 0 < t < T");
    return std::abs(x[0]) < T - t;
}

std::vector<double> matrix_exponential(const std::vector<double>& A, int dim) {
    const std::size_t n2 = static_cast<std::size_t>(dim) * dim;
    if (A.size() != n2) throw std::invalid_argument("matrix_exponential: size mismatch");
    double nrm = 0.0;
    for (int i = 0; i < dim; ++i) {
        double r = 0;
        for (int j = 0; j < dim; ++j) r += std::abs(A[i * dim + j]);
        nrm = std::max(nrm, r);
    }
    int squarings = 0;
    double scale = 1.0;
    while (nrm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    std::vector<double> S(n2);
    for (std::size_t i = 0; i < n2; ++i) S[i] = A[i] * scale;

    auto matmul = [dim](const std::vector<double>& X, const std::vector<double>& Y) {
        std::vector<double> Z(static_cast<std::size_t>(dim) * dim, 0.0);
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k) {
                const double xik = X[i * dim + k];
                for (int j = 0; j < dim; ++j) Z[i * dim + j] += xik * Y[k * dim + j];
            }
        return Z;
    };

    // Taylor series of exp(S); terms decay fast since |S| <= 1/2.
    std::vector<double> E(n2, 0.0), term(n2, 0.0);
    for (int i = 0; i < dim; ++i) E[i * dim + i] = term[i * dim + i] = 1.0;
    for (int k = 1; k <= 24; ++k) {
        term = matmul(term, S);
        for (auto& v : term) v /= k;
        for (std::size_t i = 0; i < n2; ++i) E[i] += term[i];
    }
    for (int s = 0; s < squarings; ++s) E = matmul(E, E);
    return E;
}

LinearOracle linear_field_oracle(const std::vector<double>& A, int dim, double s, double t,
                                 const Vec& x) {
    LinearOracle out;
    std::vector<double> At(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) At[i] = A[i] * (s - t);
    const auto E = matrix_exponential(At, dim);
    out.flow_point = Vec(dim);
    for (int i = 0; i < dim; ++i) {
        double v = 0;
        for (int j = 0; j < dim; ++j) v += E[i * dim + j] * x[j];
        out.flow_point[i] = v;
    }
    double tr = 0;
    for (int i = 0; i < dim; ++i) tr += A[i * dim + i];
    out.jacobian = std::exp((s - t) * tr);

    // Top eigenvalue of (A+A^t)/2 by shifted power iteration.
    std::vector<double> S(A.size());
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            S[i * dim + j] = 0.5 * (A[i * dim + j] + A[j * dim + i]);
    double shift = 0;
    for (int i = 0; i < dim; ++i) {
        double r = 0;
        for (int j = 0; j < dim; ++j) r += std::abs(S[i * dim + j]);
        shift = std::max(shift, r);
    }
    if (shift == 0) {
        out.oslc_modulus = 0.0;
        return out;
    }
    std::vector<double> v(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    double lam = 0;
    for (int it = 0; it < 500; ++it) {
        std::vector<double> w(dim, 0.0);
        for (int i = 0; i < dim; ++i) {
            double acc = shift * v[i];
            for (int j = 0; j < dim; ++j) acc += S[i * dim + j] * v[j];
            w[i] = acc;
        }
        double nw = 0;
        for (double c : w) nw += c * c;
        nw = std::sqrt(nw);
        if (nw == 0) {
            lam = 0;
            break;
        }
        for (auto& c : w) c /= nw;
        lam = nw;
        v = w;
    }
    out.oslc_modulus = lam - shift;
    return out;
}

Shape load_shape_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    const std::string kind = j.at("shape").get<std::string>();
    auto vec = [&j](const char* key) {
        std::vector<double> v;
        if (j.contains(key))
            for (const auto& e : j.at(key)) v.push_back(e.get<double>());
        return v;
    };
    if (kind == "zero") return Shape::zero();
    if (kind == "one") {
        Shape s = Shape::one();
        s.amp = j.value("amp", 1.0);
        return s;
    }
    if (kind == "affine") return Shape::affine(j.value("c0", 0.0), vec("c"));
    if (kind == "bump") return Shape::bump(vec("center"), vec("radius"), j.value("amp", 1.0));
    if (kind == "sine")
        return Shape::sine(vec("k"), j.value("amp", 1.0), j.value("phase", 0.0));
    if (kind == "indicator")
        return Shape::indicator(vec("lo"), vec("hi"), j.value("amp", 1.0));
    throw std::invalid_argument("unknown shape kind: " + kind);
}

} // namespace oslt
