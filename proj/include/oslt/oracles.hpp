#ifndef OSLT_ORACLES_HPP
#define OSLT_ORACLES_HPP

#include "oslt/vec.hpp"

#include <functional>
#include <string>
#include <vector>

namespace oslt {

/// Built-in two-argument data shapes used by the closed-form solution
/// families and by scenario configs. Expression-free on purpose: shapes are
/// selected by name, never parsed.
struct Shape {
    enum class Kind { zero, one, affine, bump, sine, indicator };
    Kind kind = Kind::zero;
    // affine: c0 + c[0]*u + c[1]*v
    double c0 = 0.0;
    std::vector<double> c;
    // bump: amp * prod_i (1 - ((x_i - center_i)/radius_i)^2)^3_+
    // indicator: amp on [lo,hi] per axis, boundary samples get half weight
    double amp = 1.0;
    std::vector<double> center, radius, lo, hi;
    // sine: amp * sin(k . x + phase)
    std::vector<double> k;
    double phase = 0.0;

    double operator()(double u) const { return eval({u}); }
    double operator()(double u, double v) const { return eval({u, v}); }
    double eval(const std::vector<double>& x) const;
    /// Analytic partial derivative (bump/affine/sine kinds).
    double deriv(const std::vector<double>& x, int axis) const;
    bool is_zero() const { return kind == Kind::zero || amp == 0.0; }

    static Shape zero() { return {}; }
    static Shape one();
    static Shape affine(double c0, std::vector<double> c);
    static Shape bump(std::vector<double> center, std::vector<double> radius, double amp = 1.0);
    static Shape sine(std::vector<double> k, double amp = 1.0, double phase = 0.0);
    static Shape indicator(std::vector<double> lo, std::vector<double> hi, double amp = 1.0);
};

/// Data for the two-dimensional sign-coefficient example: final time, the
/// flow-family parameter, and the data shapes of the general solutions.
/// phi and h drive the nonconservative family (h(0,.) must vanish), psi and
/// g the conservative one.
struct SgnExampleSpec {
    double T = 1.0;
    double lambda = 0.0;
    Shape phi, h, psi, g;
};

/// X_lambda(s,t,x) = ((|x1|-(s-t))_+ sgn x1, x2 + lambda (s-t-|x1|)_+).
Vec sgn_flow(const SgnExampleSpec& spec, double s, double t, const Vec& x);

/// J(X^T)(t,x) = 1 when |x1| >= T-t, else 0. Independent of lambda.
double sgn_jacobian(double t, const Vec& x, double T);

struct SgnValue {
    double value = 0.0;
    bool exceptional_member = false; // nonconservative: member of the
                                     // vanishing-at-final-time family
    bool reversible = false;         // conservative: g == 0
};

/// p(t,x) = phi((|x1|-(T-t))_+ sgn x1, x2) + h((T-t-|x1|)_+, x2).
SgnValue sgn_general_nonconservative(const SgnExampleSpec& spec, double t, const Vec& x);

/// pi(t,x) = 1_{|x1|>=T-t} psi((|x1|-(T-t))_+ sgn x1, x2)
///           + 1_{|x1|<T-t} g((T-t-|x1|)_+, x2) sgn x1.
SgnValue sgn_general_conservative(const SgnExampleSpec& spec, double t, const Vec& x);

/// Membership in the open set where solutions vanishing at the final time can
/// live: |x1| < T-t, 0 < t < T.
bool sgn_exceptional_set(double t, const Vec& x, double T);

struct LinearOracle {
    Vec flow_point;
    double jacobian = 1.0;
    double oslc_modulus = 0.0;
};

/// Classical characteristics of a = A x: flow e^{(s-t)A} x by scaling and
/// squaring, jacobian e^{(s-t) tr A}, modulus = top eigenvalue of (A+A^t)/2.
LinearOracle linear_field_oracle(const std::vector<double>& A_rowmajor, int dim,
                                 double s, double t, const Vec& x);

/// Dense matrix exponential (scaling and squaring + Taylor), row-major.
std::vector<double> matrix_exponential(const std::vector<double>& A_rowmajor, int dim);

Shape load_shape_json(const std::string& json_text);

} // namespace oslt

#endif
