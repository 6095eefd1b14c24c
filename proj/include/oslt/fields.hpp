#ifndef OSLT_FIELDS_HPP
#define OSLT_FIELDS_HPP

#include "oslt/grid.hpp"
#include "oslt/vec.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace oslt {

/// Oriented hypersurface of a piecewise field: signed distance rule with the
/// unit normal pointing to the positive side, plus one-sided limit rules.
struct Interface {
    std::function<double(double t, const Vec&)> signed_distance;
    std::function<Vec(double t, const Vec&)> normal;
    std::function<Vec(double t, const Vec&)> plus_limit;  // limit along +normal
    std::function<Vec(double t, const Vec&)> minus_limit; // limit along -normal
};

enum class FieldKind { closed_form, piecewise_interface, grid_sampled };

/// Evaluable velocity coefficient a(t,x) with its claimed sup bound and
/// one-sided Lipschitz modulus alpha(t).
struct CoefficientField {
    FieldKind kind = FieldKind::closed_form;
    int dim = 1;
    std::function<Vec(double t, const Vec&)> eval_fn;
    double sup_bound = 0.0;
    std::function<double(double t)> alpha;  // claimed OSLC modulus
    double alpha_integral = 0.0;            // integral of alpha over [t0, T]
    std::vector<Interface> interfaces;      // piecewise kind only
    std::optional<Box> domain;              // queries outside clamp here
    std::string name = "field";
    bool differentiable = false;  // closed-form fields with smooth eval
    bool time_independent = true; // lets solvers sample eval once

    Vec eval(double t, Vec x) const {
        if (domain) x = domain->clamp(x);
        return eval_fn(t, x);
    }

    /// Integral of the claimed modulus over [a, b] (composite Simpson).
    double alpha_int(double a, double b) const;
};

struct OslcReport {
    std::vector<double> alpha_hat;   // per sampled time
    std::vector<double> times;
    double worst_time = 0.0;
    Vec worst_x, worst_y;
    double worst_ratio = 0.0;
    bool violated = false;
    std::size_t pairs_sampled = 0;
};

/// Pair-sampling plan for the OSLC estimator: stratified random pairs from a
/// fixed seed plus deterministic interface-straddling pairs at dyadic scales.
struct PairSampler {
    Box domain;
    double h = 0.0;          // finest scale; straddling pairs use h, h/2, h/4
    int random_pairs = 256;
    int interface_points = 8;
    std::uint64_t seed = 20240901ull;
};

// -- operations --------------------------------------------------------------

Vec evaluate(const CoefficientField& field, double t, const Vec& x);

/// Spatial convolution with the polynomial bump (35/32)(1-s^2)^3 per axis,
/// computed by fixed 9-point Gauss quadrature per axis. Keeps sup bound and
/// OSLC modulus of the input.
CoefficientField mollify(const CoefficientField& field, double eps);

OslcReport estimate_oslc(const CoefficientField& field, double t,
                         const PairSampler& sampler, double tolerance = 1e-9);
OslcReport estimate_oslc(const CoefficientField& field,
                         const std::vector<double>& times,
                         const PairSampler& sampler, double tolerance = 1e-9);

/// Integral translation inequality over an inner region of a convex box:
/// returns (lhs, rhs) of
///   int_omega |<a(t,x+h)-a(t,x), h>| dx <= 2(alpha|C| + sup diam(C)^{N-1})|h|^2.
std::pair<double, double> translation_bound(const CoefficientField& field, double t,
                                            const Box& convex_box, const Box& inner_region,
                                            const Vec& shift);

struct JumpCheck {
    Vec normal;
    Vec jump;     // a_plus - a_minus
    double lambda = 0.0;
    double colinearity_error = 0.0;
};

/// Checks the compressive jump structure at an interface point: the jump of
/// an admissible coefficient is -lambda * normal with lambda >= 0.
JumpCheck jump_direction_check(const CoefficientField& field, const Vec& interface_point,
                               double t, double on_interface_tol = 1e-9);

/// Samples eval onto a lattice and returns a grid_sampled field (exact at
/// nodes, multilinear between). The solvers use this to avoid re-running the
/// mollification quadrature inside ODE inner loops.
CoefficientField tabulate(const CoefficientField& field, const Lattice& lattice, double t);

// -- built-in fields and JSON loading ----------------------------------------

CoefficientField make_constant_field(const Vec& value);
CoefficientField make_sgn2d_field();       // (-sgn x1, 0)
CoefficientField make_plus_sgn2d_field();  // (+sgn x1, 0), violates every modulus
CoefficientField make_sgn1d_field(double orientation = -1.0);
CoefficientField make_linear_field(const std::vector<double>& A_rowmajor, int dim,
                                   const Box& bounding_box);
CoefficientField make_rotation_field(const Box& bounding_box);

/// Loads a field document: {"kind", "dim", "expr"|"pieces"|{"grid": csv path},
/// "sup_bound", "alpha"}.
CoefficientField load_field_json(const std::string& json_text,
                                 const std::string& base_dir = ".");
CoefficientField load_grid_field_csv(const std::string& path);
void save_grid_field_csv(const std::string& path, const CoefficientField& field,
                         const Lattice& lattice, double t = 0.0);

} // namespace oslt

#endif
