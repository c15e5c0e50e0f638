#ifndef CTORI_DISCS_HPP
#define CTORI_DISCS_HPP

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ctori/forms.hpp"

namespace ctori {

enum class Space { Reduced, Ambient };

// A parametrized Lagrangian torus.  `param` maps angles (one per torus
// dimension) to a point of the carrying space; `frame` gives a real basis of
// the tangent space at a point of the torus, used for the Maslov computation.
struct Torus {
    Space space = Space::Reduced;
    int angles = 2;
    ConicParams params;
    std::function<CVec(const std::vector<double>&)> param;
    std::function<std::vector<CVec>(const CVec&)> frame;
};

// The standard product torus T_std = {|z| = |w| = 1} in C^2.
std::shared_ptr<const Torus> torus_T_std(const ConicParams& p);

// The 3-torus T in X lying over a reduced 2-torus: (z,w) on the base,
// x = |h|^{1/2} e^{i phi}, y = h / x.  Throws TooCloseToC when the base
// comes within |h| <= 0.1 of the discriminant curve.
std::shared_ptr<const Torus> build_torus_T(const ConicParams& p,
                                           std::shared_ptr<const Torus> base);

// A holomorphic disc D^2 -> C^2 or X, given analytically.  `df` is the
// complex derivative; when absent it is taken by central differences in the
// disc parameter (step 1e-6).
struct DiscMap {
    Space space = Space::Reduced;
    std::function<CVec(Complex)> f;
    std::function<CVec(Complex)> df;
    std::shared_ptr<const Torus> boundary;
    std::shared_ptr<const DiscMap> projection;  // for ambient discs
    // coefficients of h(u(zeta)) as a polynomial in zeta, when known
    std::optional<std::vector<Complex>> h_poly;
    // the disc is one of the closed-form u_alpha family (radical formula applies)
    std::optional<double> alpha_u;
    CVec marked;  // u(1)
};

CVec disc_eval(const DiscMap& u, Complex zeta);
CVec disc_deriv(const DiscMap& u, Complex zeta);

// The two closed-form families of Maslov-2 discs on T_std.
DiscMap disc_u_alpha(double alpha, const ConicParams& p);
DiscMap disc_v_alpha(double alpha, const ConicParams& p);
// Degree-2 test disc zeta -> (zeta^2, e^{i alpha}); Maslov index 4.
DiscMap disc_double_cover(double alpha, const ConicParams& p);

// Winding number of f along the unit circle by phase unwrapping.  Throws
// BoundaryZero if |f| < min_modulus at a sample, NumericalError if a single
// phase increment exceeds pi/2.
int winding_number(const std::function<Complex(Complex)>& f, int samples = 1024,
                   double min_modulus = 1e-9);

struct HomotopyClass {
    int a = 0;  // intersection with {x = 0} (ambient discs only)
    int b = 0;  // intersection with {z = 0}
    int d = 0;  // intersection with {w = 0}
    friend bool operator==(const HomotopyClass&, const HomotopyClass&) = default;
    friend auto operator<=>(const HomotopyClass& l, const HomotopyClass& r) {
        return std::array{l.a, l.b, l.d} <=> std::array{r.a, r.b, r.d};
    }
};

// Intersection numbers with the coordinate hypersurfaces via the argument
// principle on boundary windings.  Reduced discs report (b, d) with a = 0.
HomotopyClass class_coordinates(const DiscMap& u);

// Interior zeros of h(u(zeta)) for a reduced-space disc.  For the u_alpha
// family the radical formula is used and cross-checked against companion
// matrix roots; the count is always verified against the winding of h(u)
// along the boundary.
std::vector<Complex> intersections_with_C(const DiscMap& u, const ConicParams& p);

// Maslov index as the winding of det^2 of the boundary torus frame in the
// constant trivialization; ambient discs delegate to their projection.
int maslov_index(const DiscMap& u, int samples = 1024);

// Quadrature over the unit disc: radial Gauss-Legendre x uniform angular,
// refined (both directions doubled) until two levels agree to `tol`.
struct QuadratureSpec {
    int radial_nodes = 64;
    int angular_nodes = 256;
    double tol = 1e-8;
    int max_refinements = 5;
};

// Integral of u^* omega over the unit disc.  An unsmoothed Reduced spec is
// replaced by its smoothed counterpart when the disc crosses h = 0.
double disc_area(const PotentialSpec& spec, const DiscMap& u,
                 const QuadratureSpec& quad = {});

// A closed loop with optional analytic derivative; without one the tangent
// is taken by 4th-order periodic finite differences of the samples.
struct Loop {
    std::function<CVec(double)> f;   // t in [0, 2 pi)
    std::function<CVec(double)> df;
};

// Line integral of the Liouville form along the loop (trapezoid rule).
double boundary_liouville(const PotentialSpec& spec, const Loop& loop,
                          int samples = 1024);

Loop boundary_loop(const DiscMap& u);

// Nodes and weights of n-point Gauss-Legendre quadrature on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace ctori

#endif
