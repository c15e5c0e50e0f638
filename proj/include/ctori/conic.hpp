#ifndef CTORI_CONIC_HPP
#define CTORI_CONIC_HPP

#include <complex>
#include <string>

#include "ctori/errors.hpp"

namespace ctori {

using Complex = std::complex<double>;

// Module-wide absolute tolerance for algebraic identities.
inline constexpr double kAlgebraicTol = 1e-10;

// Parameters of the conic bundle  X = { xy = h(z,w) },  h(z,w) = c z^n + w/c - 1.
struct ConicParams {
    int n = 1;          // degree of z in h
    double c = 10.0;    // coefficient, c > 1
    double kappa = 0.05; // weight of the x,y part of the Kahler form

    void validate() const {
        if (n < 0) throw NumericalError("ConicParams: n must be >= 0");
        if (!(c > 1.0)) throw NumericalError("ConicParams: c must be > 1");
        if (!(kappa > 0.0)) throw NumericalError("ConicParams: kappa must be > 0");
    }

    std::string to_json() const;
    static ConicParams from_json(const std::string& text);
};

// A point of X in the coordinates (x, y, z); w is always derived from them,
// so the point sits on the variety identically.
struct AmbientPoint {
    Complex x, y, z;
};

// A point of the reduced space X_red = C^2 in coordinates (z, w).
struct ReducedPoint {
    Complex z, w;
};

// z^k by repeated multiplication; std::pow(z, 0) is NaN at z = 0.
inline Complex cpow_int(Complex z, int k) {
    Complex r = 1.0;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

inline Complex eval_h(Complex z, Complex w, const ConicParams& p) {
    return p.c * cpow_int(z, p.n) + w / p.c - 1.0;
}

// dh = c n z^{n-1} dz + dw / c, as a complex-linear functional.
inline Complex dh(Complex z, Complex xi_z, Complex xi_w, const ConicParams& p) {
    Complex dz_term = (p.n == 0) ? Complex(0.0)
                                 : p.c * double(p.n) * cpow_int(z, p.n - 1) * xi_z;
    return dz_term + xi_w / p.c;
}

// w as a function of (x, y, z) on X: w = c(xy + 1) - c^2 z^n.
inline Complex derived_w(Complex x, Complex y, Complex z, const ConicParams& p) {
    return p.c * (x * y + 1.0) - p.c * p.c * cpow_int(z, p.n);
}

// Differential of derived_w, complex-linear in (xi_x, xi_y, xi_z).
inline Complex d_derived_w(const AmbientPoint& pt, Complex xi_x, Complex xi_y,
                           Complex xi_z, const ConicParams& p) {
    Complex dz_term = (p.n == 0) ? Complex(0.0)
                                 : p.c * p.c * double(p.n) * cpow_int(pt.z, p.n - 1) * xi_z;
    return p.c * (pt.x * xi_y + pt.y * xi_x) - dz_term;
}

inline Complex derived_w(const AmbientPoint& pt, const ConicParams& p) {
    return derived_w(pt.x, pt.y, pt.z, p);
}

inline double moment_map(Complex x, Complex y, const ConicParams& p) {
    return 0.5 * p.kappa * (std::norm(x) - std::norm(y));
}

inline double moment_map(const AmbientPoint& pt, const ConicParams& p) {
    return moment_map(pt.x, pt.y, p);
}

// Hamiltonian S^1-action: (x, y, z, w) -> (e^{i theta} x, e^{-i theta} y, z, w).
inline AmbientPoint circle_action(double theta, const AmbientPoint& pt) {
    Complex u = std::polar(1.0, theta);
    return AmbientPoint{u * pt.x, pt.y / u, pt.z};
}

} // namespace ctori

#endif
