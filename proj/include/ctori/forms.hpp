#ifndef CTORI_FORMS_HPP
#define CTORI_FORMS_HPP

#include <Eigen/Dense>

#include "ctori/conic.hpp"
#include "ctori/errors.hpp"

namespace ctori {

using CVec = Eigen::VectorXcd;

// Convention used throughout: omega(u, v) = sum_j Im(conj(u_j) v_j) for the
// flat form on coordinates, theta(xi) = -dPhi(i xi), so that d theta = omega
// and omega(v, iv) = |v|^2 > 0.  Tests pin both identities.

enum class Variant {
    StandardC2,        // 1/4|z|^2 + 1/4|w|^2 on C^2
    AmbientX,          // Phi_1 + 1/4|w|^2 on X ~ C^3, w derived from (x,y,z)
    StandardC3Scaled,  // Phi_1 = k/4|x|^2 + k/4|y|^2 + 1/4|z|^2
    Reduced,           // 1/4|z|^2 + 1/4|w|^2 + k/2 |h|   (singular on h=0)
    ReducedSmoothed,   // |h| replaced by rho(|h|)
};

// Quintic smoothing of s -> s on [0, eps]: rho(s) = s for s >= eps,
// rho' (0) = rho'''(0) = 0, rho''(0) = 1/(2 eps), convex on [0, eps].
struct Smoothing {
    double eps = 0.05;

    double a0() const { return 21.0 * eps / 40.0; }
    double a2() const { return 1.0 / (4.0 * eps); }
    double a4() const { return 5.0 / (8.0 * eps * eps * eps); }
    double a5() const { return -2.0 / (5.0 * eps * eps * eps * eps); }

    double value(double s) const {
        if (s >= eps) return s;
        double s2 = s * s;
        return a0() + a2() * s2 + a4() * s2 * s2 + a5() * s2 * s2 * s;
    }
    double d1(double s) const {
        if (s >= eps) return 1.0;
        double s2 = s * s;
        return 2.0 * a2() * s + 4.0 * a4() * s2 * s + 5.0 * a5() * s2 * s2;
    }
    double d2(double s) const {
        if (s >= eps) return 0.0;
        double s2 = s * s;
        return 2.0 * a2() + 12.0 * a4() * s2 + 20.0 * a5() * s2 * s;
    }
    // d1(s)/s, finite at s = 0.
    double d1_over_s(double s) const {
        if (s >= eps) return 1.0 / s;
        if (s < 1e-14) return 2.0 * a2();
        return d1(s) / s;
    }
};

struct PotentialSpec {
    Variant variant = Variant::StandardC2;
    ConicParams params;
    Smoothing smoothing;  // only consulted for ReducedSmoothed

    int dim() const {
        return (variant == Variant::AmbientX || variant == Variant::StandardC3Scaled) ? 3 : 2;
    }
};

// Singular-locus guard for the unsmoothed reduced form.
inline constexpr double kSingularTol = 1e-8;

double eval_potential(const PotentialSpec& spec, const CVec& pt);

// Real differential dPhi(xi) at pt; xi a real tangent vector written in
// complex coordinates.
double d_potential(const PotentialSpec& spec, const CVec& pt, const CVec& xi);

// Liouville form theta = d^c Phi, evaluated as -dPhi(i xi).
double eval_liouville(const PotentialSpec& spec, const CVec& pt, const CVec& xi);

// Kahler form omega = dd^c Phi on (v1, v2), closed form per variant.
double eval_omega(const PotentialSpec& spec, const CVec& pt, const CVec& v1,
                  const CVec& v2);

// Independent route: dd^c Phi by central finite differences of the Liouville
// form, step relative to the coordinate magnitude.  Used by the verification
// suites to cross-check the closed forms.
double eval_omega_fd(const PotentialSpec& spec, const CVec& pt, const CVec& v1,
                     const CVec& v2, double rel_step = 1e-5);

} // namespace ctori

#endif
