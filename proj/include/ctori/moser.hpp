#ifndef CTORI_MOSER_HPP
#define CTORI_MOSER_HPP

#include <random>
#include <vector>

#include "ctori/discs.hpp"

namespace ctori {

// The two Moser-trick applications: the reduced-space isotopy deforming the
// flat form to the reduced Kahler form, and the straightening of the ambient
// form to a multiple of the scaled standard form on C^3.
enum class FlowKind { ReducedIsotopy, Straightening };

struct FlowSpec {
    FlowKind kind = FlowKind::ReducedIsotopy;
    ConicParams params;
    double straightening_C = 0.0;  // the multiple C for the straightening flow
    double domain_radius = 50.0;
    double singular_h_min = 0.05;  // reduced flow aborts below this |h|
    int steps = 64;

    int dim() const { return kind == FlowKind::ReducedIsotopy ? 2 : 3; }

    // Moser potential phi and its differential.
    double phi(const CVec& pt) const;
    double dphi(const CVec& pt, const CVec& xi) const;
    // interpolated form omega_t = omega_0 + t dd^c phi
    double omega_t(double t, const CVec& pt, const CVec& v1, const CVec& v2) const;
    // theta_t = theta_0 + t d^c phi
    double theta_t(double t, const CVec& pt, const CVec& xi) const;
    double omega_0(const CVec& pt, const CVec& v1, const CVec& v2) const;
    double theta_0(const CVec& pt, const CVec& xi) const;
};

// xi_t = -grad_{g_t} phi, from the real Gram matrix of g_t = omega_t(. , J .).
CVec moser_vector_field(const FlowSpec& spec, double t, const CVec& pt);

struct FlowSample {
    double t;
    CVec pt;
    double phi;
};

// RK4 integration of dp/dt = xi_t(p).  Aborts (throws) on domain exit or, for
// the reduced flow, when |h| drops below spec.singular_h_min.
std::vector<FlowSample> integrate_flow(const FlowSpec& spec, const CVec& p0, double t_end);

CVec flow_endpoint(const FlowSpec& spec, const CVec& p0, double t_end);

struct PullbackReport {
    double max_residual = 0.0;
    int samples = 0;
};

// Transports random tangent pairs by the finite-difference Jacobian of the
// time-t_end flow map and reports max |omega_t(Dpsi v1, Dpsi v2) - omega_0(v1, v2)|,
// normalized by |v1||v2|.
PullbackReport verify_pullback(const FlowSpec& spec, const CVec& p0, double t_end,
                               int samples, std::uint64_t seed = 1);

struct BarrierConstants {
    double R = 0.0;
    double K = 0.0;  // sampled sup of (1/4)|w|^2 / Phi_1 on the annulus
    double C = 0.0;  // 2K + 1
    double M = 0.0;  // (5/2) K R^2
};

// Sampled barrier constants for phi = C Phi_1 - Phi_X on the Phi_1-metric
// annulus B(0,2R) \ B(0,R), certified by re-sampling at 4x density.
BarrierConstants barrier_constants(const ConicParams& p, double R, int samples,
                                   std::uint64_t seed = 1);

// Halve kappa from 0.1 until the reduced flow succeeds from a grid of T_std
// points with pullback residual below `tol`.
double calibrate_kappa(ConicParams p, double tol = 1e-5, int grid = 8);

// The flowed torus T_red = psi_kappa(T_std), stored on a grid with bicubic
// (Catmull-Rom) interpolation in the two angles.
std::shared_ptr<const Torus> flowed_torus(const ConicParams& p, int grid = 64,
                                          int steps = 64);

// Area of the transported disc: the boundary loop of `u` is flowed by the
// reduced isotopy and the reduced Liouville form is integrated along the
// image.  By exactness of the isotopy this recovers the flat-form area.
double flowed_boundary_area(const ConicParams& p, const DiscMap& u,
                            int loop_samples = 512, int steps = 64);

} // namespace ctori

#endif
