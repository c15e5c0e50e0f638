#ifndef CTORI_LIFTS_HPP
#define CTORI_LIFTS_HPP

#include <map>

#include "ctori/discs.hpp"

namespace ctori {

// Finite Blaschke product with signed exponents: prod ((z - t_j)/(1 - conj(t_j) z))^{e_j}.
// Unit modulus on |z| = 1; zeros at t_j with e_j = +1, poles at t_j with e_j = -1.
struct Blaschke {
    std::vector<Complex> points;
    std::vector<int> exponents;  // empty means all +1

    Complex operator()(Complex z) const;
};

Blaschke make_blaschke(std::vector<Complex> t_points, std::vector<int> exponents = {});

// Holomorphic square root of f on the closed unit disc, where f has double
// zeros exactly at `double_zeros`:  g = b * exp(log(f / b^2) / 2) with b the
// Blaschke product over the zeros and the log continued radially from the
// principal branch at the center.  Verifies the zero count of f by the
// argument principle before constructing g.
std::function<Complex(Complex)> holomorphic_sqrt(std::function<Complex(Complex)> f,
                                                 std::vector<Complex> double_zeros);

struct Lift {
    DiscMap disc;               // ambient disc (x, y, z), with projection recorded
    std::vector<int> eps;       // the sign assignment, one per intersection point
    HomotopyClass cls;
    double residual_xy = 0.0;       // max |x y - h(u_red)| on the sampling grid
    double residual_boundary = 0.0; // max ||x| - |y|| on the boundary circle
};

// All 2^k holomorphic lifts of a reduced disc through p0 (with pi(p0) = u_red(1)),
// ordered by the sign assignment lexicographically (-1 before +1).
std::vector<Lift> enumerate_lifts(const DiscMap& u_red, const AmbientPoint& p0,
                                  const ConicParams& p, int radial_samples = 64,
                                  int angular_samples = 256);

// Lift over the point of T above u_red(1) with x = principal sqrt of h (so
// Arg x in [0, pi)).
std::vector<Lift> enumerate_lifts(const DiscMap& u_red, const ConicParams& p);

std::map<HomotopyClass, int> lift_class_histogram(const std::vector<Lift>& lifts);

} // namespace ctori

#endif
