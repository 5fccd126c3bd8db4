#pragma once

#include "kobalt/complex_linalg.hpp"

namespace kobalt {

// One-dimensional hyperbolic geometry in the curvature -1 normalization:
// kappa_D(0,1) = 2 and k_D(0,t) = log((1+t)/(1-t)) = 2 artanh t.
// The half-plane model is the LEFT half-plane H = {Re w < 0}; the Cayley
// transform C(z) = (z-1)/(z+1) maps D onto H and sends 1 to 0.

/// 2*artanh(m) evaluated stably for m close to 1.
double two_artanh(double m);

double poincare_distance_disc(Complex z1, Complex z2);
double poincare_metric_disc(Complex z, Complex v);

double halfplane_distance(Complex w1, Complex w2);
double halfplane_metric(Complex w, Complex u);

Complex cayley(Complex z);
Complex cayley_inverse(Complex w);

/// Unit-speed geodesic ray in D from 0 toward 1: tanh(t/2).
double disc_geodesic_ray(double t);

/// Disc automorphism fixing 1 with prescribed value at 0 (tau(0) = zeta_star,
/// tau(1) = 1). Returns the Möbius map as a callable pair (eval, deriv).
struct DiscAutomorphismFixingOne {
    Complex a;       // tau = sigma_a . rotation, sigma_a(z) = (z+a)/(1+conj(a) z)
    Complex rot;     // unimodular
    Complex eval(Complex z) const;
    Complex deriv(Complex z) const;
    double boundary_deriv_at_one() const;  // tau'(1) > 0
};
DiscAutomorphismFixingOne disc_automorphism_fixing_one(Complex zeta_star);

}  // namespace kobalt
