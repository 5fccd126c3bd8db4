#include "kobalt/hyperbolic.hpp"

#include <stdexcept>

namespace kobalt {

namespace {

void require_in_disc(Complex z, const char* who) {
    if (!finite(z)) throw std::domain_error(std::string(who) + ": non-finite argument");
    if (std::abs(z) >= 1.0) throw std::domain_error(std::string(who) + ": point outside open disc");
}

void require_in_halfplane(Complex w, const char* who) {
    if (!finite(w)) throw std::domain_error(std::string(who) + ": non-finite argument");
    if (w.real() >= 0.0) throw std::domain_error(std::string(who) + ": point outside left half-plane");
}

}  // namespace

double two_artanh(double m) {
    if (m < 0.0 || m >= 1.0) throw std::domain_error("two_artanh: argument not in [0,1)");
    // log((1+m)/(1-m)) without cancellation near m = 1.
    return std::log1p(2.0 * m / (1.0 - m));
}

double poincare_distance_disc(Complex z1, Complex z2) {
    require_in_disc(z1, "poincare_distance_disc");
    require_in_disc(z2, "poincare_distance_disc");
    Complex num = z1 - z2;
    Complex den = 1.0 - z1 * std::conj(z2);
    double m = std::abs(num) / std::abs(den);
    if (m >= 1.0) m = std::nextafter(1.0, 0.0);  // guards roundoff at extreme pairs
    return two_artanh(m);
}

double poincare_metric_disc(Complex z, Complex v) {
    require_in_disc(z, "poincare_metric_disc");
    if (!finite(v)) throw std::domain_error("poincare_metric_disc: non-finite vector");
    return 2.0 * std::abs(v) / (1.0 - std::norm(z));
}

double halfplane_distance(Complex w1, Complex w2) {
    require_in_halfplane(w1, "halfplane_distance");
    require_in_halfplane(w2, "halfplane_distance");
    double m = std::abs(w1 - w2) / std::abs(w1 + std::conj(w2));
    if (m >= 1.0) m = std::nextafter(1.0, 0.0);
    return two_artanh(m);
}

double halfplane_metric(Complex w, Complex u) {
    require_in_halfplane(w, "halfplane_metric");
    if (!finite(u)) throw std::domain_error("halfplane_metric: non-finite vector");
    return std::abs(u) / std::abs(w.real());
}

Complex cayley(Complex z) {
    if (!finite(z)) throw std::domain_error("cayley: non-finite argument");
    if (std::abs(z + 1.0) < 1e-300) throw std::domain_error("cayley: pole at -1");
    return (z - 1.0) / (z + 1.0);
}

Complex cayley_inverse(Complex w) {
    if (!finite(w)) throw std::domain_error("cayley_inverse: non-finite argument");
    if (std::abs(w - 1.0) < 1e-300) throw std::domain_error("cayley_inverse: pole at 1");
    return (1.0 + w) / (1.0 - w);
}

double disc_geodesic_ray(double t) {
    if (t < 0.0) throw std::domain_error("disc_geodesic_ray: negative parameter");
    return std::tanh(t / 2.0);
}

Complex DiscAutomorphismFixingOne::eval(Complex z) const {
    Complex y = rot * z;
    return (y + a) / (1.0 + std::conj(a) * y);
}

Complex DiscAutomorphismFixingOne::deriv(Complex z) const {
    Complex y = rot * z;
    Complex den = 1.0 + std::conj(a) * y;
    return rot * (1.0 - std::norm(a)) / (den * den);
}

double DiscAutomorphismFixingOne::boundary_deriv_at_one() const {
    return std::norm(1.0 - a) / (1.0 - std::norm(a));
}

DiscAutomorphismFixingOne disc_automorphism_fixing_one(Complex zeta_star) {
    require_in_disc(zeta_star, "disc_automorphism_fixing_one");
    DiscAutomorphismFixingOne tau;
    tau.a = zeta_star;
    tau.rot = std::abs(1.0 - zeta_star) < 1e-300
                  ? Complex(1.0, 0.0)
                  : (1.0 - zeta_star) / (1.0 - std::conj(zeta_star));
    return tau;
}

}  // namespace kobalt
