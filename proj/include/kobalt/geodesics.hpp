#pragma once

#include <memory>

#include "kobalt/kobayashi.hpp"
#include "kobalt/multitype.hpp"

namespace kobalt {

/// Holomorphic map D -> C^d with analytic derivative access.
class DiscMap {
public:
    virtual ~DiscMap() = default;
    virtual CVec eval(Complex zeta) const = 0;
    virtual CVec deriv(Complex zeta) const = 0;
    virtual int dim() const = 0;
    const std::string& tag() const { return tag_; }

protected:
    std::string tag_;
};

/// Complex geodesic of the egg domain E_m with endpoint (1,0):
/// phi_a(zeta) = ((zeta+|a|^m)/(1+|a|^m), a((1-zeta)/(1+|a|^m))^{2/m}),
/// optionally precomposed with the disc automorphism fixing 1 that sends
/// 0 to zeta_star.
class EggGeodesic final : public DiscMap {
public:
    EggGeodesic(int m, Complex a);
    EggGeodesic(int m, Complex a, Complex zeta_star);
    CVec eval(Complex zeta) const override;
    CVec deriv(Complex zeta) const override;
    int dim() const override { return 2; }
    int exponent() const { return m_; }
    Complex parameter() const { return a_; }
    /// <phi'(1), n_xi> along the radius (closed form, positive).
    double normal_derivative_at_one() const;

private:
    int m_;
    Complex a_;
    double c_;  // |a|^m
    bool reparam_ = false;
    DiscAutomorphismFixingOne tau_{};
};

/// Möbius geodesic of the ball through an interior point with a prescribed
/// boundary endpoint (phi(0) = z, radial endpoint xi).
class BallGeodesic final : public DiscMap {
public:
    BallGeodesic(const CVec& z, const CVec& xi);
    CVec eval(Complex zeta) const override;
    CVec deriv(Complex zeta) const override;
    int dim() const override { return d_; }

private:
    int d_;
    CVec z_;
    CVec xi_;
};

/// Geodesic of the disc through z with boundary endpoint xi (|xi| = 1).
class DiscGeodesic final : public DiscMap {
public:
    DiscGeodesic(Complex z, Complex xi);
    CVec eval(Complex zeta) const override;
    CVec deriv(Complex zeta) const override;
    int dim() const override { return 1; }

private:
    Complex z_, xi_;
};

/// Radial limit of <phi'(t), n_xi> as t -> 1, by geometric sampling and
/// extrapolation. Throws EstimationError when the tail does not settle.
double normal_derivative_limit(const DiscMap& phi, const BoundaryPoint& xi,
                               double* tail_variation = nullptr);

/// Half-plane version: psi = phi o C^{-1} has psi'_N(0) = 2 phi'_N(1).
double normal_derivative_limit_halfplane(const DiscMap& phi, const BoundaryPoint& xi,
                                         double* tail_variation = nullptr);

/// Pluricomplex Poisson kernel of E_m at xi = (1,0):
/// Omega(z) = -(1-|z0|^2-|z1|^m)/|1-z0|^2.
double poisson_kernel_egg(int m, const CVec& z);

/// Pluricomplex Poisson kernel Omega_xi(z) = -1/phi'_N(1) along a complex
/// geodesic through z with endpoint xi. Closed geodesics for disc/ball;
/// numeric solve over the phi_a family for eggs (cross-checked against the
/// closed form).
double poisson_kernel(const Domain& D, const BoundaryPoint& xi, const CVec& z);

bool has_poisson_oracle(const Domain& D, const BoundaryPoint& xi);
/// Closed-form kernel on disc/half-plane/ball/egg-axis (no geodesic solve).
double poisson_kernel_closed(const Domain& D, const BoundaryPoint& xi, const CVec& z);
/// h_{xi,p}(w) = log|Omega_xi(p)| - log|Omega_xi(w)| where the kernel has a
/// closed form.
double horofunction_oracle(const Domain& D, const BoundaryPoint& xi, const CVec& p,
                           const CVec& w);

struct HorofunctionStats {
    double tail_gap = 0.0;         // last increment of the limit sequence
    double certified_error = 0.0;  // interval half-width at the stopping time
    int steps = 0;
};

/// Limit of k_D(w, gamma(t)) - k_D(gamma(t), p) along the inner normal
/// segment gamma(t) = xi - (1-t) n_xi, t_k = 1 - 2^{-k}. Exact distances on
/// oracle domains, geodesic-assisted certified intervals on eggs at (1,0),
/// interval midpoints otherwise.
double horofunction(const Domain& D, const BoundaryPoint& xi, const CVec& p, const CVec& w,
                    HorofunctionStats* stats = nullptr);

enum class RegionStatus { Inside, Outside, Indeterminate };

RegionStatus in_horosphere(const Domain& D, const BoundaryPoint& xi, const CVec& p, double R,
                           const CVec& z);
RegionStatus in_kregion(const Domain& D, const BoundaryPoint& xi, const CVec& p, double M,
                        const CVec& z);
RegionStatus in_geodesic_region(const Domain& D, const DiscMap& gamma, double R, const CVec& z);

struct EggGeodesicSolve {
    std::shared_ptr<EggGeodesic> geodesic;
    Complex a;
    Complex zeta_star;
    double residual;
    int restarts_used;
};

/// Geodesic through z in E_m with endpoint (1,0): damped Newton over
/// (a, zeta_star) with quasi-random restarts. residual <= 1e-10 on success.
EggGeodesicSolve solve_egg_geodesic_through(int m, const CVec& z, int restarts = 16,
                                            std::uint64_t seed = 42);

/// Certified interval for k_{E_m}(w, (t,0)) through the geodesic psi of the
/// solve: k_D(0,s) with sigma_psi(s) = (t,0), plus a segment-chain error term.
Interval egg_distance_to_axis_point(const Domain& egg, const EggGeodesicSolve& sol, double t);

}  // namespace kobalt
