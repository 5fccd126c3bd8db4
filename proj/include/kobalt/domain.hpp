#pragma once

#include <memory>
#include <optional>
#include <string>

#include "kobalt/complex_linalg.hpp"
#include "kobalt/realpoly.hpp"

#include <nlohmann/json_fwd.hpp>

namespace kobalt {

enum class DomainKind { Disc, HalfPlane, Ball, Egg, Tube, Polynomial };

struct BoundaryPoint {
    CVec xi;
    CVec normal;  // outer unit normal n_xi
};

/// C-affine functional ell with Re(ell) < 0 on the domain; the linear part is
/// dual to the outer normal at the contact point: ell(z) = <z - xi, n>.
class HalfSpaceFunctional {
public:
    HalfSpaceFunctional(CVec coeffs, Complex constant)
        : coeffs_(std::move(coeffs)), constant_(constant) {}

    Complex operator()(const CVec& z) const;
    Complex linear(const CVec& v) const;
    const CVec& coeffs() const { return coeffs_; }
    Complex constant() const { return constant_; }

private:
    CVec coeffs_;
    Complex constant_;
};

/// A C-proper convex domain from the catalog (or a user polynomial domain).
/// The defining function r is < 0 inside, 0 on the boundary, > 0 outside;
/// every catalog entry carries r as an explicit real polynomial in the
/// coordinates (x_0, y_0, ..., x_{d-1}, y_{d-1}).
class Domain {
public:
    virtual ~Domain() = default;

    DomainKind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::string& name() const { return name_; }
    bool bounded() const { return bounded_; }

    double defining(const CVec& z) const;
    /// Complex packaging of the real gradient: G_j = dr/dx_j + i dr/dy_j, so
    /// the directional derivative of r along v is Re<v, G>.
    CVec defining_gradient(const CVec& z) const;
    const RealPoly& defining_polynomial() const { return r_; }

    bool contains(const CVec& z) const;

    /// Euclidean distance to the boundary (z must lie inside).
    virtual double boundary_distance(const CVec& z) const;

    CVec outer_normal(const CVec& xi) const;
    BoundaryPoint boundary_point(const CVec& xi) const;
    HalfSpaceFunctional supporting_halfspace(const BoundaryPoint& bp) const;

    /// Largest radius rho such that the affine disc z + zeta*rho*v/|v|,
    /// |zeta| < 1, is contained in the domain. Closed form on disc,
    /// half-plane and ball; angle-sampled bisection otherwise.
    virtual double directional_boundary_distance(const CVec& z, const CVec& v) const;

    /// Project a point near the boundary onto {r = 0} (damped Newton along
    /// the gradient with a bisection fallback toward an interior point).
    CVec project_to_boundary(const CVec& z) const;

    CVec interior_point() const { return interior_; }
    /// Sampling is restricted to ||z|| <= sampling_radius() (the tube is
    /// unbounded).
    double sampling_radius() const { return sampling_radius_; }

    /// Draw an interior sample from the quasi-random stream.
    CVec sample_interior(QuasiRandom& qr) const;

    // Catalog factories.
    static std::shared_ptr<const Domain> disc();
    static std::shared_ptr<const Domain> halfplane();
    static std::shared_ptr<const Domain> ball(int d);
    static std::shared_ptr<const Domain> egg(int m);
    static std::shared_ptr<const Domain> tube();
    static std::shared_ptr<const Domain> polynomial(int d, RealPoly r, double sampling_radius = 10.0);

    /// Parse "DISC", "HALFPLANE", "BALL:d", "EGG:m", "TUBE", "POLY:<file>".
    static std::shared_ptr<const Domain> from_spec(const std::string& spec);
    static std::shared_ptr<const Domain> from_json(const nlohmann::json& j);

    /// Egg exponent accessor (throws unless kind == Egg).
    int egg_exponent() const;

protected:
    Domain(DomainKind kind, int dim, std::string name, RealPoly r, CVec interior,
           bool bounded, double sampling_radius);

    virtual double defining_impl(const CVec& z) const;

    DomainKind kind_;
    int dim_;
    std::string name_;
    RealPoly r_;  // in 2*dim real variables
    CVec interior_;
    bool bounded_;
    double sampling_radius_;
    int egg_m_ = 0;
};

std::vector<double> to_reals(const CVec& z);
CVec from_reals(const std::vector<double>& x);

}  // namespace kobalt
