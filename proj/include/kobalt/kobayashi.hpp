#pragma once

#include <optional>
#include <string>

#include "kobalt/domain.hpp"
#include "kobalt/hyperbolic.hpp"

namespace kobalt {

/// Certified lower-bound witness: a holomorphic contraction of the domain
/// into the disc or the left half-plane (supporting functionals and linear
/// projections), or the closed-form oracle.
struct LowerWitness {
    enum class Kind { None, Oracle, HalfSpace, Projection };
    enum class Target { HalfPlane, Disc };
    Kind kind = Kind::None;
    Target target = Target::HalfPlane;
    std::optional<HalfSpaceFunctional> functional;
    std::string describe() const;
};

/// Certified upper-bound witness: an analytic disc through the two points
/// (affine or polynomial), a chain of affine discs along the segment, or the
/// closed-form oracle.
struct UpperWitness {
    enum class Kind { None, Oracle, AffineDisc, SegmentChain, PolynomialDisc };
    Kind kind = Kind::None;
    std::vector<CVec> coefficients;  // phi(zeta) = sum_k coefficients[k] zeta^k
    Complex zeta_z = 0.0;            // parameters mapped to z and w
    Complex zeta_w = 0.0;
    double sample_radius = 1.0;      // feasibility certified on this circle
    std::vector<CVec> chain;         // nodes for segment chains
    std::string describe() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    LowerWitness lo_witness;
    UpperWitness hi_witness;
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

struct BoundOptions {
    int quasi_contacts = 16;
    std::uint64_t seed = 42;
    int refine_budget = 0;  // optimizer objective evaluations (0 = no optimizer)
    int disc_degree = 8;
    bool allow_oracle = true;
};

bool has_exact_distance(const Domain& D);
double exact_distance(const Domain& D, const CVec& z, const CVec& w);
bool has_exact_metric(const Domain& D);
double exact_metric(const Domain& D, const CVec& z, const CVec& v);

Interval distance_bounds(const Domain& D, const CVec& z, const CVec& w,
                         const BoundOptions& opt = {});
Interval metric_bounds(const Domain& D, const CVec& z, const CVec& v,
                       const BoundOptions& opt = {});
Interval refine_distance_upper(const Domain& D, const CVec& z, const CVec& w, int budget,
                               const Interval& start, const BoundOptions& opt = {});
Interval gromov_product(const Domain& D, const CVec& z, const CVec& w, const CVec& p,
                        const BoundOptions& opt = {});

/// Upper bound for k_D(z,w) by summing affine-disc bounds along the segment
/// [z,w] with adaptive subdivision. Tight for nearby points even in the
/// anisotropic tangential directions.
double segment_chain_upper(const Domain& D, const CVec& z, const CVec& w, int max_depth = 26,
                           std::vector<CVec>* nodes = nullptr);

/// Polynomial analytic disc used as an upper-bound witness.
struct AnalyticDisc {
    std::vector<CVec> coeffs;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    CVec eval(Complex zeta) const;
    bool feasible(const Domain& D, double radius, int samples = 256) const;
};

double reevaluate_lower_witness(const Domain& D, const CVec& z, const CVec& w,
                                const LowerWitness& wit);
double reevaluate_upper_witness(const Domain& D, const CVec& z, const CVec& w,
                                const UpperWitness& wit);

}  // namespace kobalt
