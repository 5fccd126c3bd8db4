#pragma once

#include <nlohmann/json.hpp>

#include "kobalt/geodesics.hpp"
#include "kobalt/maps.hpp"
#include "kobalt/multitype.hpp"

namespace kobalt {

struct CurveSample {
    double t;
    CVec z;
    double delta;
};

struct ApproachCurve {
    std::string kind;
    std::vector<CurveSample> samples;
};

/// Approach curves toward xi with geometric sampling t_k = 1 - r0 * 2^{-k}.
/// kinds: "normal"; "cone" {aperture, tangent_phase}; "gamma_lambda"
/// {lambda_re, lambda_im} (finite-type tangential curve built in multitype
/// coordinates); "tube_alpha" {alpha} (tube domain at the origin); "user"
/// {points: [[re,im],...] per sample}.
ApproachCurve make_curve(const Domain& D, const BoundaryPoint& xi, const std::string& kind,
                         const nlohmann::json& params, int K = 40, double r0 = 0.5);

struct AsymptoticEstimate {
    double slope = 0.0;
    double r2 = 0.0;
    double decades = 0.0;
    int dropped_zeros = 0;
};

/// Least-squares slope of log(value) against log(delta). Requires >= 12
/// nonzero samples spanning >= 2 decades of delta.
AsymptoticEstimate estimate_exponent(std::vector<std::pair<double, double>> pairs);

enum class CurveLabel { KPrime, KOnly, NotK };
std::string to_string(CurveLabel label);

struct ComponentEvidence {
    int j;
    double slope = 0.0;
    double r2 = 0.0;
    bool identically_zero = false;
    std::string trend;  // "growing", "bounded", "decaying", "zero"
};

struct CurveClassification {
    CurveLabel label;
    std::vector<ComponentEvidence> components;
};

/// Extrinsic K/K' classifier: per basis direction j, the trend of
/// rho_j(t) = |<z(t)-xi, v_j>| / delta^{1/m_j} decides the label.
CurveClassification classify_curve(const MultitypeData& data, const ApproachCurve& curve);

struct DilationResult {
    double log_lambda = 0.0;
    double normalized_alpha = 0.0;
    double tail_variation = 0.0;
};

/// log lambda_{xi,p,p'} computed along the inner normal segment (where the
/// liminf is a true limit), with oracle or geodesic-assisted distances.
/// normalized_alpha = exp(log_lambda) |Omega_xi(p)| / |Omega_eta(p')|.
/// Callers verify the regular-contact precondition first.
DilationResult dilation(const HolomorphicMap& f, const BoundaryPoint& xi,
                        const BoundaryPoint& eta, const CVec& p, const CVec& pprime);

struct JuliaReport {
    int samples = 0;
    int violations = 0;       // slack beyond the 1e-2 tolerance
    double max_slack = 0.0;   // max of h'(f(z)) - h(z) - log lambda
    double sup_estimate = 0.0;  // max of h'(f(z)) - h(z), approaches log lambda
    double log_lambda = 0.0;
    CVec worst_point;
};

JuliaReport julia_check(const HolomorphicMap& f, const BoundaryPoint& xi,
                        const BoundaryPoint& eta, const CVec& p, const CVec& pprime,
                        int sample_count, std::uint64_t seed = 42);

}  // namespace kobalt
