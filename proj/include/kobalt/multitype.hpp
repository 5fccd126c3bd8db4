#pragma once

#include <limits>
#include <vector>

#include "kobalt/domain.hpp"

namespace kobalt {

inline constexpr int kLineTypeInfinite = std::numeric_limits<int>::max();
inline constexpr int kLineTypeCap = 32;

struct EstimationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Order of vanishing of zeta -> r(xi + zeta v) at 0. Exact (symbolic Taylor
/// expansion) for polynomial defining functions; kLineTypeInfinite when no
/// vanishing is detected up to the order cap.
int line_type(const Domain& D, const BoundaryPoint& xi, const CVec& v);

/// Log-log slope estimator for the same quantity (safety net for defining
/// functions without polynomial structure; exercised against the exact path
/// in tests).
int line_type_numeric(const Domain& D, const BoundaryPoint& xi, const CVec& v);

struct MultitypeData {
    BoundaryPoint xi;
    std::vector<CVec> basis;     // v_0 = n_xi, flag-adapted, orthonormal
    std::vector<int> multitype;  // m_0 = 1, nondecreasing

    /// Multitype coordinates: w_j = <z - xi, v_j>.
    CVec to_multitype(const CVec& z) const;
    CVec from_multitype(const CVec& w) const;
};

MultitypeData multitype_basis(const Domain& D, const BoundaryPoint& xi);

struct CotypeResult {
    int cotype;  // M_xi(v) = max m_j over nonzero coefficients
    int type;    // m_xi(v) = min m_j over nonzero coefficients
};
CotypeResult cotype(const MultitypeData& data, const CVec& v);

/// Diagonal anisotropic dilation in multitype coordinates:
/// A_lambda = diag(lambda, lambda^{1/m_1}, ..., lambda^{1/m_{d-1}}).
struct ScalingMap {
    std::vector<double> diag;
    CVec apply(const CVec& w) const;
    CVec apply_inverse(const CVec& w) const;
};
ScalingMap scaling_map(const MultitypeData& data, double lambda);

struct ScalingModel {
    RealPoly H;                // in the real coordinates of (w_1,...,w_{d-1})
    std::vector<int> weights;  // (m_1,...,m_{d-1})
    RealPoly r_hat;            // full defining function in multitype coords, gauge-normalized
    double eval_H(const CVec& wprime) const;
    /// Defining function of the scaling model D_H: Re w_0 + H(w').
    double model_defining(const CVec& w) const;
};

ScalingModel scaling_model(const Domain& D, const MultitypeData& data);

/// lambda * r_hat(A_lambda^{-1} w): converges to Re w_0 + H(w') as lambda grows.
double scaled_defining(const ScalingModel& model, const MultitypeData& data, double lambda,
                       const CVec& w);

}  // namespace kobalt
