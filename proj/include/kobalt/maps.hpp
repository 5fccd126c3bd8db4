#pragma once

#include <functional>
#include <memory>

#include "kobalt/domain.hpp"

namespace kobalt {

/// Complex Jacobian: mat[i][j] = df_i / dz_j.
using CMat = std::vector<std::vector<Complex>>;

CVec apply_matrix(const CMat& J, const CVec& v);

/// Holomorphic map between catalog domains, optionally with an exact
/// analytic Jacobian.
class HolomorphicMap {
public:
    using EvalFn = std::function<CVec(const CVec&)>;
    using JacFn = std::function<CMat(const CVec&)>;

    HolomorphicMap(std::string tag, std::shared_ptr<const Domain> source,
                   std::shared_ptr<const Domain> target, EvalFn eval, JacFn jac = nullptr)
        : tag_(std::move(tag)),
          source_(std::move(source)),
          target_(std::move(target)),
          eval_(std::move(eval)),
          jac_(std::move(jac)) {}

    const std::string& tag() const { return tag_; }
    const Domain& source() const { return *source_; }
    const Domain& target() const { return *target_; }
    std::shared_ptr<const Domain> source_ptr() const { return source_; }
    std::shared_ptr<const Domain> target_ptr() const { return target_; }

    CVec operator()(const CVec& z) const { return eval_(z); }
    bool has_analytic_jacobian() const { return static_cast<bool>(jac_); }
    CMat analytic_jacobian(const CVec& z) const {
        if (!jac_) throw std::logic_error("analytic_jacobian: not available for " + tag_);
        return jac_(z);
    }

private:
    std::string tag_;
    std::shared_ptr<const Domain> source_;
    std::shared_ptr<const Domain> target_;
    EvalFn eval_;
    JacFn jac_;
};

/// g after f (the composite g(f(z))), with Jacobian chain rule when both
/// factors carry analytic Jacobians.
HolomorphicMap compose(const HolomorphicMap& g, const HolomorphicMap& f);

}  // namespace kobalt
