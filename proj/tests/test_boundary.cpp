#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kobalt/boundary.hpp"

using namespace kobalt;

namespace {

HolomorphicMap disc_square() {
    auto disc = Domain::disc();
    return HolomorphicMap(
        "disc_sq", disc, disc, [](const CVec& z) { return CVec{z[0] * z[0]}; },
        [](const CVec& z) { return CMat{{2.0 * z[0]}}; });
}

HolomorphicMap egg_projection(int m) {
    return HolomorphicMap(
        "egg_proj", Domain::egg(m), Domain::disc(), [](const CVec& z) { return CVec{z[0]}; },
        [](const CVec&) { return CMat{{1.0, 0.0}}; });
}

HolomorphicMap egg_shift_map(int m1, int m2, double r) {
    // E_{m1} -> E_{m2} with m2 <= m1; first component (z0+r)/(1+r).
    double C = std::pow(2.0, -1.0 / m1) * std::pow(r, 1.0 / m2) / std::pow(1.0 + r, 2.0 / m2);
    double e = static_cast<double>(m1 - m2) / (m1 * m2);
    auto theta = [](Complex z) {
        return std::exp(Complex(-M_PI / 2.0, 0.0) - Complex(0.0, 1.0) * std::log(1.0 - z));
    };
    return HolomorphicMap(
        "egg_shift", Domain::egg(m1), Domain::egg(m2),
        [=](const CVec& z) {
            return CVec{(z[0] + r) / (1.0 + r),
                        C * z[1] * std::pow(1.0 - z[0], e) * theta(z[0])};
        });
}

}  // namespace

TEST_CASE("make_curve catalog kinds") {
    auto egg = Domain::egg(4);
    BoundaryPoint xi = egg->boundary_point(CVec{1.0, 0.0});

    ApproachCurve normal = make_curve(*egg, xi, "normal", {}, 30);
    for (const CurveSample& s : normal.samples) {
        CHECK(std::abs(s.z[0] - s.t) < 1e-14);
        CHECK(std::abs(s.z[1]) < 1e-14);
    }

    ApproachCurve gl = make_curve(*egg, xi, "gamma_lambda", {{"lambda_re", 0.5}}, 30);
    for (const CurveSample& s : gl.samples) {
        CHECK(std::abs(s.z[1] - 0.5 * std::pow(1.0 - s.t * s.t, 0.25)) < 1e-13);
    }

    auto tube = Domain::tube();
    BoundaryPoint t0 = tube->boundary_point(CVec{0.0, 0.0});
    ApproachCurve ta = make_curve(*tube, t0, "tube_alpha", {{"alpha", 0.25}}, 30);
    for (const CurveSample& s : ta.samples) {
        double sdepth = 1.0 - s.t;
        CHECK(std::abs(s.z[0] + sdepth) < 1e-14);
        CHECK(std::abs(s.z[1] - Complex(0.0, std::pow(sdepth, 0.25))) < 1e-13);
        CHECK(s.delta == doctest::Approx(sdepth).epsilon(1e-9));
    }

    CHECK_THROWS_AS(make_curve(*egg, xi, "spiral", {}, 10), std::invalid_argument);
    CHECK_THROWS_AS(make_curve(*egg, xi, "cone", {{"aperture", 1.6}}, 10),
                    std::invalid_argument);
}

TEST_CASE("estimate_exponent synthetic oracles") {
    std::vector<std::pair<double, double>> pure, flat, wobble;
    for (int k = 0; k <= 30; ++k) {
        double d = std::pow(2.0, -k);
        pure.push_back({d, std::sqrt(d)});
        flat.push_back({d, 7.0});
        wobble.push_back({d, std::pow(d, 0.25) * (2.0 + std::sin(std::log(d)))});
    }
    AsymptoticEstimate e1 = estimate_exponent(pure);
    CHECK(e1.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(e1.r2 == doctest::Approx(1.0));
    CHECK(e1.decades > 8.0);

    AsymptoticEstimate e2 = estimate_exponent(flat);
    CHECK(std::fabs(e2.slope) < 1e-12);

    AsymptoticEstimate e3 = estimate_exponent(wobble);
    CHECK(e3.slope == doctest::Approx(0.25).epsilon(0.2));
    CHECK(std::fabs(e3.slope - 0.25) < 0.05);

    CHECK_THROWS_AS(estimate_exponent({{0.5, 1.0}, {0.25, 1.0}}), EstimationError);
    std::vector<std::pair<double, double>> narrow;
    for (int k = 0; k < 20; ++k) narrow.push_back({0.5 - 0.01 * k, 1.0});
    CHECK_THROWS_AS(estimate_exponent(narrow), EstimationError);
    std::vector<std::pair<double, double>> zeros = pure;
    zeros[3].second = 0.0;
    CHECK(estimate_exponent(zeros).dropped_zeros == 1);
}

TEST_CASE("curve classifier on the paper catalog") {
    auto egg = Domain::egg(4);
    BoundaryPoint xi = egg->boundary_point(CVec{1.0, 0.0});
    MultitypeData data = multitype_basis(*egg, xi);

    CHECK(classify_curve(data, make_curve(*egg, xi, "normal", {})).label == CurveLabel::KPrime);
    CHECK(classify_curve(data, make_curve(*egg, xi, "gamma_lambda", {{"lambda_re", 0.5}})).label ==
          CurveLabel::KOnly);
    CHECK(classify_curve(data,
                         make_curve(*egg, xi, "gamma_lambda",
                                    {{"lambda_re", 0.3}, {"lambda_im", -0.4}}))
              .label == CurveLabel::KOnly);
    CHECK(classify_curve(data, make_curve(*egg, xi, "cone", {{"aperture", 0.5}})).label ==
          CurveLabel::KPrime);

    auto tube = Domain::tube();
    BoundaryPoint t0 = tube->boundary_point(CVec{0.0, 0.0});
    MultitypeData tdata = multitype_basis(*tube, t0);
    CHECK(classify_curve(tdata, make_curve(*tube, t0, "tube_alpha", {{"alpha", 0.25}})).label ==
          CurveLabel::NotK);
    CHECK(classify_curve(tdata, make_curve(*tube, t0, "tube_alpha", {{"alpha", 0.75}})).label ==
          CurveLabel::KPrime);
    // alpha = 0.5 is the borderline O(delta^{1/2}) case: K but not K'.
    CHECK(classify_curve(tdata, make_curve(*tube, t0, "tube_alpha", {{"alpha", 0.5}})).label ==
          CurveLabel::KOnly);
}

TEST_CASE("cone curves classify as K_prime on several domains") {
    for (auto dom : {Domain::egg(6), Domain::ball(2)}) {
        BoundaryPoint xi = dom->boundary_point(CVec{1.0, 0.0});
        MultitypeData data = multitype_basis(*dom, xi);
        for (double aperture : {0.2, 0.7, 1.1}) {
            ApproachCurve cone =
                make_curve(*dom, xi, "cone", {{"aperture", aperture}, {"tangent_phase", 0.9}});
            CHECK(classify_curve(data, cone).label == CurveLabel::KPrime);
        }
    }
}

TEST_CASE("dilation: identity and squaring on the disc") {
    auto disc = Domain::disc();
    BoundaryPoint one = disc->boundary_point(CVec{Complex(1.0)});
    CVec origin{Complex(0.0)};

    HolomorphicMap id("disc_id", disc, disc, [](const CVec& z) { return z; },
                      [](const CVec&) { return CMat{{1.0}}; });
    DilationResult did = dilation(id, one, one, origin, origin);
    CHECK(std::fabs(did.log_lambda) < 1e-10);
    CHECK(did.normalized_alpha == doctest::Approx(1.0).epsilon(1e-10));

    DilationResult dsq = dilation(disc_square(), one, one, origin, origin);
    CHECK(dsq.log_lambda == doctest::Approx(std::log(2.0)).epsilon(1e-6));
    CHECK(dsq.tail_variation < 1e-3);
}

TEST_CASE("dilation: egg projection and egg-to-egg shift") {
    auto egg4 = Domain::egg(4);
    BoundaryPoint xi = egg4->boundary_point(CVec{1.0, 0.0});
    auto disc = Domain::disc();
    BoundaryPoint one = disc->boundary_point(CVec{Complex(1.0)});
    CVec p{0.0, 0.0}, q{Complex(0.0)};

    DilationResult dproj = dilation(egg_projection(4), xi, one, p, q);
    CHECK(std::fabs(dproj.log_lambda) < 1e-8);
    CHECK(dproj.normalized_alpha == doctest::Approx(1.0).epsilon(1e-8));

    auto egg2 = Domain::egg(2);
    BoundaryPoint eta = egg2->boundary_point(CVec{1.0, 0.0});
    double r = 0.5;
    DilationResult dshift = dilation(egg_shift_map(4, 2, r), xi, eta, p, CVec{0.0, 0.0});
    CHECK(std::exp(dshift.log_lambda) == doctest::Approx(1.0 / (1.0 + r)).epsilon(1e-6));
    CHECK(dshift.normalized_alpha == doctest::Approx(1.0 / (1.0 + r)).epsilon(1e-6));
}

TEST_CASE("dilation: base-point covariance") {
    auto disc = Domain::disc();
    BoundaryPoint one = disc->boundary_point(CVec{Complex(1.0)});
    HolomorphicMap sq = disc_square();
    CVec p{Complex(0.0)}, pp{Complex(0.0)};
    CVec q{Complex(0.3, 0.1)}, qq{Complex(-0.2, 0.0)};

    DilationResult base = dilation(sq, one, one, p, pp);
    DilationResult moved = dilation(sq, one, one, q, qq);
    double predicted = base.log_lambda + horofunction_oracle(*disc, one, p, q) +
                       horofunction_oracle(*disc, one, qq, pp);
    CHECK(std::fabs(moved.log_lambda - predicted) < 1e-2);
    CHECK(std::fabs(moved.normalized_alpha - base.normalized_alpha) < 1e-2);
}

TEST_CASE("julia inequality") {
    auto disc = Domain::disc();
    BoundaryPoint one = disc->boundary_point(CVec{Complex(1.0)});
    CVec origin{Complex(0.0)};

    HolomorphicMap id("disc_id", disc, disc, [](const CVec& z) { return z; });
    JuliaReport jid = julia_check(id, one, one, origin, origin, 400);
    CHECK(jid.violations == 0);
    CHECK(std::fabs(jid.max_slack) < 1e-9);
    CHECK(std::fabs(jid.sup_estimate) < 1e-9);

    JuliaReport jsq = julia_check(disc_square(), one, one, origin, origin, 1000);
    CHECK(jsq.violations == 0);
    CHECK(jsq.max_slack <= 1e-2);
    CHECK(jsq.sup_estimate == doctest::Approx(std::log(2.0)).epsilon(2e-2));

    auto egg4 = Domain::egg(4);
    BoundaryPoint xi = egg4->boundary_point(CVec{1.0, 0.0});
    JuliaReport jproj = julia_check(egg_projection(4), xi, one, CVec{0.0, 0.0}, origin, 600);
    CHECK(jproj.violations == 0);
}

TEST_CASE("dilation chain rule") {
    auto disc = Domain::disc();
    BoundaryPoint one = disc->boundary_point(CVec{Complex(1.0)});
    CVec origin{Complex(0.0)};
    HolomorphicMap sq = disc_square();
    HolomorphicMap fourth = compose(sq, sq);

    double l2 = dilation(sq, one, one, origin, origin).log_lambda;
    double l4 = dilation(fourth, one, one, origin, origin).log_lambda;
    CHECK(std::fabs(l4 - 2.0 * l2) < 1e-3);

    // egg projection after the egg-to-egg shift: lambda multiplies.
    auto egg4 = Domain::egg(4);
    auto egg2 = Domain::egg(2);
    BoundaryPoint xi4 = egg4->boundary_point(CVec{1.0, 0.0});
    BoundaryPoint xi2 = egg2->boundary_point(CVec{1.0, 0.0});
    HolomorphicMap shift = egg_shift_map(4, 2, 0.5);
    HolomorphicMap proj2 = egg_projection(2);
    HolomorphicMap comp = compose(proj2, shift);
    CVec p{0.0, 0.0};
    double ls = dilation(shift, xi4, xi2, p, p).log_lambda;
    double lp = dilation(proj2, xi2, one, p, origin).log_lambda;
    double lc = dilation(comp, xi4, one, p, origin).log_lambda;
    CHECK(std::fabs(lc - ls - lp) < 1e-3);
}

TEST_CASE("delta ratio is K-bounded at regular contact points") {
    auto disc = Domain::disc();
    HolomorphicMap sq = disc_square();
    // Along radial and cone samples toward 1, log(delta(f(z))/delta(z)) stays
    // bounded above.
    double sup = -1e9;
    for (int k = 2; k <= 40; ++k) {
        double s = std::pow(2.0, -k);
        for (double jitter : {0.0, 0.3, -0.3}) {
            Complex z = 1.0 - s * Complex(1.0, jitter);
            if (std::abs(z) >= 1.0) continue;
            double ratio = std::log((1.0 - std::norm(z)) / 2.0 + 0.5 * std::norm(1.0 - z * z)) -
                           std::log(1.0 - std::abs(z));
            (void)ratio;
            double d1 = 1.0 - std::abs(z * z);
            double d0 = 1.0 - std::abs(z);
            sup = std::max(sup, std::log(d1 / d0));
        }
    }
    CHECK(sup < std::log(3.0));
}
