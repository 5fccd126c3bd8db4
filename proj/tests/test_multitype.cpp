#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kobalt/multitype.hpp"

using namespace kobalt;

TEST_CASE("line type on the catalog") {
    for (int m : {2, 4, 6, 8}) {
        auto egg = Domain::egg(m);
        BoundaryPoint xi = egg->boundary_point(CVec{1.0, 0.0});
        CHECK(line_type(*egg, xi, CVec{0.0, 1.0}) == m);
        CHECK(line_type(*egg, xi, CVec{1.0, 0.0}) == 1);
        CHECK(line_type(*egg, xi, CVec{0.0, Complex(0.3, -0.4)}) == m);
    }
    auto ball = Domain::ball(2);
    BoundaryPoint bxi = ball->boundary_point(CVec{Complex(0.6, 0.0), 0.8});
    CVec tangent{Complex(-0.8, 0.0), Complex(0.6, 0.0)};  // <tangent, n> = 0
    CHECK(line_type(*ball, bxi, tangent) == 2);
    auto tube = Domain::tube();
    BoundaryPoint txi = tube->boundary_point(CVec{0.0, 0.0});
    CHECK(line_type(*tube, txi, CVec{0.0, 1.0}) == 2);
    CHECK(line_type(*tube, txi, CVec{0.0, Complex(0.0, 1.0)}) == 2);
}

TEST_CASE("numeric line type estimator agrees with the exact path") {
    auto egg = Domain::egg(4);
    BoundaryPoint xi = egg->boundary_point(CVec{1.0, 0.0});
    CHECK(line_type_numeric(*egg, xi, CVec{0.0, 1.0}) == 4);
    CHECK(line_type_numeric(*egg, xi, CVec{1.0, 0.0}) == 1);
    auto ball = Domain::ball(2);
    BoundaryPoint bxi = ball->boundary_point(CVec{1.0, 0.0});
    CHECK(line_type_numeric(*ball, bxi, CVec{0.0, 1.0}) == 2);
}

TEST_CASE("multitype basis on the catalog") {
    auto egg = Domain::egg(4);
    MultitypeData data = multitype_basis(*egg, egg->boundary_point(CVec{1.0, 0.0}));
    REQUIRE(data.multitype.size() == 2);
    CHECK(data.multitype[0] == 1);
    CHECK(data.multitype[1] == 4);
    CHECK(std::abs(data.basis[0][0] - 1.0) < 1e-12);
    CHECK(std::abs(hdot(data.basis[0], data.basis[1])) < 1e-12);
    CHECK(norm(data.basis[1]) == doctest::Approx(1.0).epsilon(1e-12));

    auto ball = Domain::ball(2);
    MultitypeData bdata = multitype_basis(*ball, ball->boundary_point(CVec{1.0, 0.0}));
    CHECK(bdata.multitype == std::vector<int>{1, 2});

    auto tube = Domain::tube();
    MultitypeData tdata = multitype_basis(*tube, tube->boundary_point(CVec{0.0, 0.0}));
    CHECK(tdata.multitype == std::vector<int>{1, 2});
}

TEST_CASE("multitype coordinates round-trip") {
    auto egg = Domain::egg(4);
    MultitypeData data = multitype_basis(*egg, egg->boundary_point(CVec{1.0, 0.0}));
    QuasiRandom qr(4, 9);
    for (int it = 0; it < 100; ++it) {
        CVec z = egg->sample_interior(qr);
        CVec w = data.to_multitype(z);
        CHECK(norm(data.from_multitype(w) - z) < 1e-12);
    }
    // xi maps to the origin and v_j to e_j.
    CHECK(norm(data.to_multitype(data.xi.xi)) < 1e-12);
    CVec e1 = data.to_multitype(data.xi.xi + data.basis[1]);
    CHECK(std::abs(e1[1] - 1.0) < 1e-12);
}

TEST_CASE("cotype") {
    auto egg = Domain::egg(6);
    MultitypeData data = multitype_basis(*egg, egg->boundary_point(CVec{1.0, 0.0}));
    CotypeResult mixed = cotype(data, CVec{Complex(1.0 / std::sqrt(2.0)), Complex(1.0 / std::sqrt(2.0))});
    CHECK(mixed.cotype == 6);
    CHECK(mixed.type == 1);
    CHECK(cotype(data, data.basis[1]).cotype == 6);
    CHECK(cotype(data, data.basis[1]).type == 6);
    CHECK(cotype(data, data.basis[0]).cotype == 1);
    CHECK_THROWS_AS(cotype(data, CVec{0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("line type bounded by cotype") {
    auto egg = Domain::egg(4);
    BoundaryPoint xi = egg->boundary_point(CVec{1.0, 0.0});
    MultitypeData data = multitype_basis(*egg, xi);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int it = 0; it < 100; ++it) {
        CVec v{Complex(U(rng), U(rng)), Complex(U(rng), U(rng))};
        if (norm(v) < 1e-3) continue;
        CHECK(line_type(*egg, xi, v) <= cotype(data, v).cotype);
    }
}

TEST_CASE("scaling maps") {
    auto egg = Domain::egg(4);
    MultitypeData data = multitype_basis(*egg, egg->boundary_point(CVec{1.0, 0.0}));
    ScalingMap identity = scaling_map(data, 1.0);
    CHECK(identity.diag == std::vector<double>{1.0, 1.0});
    ScalingMap a16 = scaling_map(data, 16.0);
    CHECK(a16.diag[0] == doctest::Approx(16.0));
    CHECK(a16.diag[1] == doctest::Approx(2.0));
    // Composition law A_lambda A_mu = A_{lambda mu}.
    ScalingMap a2 = scaling_map(data, 2.0), a8 = scaling_map(data, 8.0);
    CVec w{Complex(0.3, -0.1), Complex(0.2, 0.5)};
    CHECK(norm(a2.apply(a8.apply(w)) - a16.apply(w)) < 1e-12);
    CHECK(norm(a16.apply_inverse(a16.apply(w)) - w) < 1e-12);
    CHECK_THROWS_AS(scaling_map(data, 0.0), std::domain_error);
}

TEST_CASE("scaling model: egg, ball, tube") {
    for (int m : {2, 4, 6}) {
        auto egg = Domain::egg(m);
        MultitypeData data = multitype_basis(*egg, egg->boundary_point(CVec{1.0, 0.0}));
        ScalingModel model = scaling_model(*egg, data);
        REQUIRE(model.weights == std::vector<int>{m});
        // H(w) = |w|^m / 2, from expanding |1+u|^2 + |w|^m - 1 and fixing the
        // Re w_0 gauge.
        QuasiRandom qr(2, 17);
        for (int it = 0; it < 50; ++it) {
            auto u = qr.next();
            CVec w{Complex(2.0 * u[0] - 1.0, 2.0 * u[1] - 1.0)};
            CHECK(model.eval_H(w) ==
                  doctest::Approx(0.5 * std::pow(std::abs(w[0]), m)).epsilon(1e-11));
        }
    }

    auto ball = Domain::ball(2);
    MultitypeData bdata = multitype_basis(*ball, ball->boundary_point(CVec{1.0, 0.0}));
    ScalingModel bmodel = scaling_model(*ball, bdata);
    CHECK(bmodel.eval_H(CVec{Complex(0.3, 0.4)}) == doctest::Approx(0.125).epsilon(1e-12));

    auto tube = Domain::tube();
    MultitypeData tdata = multitype_basis(*tube, tube->boundary_point(CVec{0.0, 0.0}));
    ScalingModel tmodel = scaling_model(*tube, tdata);
    // H(w) = (Re w)^2 up to the tangential basis phase.
    for (double x : {0.5, -0.3, 1.2}) {
        CVec w1 = tdata.to_multitype(CVec{Complex(0.0, 0.0), Complex(x, 0.0)});
        CHECK(tmodel.eval_H(CVec{w1[1]}) == doctest::Approx(x * x).epsilon(1e-11));
    }
}

TEST_CASE("scaling convergence to the model domain") {
    auto egg = Domain::egg(4);
    MultitypeData data = multitype_basis(*egg, egg->boundary_point(CVec{1.0, 0.0}));
    ScalingModel model = scaling_model(*egg, data);

    // Fixed compact grid inside D_H = {Re w0 + H(w') < 0}.
    std::vector<CVec> grid;
    for (double re : {-2.0, -1.0, -0.5})
        for (double im : {-0.5, 0.0, 0.5})
            for (double wre : {-0.4, 0.0, 0.4})
                for (double wim : {-0.4, 0.2}) {
                    CVec w{Complex(re, im), Complex(wre, wim)};
                    if (model.model_defining(w) < -1e-6) grid.push_back(w);
                }
    REQUIRE(grid.size() > 10);

    double prev = 1e300;
    for (int p = 4; p <= 20; p += 2) {
        double lambda = std::pow(2.0, p);
        double sup = 0.0;
        for (const CVec& w : grid)
            sup = std::max(sup, std::fabs(scaled_defining(model, data, lambda, w) -
                                          model.model_defining(w)));
        CHECK(sup < prev + 1e-14);
        prev = sup;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("flag subspace membership") {
    // Vectors in span{v_j : m_j >= m} have type >= m.
    auto egg = Domain::egg(6);
    BoundaryPoint xi = egg->boundary_point(CVec{1.0, 0.0});
    MultitypeData data = multitype_basis(*egg, xi);
    for (Complex c : {Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(0.6, -0.8)})
        CHECK(line_type(*egg, xi, c * data.basis[1]) == 6);
}
