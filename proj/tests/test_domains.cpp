#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "kobalt/domain.hpp"
#include "kobalt/hyperbolic.hpp"

using namespace kobalt;

TEST_CASE("membership") {
    auto egg = Domain::egg(4);
    CHECK(egg->contains(CVec{0.0, 0.0}));
    CHECK_FALSE(egg->contains(CVec{1.0, 0.0}));
    auto ball = Domain::ball(2);
    CHECK(ball->contains(CVec{0.6, 0.7}));  // 0.36 + 0.49 < 1
    CHECK_FALSE(ball->contains(CVec{0.8, 0.7}));
    CHECK_THROWS_AS(ball->contains(CVec{0.1}), std::invalid_argument);
}

TEST_CASE("boundary distance: closed forms") {
    auto ball = Domain::ball(2);
    CHECK(ball->boundary_distance(CVec{0.3, 0.0}) == doctest::Approx(0.7).epsilon(1e-12));

    auto tube = Domain::tube();
    for (double t : {0.05, 0.1, 0.3}) {
        for (double alpha : {0.25, 0.5, 0.75}) {
            CVec z{Complex(-t, 0.0), Complex(0.0, std::pow(t, alpha))};
            CHECK(tube->boundary_distance(z) == doctest::Approx(t).epsilon(1e-10));
        }
    }

    auto egg = Domain::egg(4);
    CHECK(egg->boundary_distance(CVec{0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("egg boundary distance against brute force") {
    auto egg = Domain::egg(4);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> U(-0.8, 0.8);
    for (int it = 0; it < 25; ++it) {
        CVec z{Complex(U(rng), U(rng)) * 0.6, Complex(U(rng), U(rng)) * 0.6};
        if (!egg->contains(z)) continue;
        // Brute-force oracle: dense sampling of the boundary arc in the
        // reduced (|z0|, |z1|) quarter-plane.
        double a = std::abs(z[0]), b = std::abs(z[1]);
        double best = 1e9;
        for (int i = 0; i <= 200000; ++i) {
            double t = i / 200000.0;
            double s = std::sqrt(std::max(0.0, 1.0 - t * t * t * t));
            best = std::min(best, std::hypot(s - a, t - b));
        }
        CHECK(egg->boundary_distance(z) == doctest::Approx(best).epsilon(1e-6));
    }
    CHECK_THROWS_AS(egg->boundary_distance(CVec{2.0, 0.0}), std::domain_error);
}

TEST_CASE("outer normals") {
    auto ball = Domain::ball(2);
    CVec n = ball->outer_normal(CVec{1.0, 0.0});
    CHECK(std::abs(n[0] - 1.0) < 1e-12);
    CHECK(std::abs(n[1]) < 1e-12);

    auto egg = Domain::egg(6);
    n = egg->outer_normal(CVec{1.0, 0.0});
    CHECK(std::abs(n[0] - 1.0) < 1e-12);

    auto tube = Domain::tube();
    n = tube->outer_normal(CVec{0.0, 0.0});
    CHECK(std::abs(n[0] - 1.0) < 1e-12);
    CHECK(std::abs(n[1]) < 1e-12);
}

TEST_CASE("supporting half-spaces") {
    auto ball = Domain::ball(2);
    BoundaryPoint bp = ball->boundary_point(CVec{1.0, 0.0});
    HalfSpaceFunctional ell = ball->supporting_halfspace(bp);
    CHECK(std::abs(ell(CVec{1.0, 0.0})) < 1e-12);         // ell(xi) = 0
    CHECK(std::abs(ell(CVec{0.0, 0.0}) + 1.0) < 1e-12);   // ell(z) = z0 - 1
    CHECK(std::abs(ell.linear(bp.normal) - 1.0) < 1e-12);  // dual to n_xi

    auto egg = Domain::egg(4);
    BoundaryPoint ep = egg->boundary_point(CVec{1.0, 0.0});
    HalfSpaceFunctional elle = egg->supporting_halfspace(ep);
    CHECK(std::abs(elle(CVec{0.5, 0.5}) - Complex(-0.5, 0.0)) < 1e-12);

    auto hp = Domain::halfplane();
    BoundaryPoint hp0 = hp->boundary_point(CVec{Complex(0.0, 0.0)});
    HalfSpaceFunctional id = hp->supporting_halfspace(hp0);
    CHECK(std::abs(id(CVec{Complex(-0.3, 0.2)}) - Complex(-0.3, 0.2)) < 1e-12);

    // Re ell < 0 on interior samples.
    QuasiRandom qr(4, 1);
    for (int it = 0; it < 500; ++it) {
        CVec z = egg->sample_interior(qr);
        CHECK(elle(z).real() < 0.0);
    }
}

TEST_CASE("directional boundary distance") {
    auto disc = Domain::disc();
    CHECK(disc->directional_boundary_distance(CVec{Complex(0.0)}, CVec{Complex(1.0)}) ==
          doctest::Approx(1.0).epsilon(1e-7));

    auto ball = Domain::ball(2);
    CHECK(ball->directional_boundary_distance(CVec{0.0, 0.0}, CVec{Complex(0.3, 0.1), 0.5}) ==
          doctest::Approx(1.0).epsilon(1e-7));

    for (int m : {2, 4, 6}) {
        auto egg = Domain::egg(m);
        for (double t : {0.2, 0.5, 0.8}) {
            double expected = std::pow(1.0 - t * t, 1.0 / m);
            CHECK(egg->directional_boundary_distance(CVec{t, 0.0}, CVec{0.0, 1.0}) ==
                  doctest::Approx(expected).epsilon(1e-6));
        }
    }
}

TEST_CASE("convexity witness: midpoints stay inside") {
    for (auto dom : {Domain::egg(4), Domain::tube(), Domain::ball(3)}) {
        QuasiRandom qr(2 * dom->dim(), 2);
        for (int it = 0; it < 10000; ++it) {
            CVec a = dom->sample_interior(qr);
            CVec b = dom->sample_interior(qr);
            CHECK(dom->contains(0.5 * (a + b)));
        }
    }
}

TEST_CASE("boundary distance is 1-Lipschitz along segments") {
    auto egg = Domain::egg(4);
    QuasiRandom qr(4, 3);
    for (int it = 0; it < 50; ++it) {
        CVec a = egg->sample_interior(qr);
        CVec b = egg->sample_interior(qr);
        double prev = egg->boundary_distance(a);
        const int n = 20;
        for (int i = 1; i <= n; ++i) {
            CVec p = a + (static_cast<double>(i) / n) * (b - a);
            double cur = egg->boundary_distance(p);
            CHECK(std::fabs(cur - prev) <= norm(b - a) / n + 1e-9);
            prev = cur;
        }
    }
}

TEST_CASE("Mercer bound on oracle domains") {
    // k_D(p,q) >= |log(delta(p)/delta(q))| with the exact disc/ball distance.
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(-0.9, 0.9);
    auto disc = Domain::disc();
    for (int it = 0; it < 500; ++it) {
        Complex p(U(rng) * 0.7, U(rng) * 0.7), q(U(rng) * 0.7, U(rng) * 0.7);
        double k = poincare_distance_disc(p, q);
        double lhs = std::fabs(std::log(disc->boundary_distance(CVec{p}) /
                                        disc->boundary_distance(CVec{q})));
        CHECK(k >= lhs - 1e-12);
    }
}

TEST_CASE("polynomial domain from JSON matches the egg catalog entry") {
    nlohmann::json j = {
        {"dim", 2},
        {"monomials",
         {
             {{"coeff", -1.0}},
             {{"coeff", 1.0}, {"x", {2, 0}}, {"y", {0, 0}}},
             {{"coeff", 1.0}, {"x", {0, 0}}, {"y", {2, 0}}},
             {{"coeff", 1.0}, {"x", {0, 4}}, {"y", {0, 0}}},
             {{"coeff", 2.0}, {"x", {0, 2}}, {"y", {0, 2}}},
             {{"coeff", 1.0}, {"x", {0, 0}}, {"y", {0, 4}}},
         }},
    };
    auto poly = Domain::from_json(j);
    auto egg = Domain::egg(4);
    QuasiRandom qr(4, 4);
    for (int it = 0; it < 200; ++it) {
        CVec z = egg->sample_interior(qr);
        CHECK(poly->defining(z) == doctest::Approx(egg->defining(z)).epsilon(1e-12));
    }
    // Generic projected-gradient distance agrees with the reduced egg solver.
    for (CVec z : {CVec{0.3, 0.2}, CVec{Complex(0.1, 0.4), Complex(0.0, -0.5)}, CVec{0.0, 0.0}}) {
        CHECK(poly->boundary_distance(z) ==
              doctest::Approx(egg->boundary_distance(z)).epsilon(1e-6));
    }
}

TEST_CASE("domain spec parser") {
    CHECK(Domain::from_spec("EGG:6")->name() == "EGG:6");
    CHECK(Domain::from_spec("BALL:3")->dim() == 3);
    CHECK(Domain::from_spec("DISC")->kind() == DomainKind::Disc);
    CHECK(Domain::from_spec("TUBE")->bounded() == false);
    CHECK_THROWS_AS(Domain::from_spec("CUBE"), std::invalid_argument);
    CHECK_THROWS_AS(Domain::egg(3), std::invalid_argument);
}
