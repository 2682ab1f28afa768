#include "skewcall/value_function.hpp"

#include "skewcall/json_io.hpp"
#include "atlas.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace skewcall;
using testutil::atlas;
using testutil::ref_params;
using testutil::rel_eq;

TEST_CASE("regime dispatch across the atlas") {
    for (const auto& e : atlas()) {
        CAPTURE(e.name);
        const auto vf = solve(e.params);
        CHECK(vf.regime == e.regime);
        // pieces tile (0, inf): ordered, contiguous
        REQUIRE(!vf.pieces.empty());
        CHECK(vf.pieces.front().lo == 0.0);
        CHECK(std::isinf(vf.pieces.back().hi));
        for (size_t i = 0; i + 1 < vf.pieces.size(); ++i)
            CHECK(vf.pieces[i].hi == vf.pieces[i + 1].lo);
        // region sorted, disjoint, ends with a ray
        const auto& comps = vf.region.components;
        REQUIRE(!comps.empty());
        CHECK(std::isinf(comps.back().hi));
        for (size_t i = 0; i + 1 < comps.size(); ++i) CHECK(comps[i].hi < comps[i + 1].lo);
    }
}

TEST_CASE("value dominates the obstacle and stays positive") {
    for (const auto& e : atlas()) {
        CAPTURE(e.name);
        const auto vf = solve(e.params);
        const double hi = 10 * std::max({e.params.z, vf.profile.z0, vf.rightmost_breakpoint()});
        for (double x : testutil::geomspace(1e-3 * e.params.K, hi, 10000)) {
            const double v = vf.evaluate(x);
            CHECK(v > 0);
            CHECK(v >= std::max(x - e.params.K, 0.0) - 1e-12 * e.params.K);
        }
    }
}

TEST_CASE("continuity at breakpoints, value equals payoff on stopping set") {
    for (const auto& e : atlas()) {
        CAPTURE(e.name);
        const auto vf = solve(e.params);
        for (size_t i = 0; i + 1 < vf.pieces.size(); ++i) {
            const double bp = vf.pieces[i].hi;
            const double dl = vf.evaluate(bp);
            const double dr = vf.evaluate(bp * (1 + 1e-14));
            CHECK(rel_eq(dl, dr, 1e-10));
        }
        for (const auto& c : vf.region.components) {
            for (double t : {0.0, 0.5, 1.0}) {
                const double hi = std::isinf(c.hi) ? 2 * c.lo : c.hi;
                const double x = c.lo + t * (hi - c.lo);
                CHECK(rel_eq(vf.evaluate(x), x - e.params.K, 1e-12));
            }
        }
    }
}

TEST_CASE("skew condition at z: equality when continuing, inequality when stopped") {
    for (const auto& e : atlas()) {
        CAPTURE(e.name);
        const auto vf = solve(e.params);
        const double beta = e.params.beta, z = e.params.z;
        const double lhs = (1 + beta) * vf.d_right(z);
        const double rhs = (1 - beta) * vf.d_left(z);
        if (vf.region.contains(z)) {
            CHECK(lhs - rhs <= 1e-10 * (std::abs(lhs) + std::abs(rhs)));
        } else {
            CHECK(rel_eq(lhs, rhs, 1e-10));
        }
    }
}

TEST_CASE("smooth fit at every stopping boundary other than z") {
    for (const auto& e : atlas()) {
        CAPTURE(e.name);
        const auto vf = solve(e.params);
        for (const auto& c : vf.region.components) {
            for (double b : {c.lo, c.hi}) {
                if (std::isinf(b) || b == e.params.z) continue;
                CHECK(std::abs(vf.d_left(b) - 1.0) < 1e-9);
                CHECK(std::abs(vf.d_right(b) - 1.0) < 1e-9);
            }
        }
    }
}

TEST_CASE("derivatives: affine interior and the a = z kink") {
    const auto vf5 = solve(ref_params(2.8, -0.1));  // a = z regime
    CHECK(vf5.regime == Regime::OneSidedAtZ);
    CHECK(vf5.d_left(2.8) != vf5.d_right(2.8));
    CHECK(vf5.d_right(2.8) == doctest::Approx(1.0));
    CHECK(vf5.d_left(2.8) == doctest::Approx(vf5.profile.n * (2.8 - 1.0) / 2.8));

    const auto vf4 = solve(ref_params(1.0, -0.1));  // a = alpha(z): C1 fit
    const double a = vf4.constants.at("a");
    CHECK(std::abs(vf4.d_left(a) - 1.0) < 1e-10);
    CHECK(std::abs(vf4.d_right(a) - 1.0) < 1e-10);
    CHECK(vf4.evaluate(2 * a) == doctest::Approx(2 * a - 1.0));
    CHECK(vf4.d_left(2 * a) == doctest::Approx(1.0));
}

TEST_CASE("PointPlusRay: isolated stopping point at z") {
    const auto vf = solve(ref_params(1.6, -0.5));
    REQUIRE(vf.regime == Regime::PointPlusRay);
    REQUIRE(vf.region.components.size() == 2);
    CHECK(vf.region.components[0].lo == 1.6);
    CHECK(vf.region.components[0].hi == 1.6);
    CHECK(vf.region.contains(1.6));
    CHECK(!vf.region.contains(1.6 * (1 + 1e-9)));
    CHECK(rel_eq(vf.evaluate(1.6), 0.6, 1e-12));
    CHECK(rel_eq(vf.constants.at("xi"), 2.22224753441051672, 1e-11));
    // value strictly above payoff on both sides of z
    CHECK(vf.evaluate(1.55) > 0.55);
    CHECK(vf.evaluate(1.65) > 0.65);
}

TEST_CASE("boundary coincidences (w-zminus) and (w-zplus)") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    SUBCASE("Case III at z = z_minus") {
        const auto pr = classify(ref_params(1.0, -0.5));
        const double zm = z_minus(pr, cfg);
        const auto vf = solve(ref_params(zm, -0.5));
        CHECK(vf.regime == Regime::OneSidedAlpha);
        // Gamma(zm) psi(zm; zm) = zm - K: z itself touches the obstacle
        CHECK(rel_eq(vf.evaluate(zm), zm - 1.0, 1e-9));
        // and xi(z_minus) = alpha(z_minus)
        CHECK(std::abs(xi(pr, zm, cfg) - alpha(pr, zm, cfg)) < 1e-9);
    }
    SUBCASE("Case IV at z = z_plus") {
        const auto pr = classify(ref_params(1.0, 0.3));
        const double zp = z_plus(pr, cfg);
        const auto vf = solve(ref_params(zp, 0.3));
        CHECK(vf.regime == Regime::OneSidedAlpha);
        // obstacle touched at z0 without stopping there
        CHECK(rel_eq(vf.evaluate(pr.z0), pr.z0 - 1.0, 1e-9));
        CHECK(!vf.region.contains(pr.z0));
    }
}

TEST_CASE("tiny |beta| reduces to the classical GBM call") {
    for (double beta : {1e-7, -1e-7}) {
        for (double z : {0.5, 2.0, 5.0}) {
            CAPTURE(beta);
            CAPTURE(z);
            const auto p = ref_params(z, beta);
            const auto vf = solve(p);
            double worst = 0;
            for (double x : testutil::geomspace(1e-3, 10 * vf.profile.z0, 500)) {
                const double ref = gbm_reference_value(p.r, p.b, p.sigma, p.K, x);
                worst = std::max(worst, std::abs(vf.evaluate(x) - ref) / ref);
            }
            CHECK(worst < 1e-5);
        }
    }
}

TEST_CASE("smooth_fit_gap: frozen values and closed-form agreement") {
    const auto pr = classify(ref_params(1.0, -0.1));
    const double zb = *pr.zbeta, z0 = pr.z0;
    SUBCASE("closed form vanishes exactly at zbeta") {
        const auto gap = smooth_fit_gap(ref_params(zb, -0.1));
        CHECK(gap.gap_psi_closed == 0.0);
        CHECK(gap.gap_p_closed == 0.0);
        CHECK(std::abs(gap.gap_psi) < 1e-10);
        CHECK(std::abs(gap.gap_p) < 1e-10);
    }
    SUBCASE("midpoint: frozen oracle values, strictly negative") {
        const auto gap = smooth_fit_gap(ref_params((zb + z0) / 2, -0.1));
        CHECK(rel_eq(gap.gap_psi, -0.0473035836410339353, 1e-11));
        CHECK(rel_eq(gap.gap_p, -0.335713310574987243, 1e-11));
        CHECK(std::abs(gap.gap_psi - gap.gap_psi_closed) < 1e-10);
        CHECK(std::abs(gap.gap_p - gap.gap_p_closed) < 1e-10);
        CHECK(gap.gap_p < 0);
    }
    SUBCASE("right endpoint z0: the extreme gap value") {
        const auto gap = smooth_fit_gap(ref_params(z0, -0.1));
        CHECK(rel_eq(gap.gap_psi, -0.0752801773764088199, 1e-11));
        const double endpoint =
            2 * (-0.1) * 1.0 / ((pr.n - 1) * (1 - (-0.1)) * std::pow(z0, pr.n));
        CHECK(rel_eq(gap.gap_psi, endpoint, 1e-11));
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(smooth_fit_gap(ref_params(1.0, -0.1)), DomainError);   // z < zbeta
        CHECK_THROWS_AS(smooth_fit_gap(ref_params(2.5, -0.5)), CaseMismatch);  // Case III
    }
}

TEST_CASE("stopping_rule per regime") {
    const auto one = solve(ref_params(1.0, -0.1));
    REQUIRE(stopping_rule(one).components.size() == 1);
    CHECK(stopping_rule(one).components[0].lo == one.constants.at("a"));

    const auto pt = solve(ref_params(1.6, -0.5));
    REQUIRE(stopping_rule(pt).components.size() == 2);

    const auto two = solve(ref_params(8.0, 0.3));
    REQUIRE(stopping_rule(two).components.size() == 2);
    CHECK(two.region.components[0].lo == two.profile.z0);
    CHECK(two.region.components[0].hi == two.constants.at("gamma"));
    CHECK(two.region.components[1].lo == two.constants.at("zeta"));
    // Cl, Dl, Cr, Dr all strictly positive
    for (const char* k : {"Cl", "Dl", "Cr", "Dr"}) CHECK(two.constants.at(k) > 0);
}

TEST_CASE("JSON round trip is exact") {
    for (const auto& e : atlas()) {
        CAPTURE(e.name);
        const auto vf = solve(e.params);
        const auto j = to_json(vf);
        const auto vf2 = vf_from_json(nlohmann::json::parse(j.dump()));
        REQUIRE(vf2.pieces.size() == vf.pieces.size());
        for (size_t i = 0; i < vf.pieces.size(); ++i) {
            CHECK(vf2.pieces[i].lo == vf.pieces[i].lo);
            CHECK(vf2.pieces[i].hi == vf.pieces[i].hi);
            CHECK(vf2.pieces[i].cn == vf.pieces[i].cn);
            CHECK(vf2.pieces[i].cm == vf.pieces[i].cm);
        }
        CHECK(vf2.regime == vf.regime);
        CHECK(to_json(vf2).dump() == j.dump());
        CHECK(vf2.evaluate(1.2345) == vf.evaluate(1.2345));
    }
}

TEST_CASE("solve propagates validation errors") {
    CHECK_THROWS_AS(solve({0.05, 0.1, 0.3, 1, 1, -0.1}), AssumptionViolated);
    CHECK_THROWS_AS(solve({0.1, 0.05, 0.3, 1, 1, 0.0}), DegenerateBeta);
}

TEST_CASE("evaluate and derivatives reject nonpositive spots") {
    const auto vf = solve(ref_params(1.0, -0.1));
    CHECK_THROWS_AS(vf.evaluate(0.0), DomainError);
    CHECK_THROWS_AS(vf.evaluate(-1.0), DomainError);
    CHECK_THROWS_AS(vf.d_left(0.0), DomainError);
    CHECK_THROWS_AS(vf.d_right(-0.5), DomainError);
}
