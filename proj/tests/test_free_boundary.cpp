#include "skewcall/free_boundary.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace skewcall;
using testutil::ref_params;
using testutil::rel_eq;

namespace {
// reference profiles: r=0.1, b=0.05, sigma=0.3, K=1
const CaseProfile kII = classify(ref_params(1.0, -0.1));
const CaseProfile kIII = classify(ref_params(1.0, -0.5));
const CaseProfile kIV = classify(ref_params(1.0, 0.3));
const CaseProfile kI = classify(ref_params(1.0, -0.3, -0.05));
}  // namespace

TEST_CASE("F: paper identities") {
    testutil::ParamSampler gen(555);
    for (int i = 0; i < 60; ++i) {
        const auto p = gen.next();
        const auto pr = classify(p);
        const double B = pr.B_at(p.z);
        // F(z0; z) = -(n-m) K B(z) / (n-1)
        CHECK(rel_eq(F(pr, pr.z0, p.z), -(pr.n - pr.m) * p.K * B / (pr.n - 1), 1e-11));
        CHECK((F(pr, pr.z0, p.z) > 0) == (p.beta < 0));
        // F(z; z) closed form
        const double fzz = (1 - p.beta) / (1 + p.beta) *
                           ((pr.n - pr.skew_ratio()) * p.z - pr.n * p.K) *
                           std::pow(p.z, pr.n - pr.m);
        CHECK(rel_eq(F(pr, p.z, p.z), fzz, 1e-11));
        // x -> 0 limit: F -> -m K B(z)
        CHECK(rel_eq(F(pr, 1e-9 * p.z, p.z), -pr.m * p.K * B, 1e-6));
        CHECK((F(pr, 1e-9 * p.z, p.z) < 0) == (p.beta < 0));
    }
}

TEST_CASE("alpha: frozen roots and residuals") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    SUBCASE("Case II, z = 1") {
        const double a = alpha(kII, 1.0, cfg);
        CHECK(rel_eq(a, 3.24823363826069484, 1e-12));
        CHECK(a > *kII.zbeta);
        CHECK(a < kII.z0);
        CHECK(std::abs(F_hat(kII, a, 1.0)) < 1e-10);
        // dF/dx > 0 at the root
        const double h = 1e-6;
        CHECK(F_hat(kII, a + h, 1.0) > F_hat(kII, a - h, 1.0));
    }
    SUBCASE("Case I, z = 1") {
        CHECK(rel_eq(alpha(kI, 1.0, cfg), 1.42891823228895869, 1e-12));
    }
    SUBCASE("Case III, z = 1.35") {
        CHECK(rel_eq(alpha(kIII, 1.35, cfg), 2.31138484913640886, 1e-12));
    }
}

TEST_CASE("alpha: limits") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    // z -> 0 limit is z0
    CHECK(std::abs(alpha(kII, 1e-6, cfg) - kII.z0) < 1e-4 * kII.z0);
    // z -> zbeta limit is zbeta (Cases I/II)
    const double zb = *kII.zbeta;
    CHECK(std::abs(alpha(kII, zb * (1 - 1e-9), cfg) - zb) < 1e-4 * zb);
    // Case III: z -> frakC*zc limit is zc
    const double edge = *kIII.frakC * kIII.zc;
    CHECK(std::abs(alpha(kIII, edge * (1 - 1e-9), cfg) - kIII.zc) < 1e-4 * kIII.zc);
}

TEST_CASE("alpha: strictly decreasing on its domain (Cases I-III)") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    for (const CaseProfile* pr : {&kI, &kII, &kIII}) {
        const double hi = pr->cse == Case::III ? *pr->frakC * pr->zc : *pr->zbeta;
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 100; ++i) {
            const double z = hi * (i + 0.5) / 100.5;
            const double a = alpha(*pr, z, cfg);
            CHECK(a < prev);
            prev = a;
        }
    }
}

TEST_CASE("alpha: Case IV brackets, all three branches") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    SUBCASE("n <= ratio: expansion branch") {
        // beta = 0.3 gives ratio = 1.857 > n = 1.436
        CHECK(kIV.skew_ratio() > kIV.n);
        for (double z : {0.5, 2.0, 5.0, 20.0}) {
            const double a = alpha(kIV, z, cfg);
            CHECK(a > std::max(z, kIV.z0));
            CHECK(std::abs(F_hat(kIV, a, z)) < 1e-9);
        }
    }
    SUBCASE("n > ratio: bounded branches") {
        const auto pr = classify(ref_params(1.0, 0.1));  // ratio = 1.222 < n
        REQUIRE(pr.skew_ratio() < pr.n);
        REQUIRE(pr.zbeta.has_value());
        const double zb = *pr.zbeta;
        CHECK(zb > pr.z0);
        const double a1 = alpha(pr, 0.5 * zb, cfg);
        CHECK(a1 > pr.z0);
        CHECK(a1 < zb);
        const double a2 = alpha(pr, 2.0 * zb, cfg);
        CHECK(a2 > zb);
        CHECK(a2 < 2.0 * zb);
        CHECK(std::abs(F_hat(pr, a2, 2.0 * zb)) < 1e-9);
    }
}

TEST_CASE("alpha: domain errors") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    CHECK_THROWS_AS(alpha(kII, *kII.zbeta * 1.01, cfg), DomainError);
    CHECK_THROWS_AS(alpha(kIII, *kIII.frakC * kIII.zc * 1.01, cfg), DomainError);
    CHECK_THROWS_AS(alpha(kII, -1.0, cfg), DomainError);
}

TEST_CASE("F sign pattern around alpha") {
    testutil::ParamSampler gen(1990);
    int tested = 0;
    for (int i = 0; i < 80 && tested < 40; ++i) {
        const auto p = gen.next();
        const auto pr = classify(p);
        double zmax;
        if (pr.cse == Case::III) zmax = *pr.frakC * pr.zc;
        else if (pr.cse == Case::IV) zmax = 3 * pr.z0;
        else zmax = *pr.zbeta;
        const double z = gen.uniform(0.1, 0.95) * zmax;
        const double a = alpha(pr, z, RootConfig::defaults(p.K));
        for (double f : {1.01, 1.1, 2.0, 10.0})
            CHECK(F_hat(pr, a * f, z) > 0);
        // left of alpha per case: negative on [zc (III) / z or K (I,II) / ...]
        double left_lo = pr.cse == Case::III ? pr.zc
                        : pr.cse == Case::IV ? std::max(z, pr.z0) * 1.0001
                                             : std::max(z, p.K);
        if (left_lo < a * 0.999) {
            for (double t : {0.1, 0.5, 0.9})
                CHECK(F_hat(pr, left_lo + t * (a * 0.999 - left_lo), z) < 0);
        }
        ++tested;
    }
    CHECK(tested >= 40);
}

TEST_CASE("F > 0 beyond zc in Case III with z in [frakC*zc, zc)") {
    const double edge = *kIII.frakC * kIII.zc;
    for (double t : {0.0, 0.3, 0.7, 0.99}) {
        const double z = edge + t * (kIII.zc - edge) * 0.999;
        for (double x : testutil::geomspace(kIII.zc * 1.0001, 10 * kIII.z0, 25))
            CHECK(F_hat(kIII, x, z) > 0);
    }
}

TEST_CASE("g: root property and case signs") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    SUBCASE("g(alpha(z), z) = 0") {
        const double a = alpha(kII, 1.0, cfg);
        CHECK(std::abs(g(kII, a, 1.0, cfg)) < 1e-12);
    }
    SUBCASE("Cases I/II: g >= 0 on (0, alpha]") {
        for (double x : testutil::geomspace(0.01, alpha(kII, 1.0, cfg), 50))
            CHECK(g(kII, x, 1.0, cfg) >= -1e-12);
    }
    SUBCASE("Case III: g(z,z) < 0 just above z_minus") {
        const double zm = z_minus(kIII, cfg);
        const double z = zm * 1.01;
        CHECK(g(kIII, z, z, cfg) < 0);
    }
}

TEST_CASE("z_minus: frozen value, domain and signs") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    const double zm = z_minus(kIII, cfg);
    CHECK(rel_eq(zm, 1.33645491253957175, 1e-11));
    CHECK(zm > kIII.params.K);
    CHECK(zm < *kIII.frakC * kIII.zc);
    CHECK(g(kIII, zm * (1 - 1e-6), zm * (1 - 1e-6), cfg) > 0);
    CHECK(g(kIII, zm * (1 + 1e-6), zm * (1 + 1e-6), cfg) < 0);
    // gbar > 0 near K, < 0 near the right edge
    CHECK(g(kIII, 1.000001, 1.000001, cfg) > 0);
    const double edge = *kIII.frakC * kIII.zc * 0.999999;
    CHECK(g(kIII, edge, edge, cfg) < 0);
    CHECK_THROWS_AS(z_minus(kII, cfg), CaseMismatch);
}

TEST_CASE("z_plus: frozen value and signs") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    const double zp = z_plus(kIV, cfg);
    CHECK(rel_eq(zp, 5.57768468100239617, 1e-11));
    CHECK(zp > kIV.z0);
    CHECK(g(kIV, kIV.z0, kIV.z0 * (1 + 1e-9), cfg) > 0);
    CHECK(g(kIV, kIV.z0, zp * (1 - 1e-6), cfg) > 0);
    CHECK(g(kIV, kIV.z0, zp * (1 + 1e-6), cfg) < 0);
    CHECK_THROWS_AS(z_plus(kIII, cfg), CaseMismatch);
    // n > ratio: z_plus < zbeta since g(z0, zbeta) < 0
    const auto pr = classify(ref_params(1.0, 0.1));
    REQUIRE(pr.skew_ratio() < pr.n);
    CHECK(g(pr, pr.z0, *pr.zbeta, cfg) < 0);
    CHECK(z_plus(pr, cfg) < *pr.zbeta);
}

TEST_CASE("frakz: frozen value and contracts") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    const double zm = z_minus(kIII, cfg);
    CHECK(rel_eq(frakz(kIII, 1.35, cfg), 1.45882907429640695, 1e-10));
    // frakz(z_minus) = z_minus
    CHECK(rel_eq(frakz(kIII, zm, cfg), zm, 1e-9));
    for (double t : {0.2, 0.5, 0.8}) {
        const double z = zm + t * (*kIII.frakC * kIII.zc - zm) * 0.99;
        const double fz = frakz(kIII, z, cfg);
        CHECK(z < fz);
        CHECK(fz < kIII.zc);
        CHECK(std::abs(g(kIII, fz, z, cfg)) < 1e-11);
    }
    CHECK_THROWS_AS(frakz(kIII, zm * 0.9, cfg), DomainError);
    CHECK_THROWS_AS(frakz(kII, 1.0, cfg), CaseMismatch);
}

TEST_CASE("J and xi") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    SUBCASE("J(z;z) = 0") {
        for (double z : {0.3, 1.0, 1.9})
            CHECK(std::abs(J_hat(kIII, z, z)) < 1e-12 * (1 + std::abs(J_hat(kIII, 2 * z, z))));
    }
    SUBCASE("frozen xi values") {
        CHECK(rel_eq(xi(kIII, 0.5, cfg), 3.01426399962466313, 1e-11));
        CHECK(rel_eq(xi(kIII, 1.0, cfg), 2.63489526251012161, 1e-11));
        CHECK(rel_eq(xi(kIII, 1.9, cfg), 2.05136650827565832, 1e-11));
    }
    SUBCASE("xi(z_minus) = alpha(z_minus)") {
        const double zm = z_minus(kIII, cfg);
        CHECK(rel_eq(xi(kIII, zm, cfg), 2.39296718250056548, 1e-10));
        CHECK(std::abs(xi(kIII, zm, cfg) - alpha(kIII, zm, cfg)) < 1e-9);
    }
    SUBCASE("xi strictly decreasing, range (zc, z0), limit at zc") {
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 100; ++i) {
            const double z = kIII.zc * (i + 0.5) / 100.5;
            const double x = xi(kIII, z, cfg);
            CHECK(x < prev);
            CHECK(x > kIII.zc);
            CHECK(x < kIII.z0);
            prev = x;
        }
        CHECK(std::abs(xi(kIII, kIII.zc * (1 - 1e-9), cfg) - kIII.zc) < 1e-4);
        CHECK(std::abs(xi(kIII, 1e-7, cfg) - kIII.z0) < 1e-3);
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(xi(kIII, kIII.zc * 1.01, cfg), DomainError);
        CHECK_THROWS_AS(xi(kIV, 1.0, cfg), CaseMismatch);
    }
}

TEST_CASE("G and H identities") {
    const double z = 8.0;
    SUBCASE("G(x,x;z) = 0 and G -> inf in y") {
        for (double x : {3.3, 5.0, 7.9}) {
            CHECK(std::abs(G(kIV, x, x, z)) == 0.0);
            CHECK(G(kIV, x, 1e6, z) > 1.0);
        }
    }
    SUBCASE("H(z,z;z) = -2 beta z^(1-m) / (1+beta)") {
        const double want = -2 * 0.3 / 1.3 * std::pow(z, 1 - kIV.m);
        CHECK(rel_eq(H(kIV, z, z, z), want, 1e-11));
        CHECK(H(kIV, z, z, z) < 0);
    }
}

TEST_CASE("gamma_zeta: frozen solution, iff boundary, system residuals") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    const double zp = z_plus(kIV, cfg);

    SUBCASE("frozen values at z = 8") {
        const auto gz = gamma_zeta(kIV, 8.0, cfg);
        REQUIRE(gz.has_value());
        CHECK(rel_eq(gz->gamma, 5.30981980495096047, 1e-11));
        CHECK(rel_eq(gz->zeta, 10.7579149547911434, 1e-11));
        CHECK(kIV.z0 < gz->gamma);
        CHECK(gz->gamma < 8.0);
        CHECK(8.0 < gz->zeta);
        CHECK(std::abs(G(kIV, gz->gamma, gz->zeta, 8.0)) < 1e-9);
        CHECK(std::abs(H(kIV, gz->gamma, gz->zeta, 8.0)) < 1e-9);
    }
    SUBCASE("existence iff z > z_plus, at both offsets") {
        for (double off : {1e-3, 1e-6}) {
            CHECK(!gamma_zeta(kIV, zp * (1 - off), cfg).has_value());
            const auto gz = gamma_zeta(kIV, zp * (1 + off), cfg);
            if (off == 1e-3) REQUIRE(gz.has_value());
            if (gz) {
                CHECK(kIV.z0 < gz->gamma);
                CHECK(gz->gamma < zp * (1 + off));
                CHECK(zp * (1 + off) < gz->zeta);
            }
        }
    }
    SUBCASE("original system (GH2)/(GH1) satisfied") {
        const auto gz = gamma_zeta(kIV, 8.0, cfg);
        REQUIRE(gz.has_value());
        const double m = kIV.m, n = kIV.n, K = 1.0, beta = 0.3, z = 8.0;
        const double ga = gz->gamma, zt = gz->zeta;
        const double gh2 = ((m - 1) * zt - m * K) * std::pow(z / zt, n) -
                           (n * (1 - beta) - m * (1 + beta)) / ((n - m) * (1 + beta)) *
                               ((m - 1) * ga - m * K) * std::pow(z, n) * std::pow(ga, -n) -
                           2 * m * beta / ((n - m) * (1 + beta)) * ((n - 1) * ga - n * K) *
                               std::pow(z, m) * std::pow(ga, -m);
        const double gh1 = ((n - 1) * zt - n * K) * std::pow(z, m) * std::pow(zt, -m) +
                           2 * n * beta / ((n - m) * (1 + beta)) * ((m - 1) * ga - m * K) *
                               std::pow(z, n) * std::pow(ga, -n) -
                           (n * (1 + beta) - m * (1 - beta)) / ((n - m) * (1 + beta)) *
                               ((n - 1) * ga - n * K) * std::pow(z, m) * std::pow(ga, -m);
        CHECK(std::abs(gh2) < 1e-9 * std::pow(z, n));
        CHECK(std::abs(gh1) < 1e-9 * std::pow(z, n));
    }
    SUBCASE("no solution below z0 or wrong case") {
        CHECK(!gamma_zeta(kIV, kIV.z0 * 0.5, cfg).has_value());
        CHECK_THROWS_AS(gamma_zeta(kIII, 8.0, cfg), CaseMismatch);
    }
}

TEST_CASE("inner_L: root bracketing from z") {
    const RootConfig cfg = RootConfig::defaults(1.0);
    const double z = 8.0;
    for (double x : {3.4, 4.0, 6.0, 7.5}) {
        const double L = inner_L(kIV, x, z, cfg);
        CHECK(L > z);
        CHECK(std::abs(G(kIV, x, L, z)) < 1e-9);
    }
}
