#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fracns/operator_family.hpp"
#include "fracns/operator_audits.hpp"
#include "fracns/contour.hpp"
#include "fracns/mittag_leffler.hpp"
#include "fracns/mainardi.hpp"
#include "fracns/gammafn.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace fracns;
using namespace fracns::solops;
using namespace fracns::spectral;

TEST_CASE("apply_S: classical limit, erfc value, strong limit at 0") {
    SpectralGrid g(2, 8, 1.0);
    auto op = SpectralOperator::stokes(g);
    auto u = random_divergence_free_field(g, 2.0, 5);

    // alpha = 1 surrogate: coefficients scale by exp(-lambda t)
    OperatorFamily classical(1.0, op);
    auto su = classical.apply_S(0.7, u);
    for (std::size_t m = 0; m < u.modes(); ++m) {
        const double lam = op.eigenvalue(m);
        if (lam == 0.0) continue;
        for (int c = 0; c < 2; ++c) {
            CHECK(std::abs(su.at(c, m) - u.at(c, m) * std::exp(-lam * 0.7)) < 1e-14);
        }
    }

    // single mode lambda = 4, alpha = 0.5, t = 1: E_{1/2}(-4) = e^{16} erfc(4)
    OperatorFamily fam(0.5, op);
    const double want = std::exp(16.0) * std::erfc(4.0);
    CHECK(fam.symbol_S(4.0, 1.0) == doctest::Approx(want).epsilon(1e-10));

    // t -> 0+: || S u - u || decreases monotonically to 0
    double prev = 1e300;
    for (int k = 2; k <= 6; ++k) {
        auto st = fam.apply_S(std::pow(10.0, -k), u);
        st -= u;
        const double d = st.l2_norm();
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 1e-2 * u.l2_norm());
}

TEST_CASE("apply_T: scaling law and reference value") {
    SpectralGrid g(2, 8, 1.0);
    auto op = SpectralOperator::stokes(g);
    OperatorFamily fam(0.5, op);

    // E_{1/2,1/2}(-1) = 1/sqrt(pi) - e erfc(1)
    const double want = 1.0 / std::sqrt(M_PI) - std::exp(1.0) * std::erfc(1.0);
    CHECK(fam.symbol_T(1.0, 1.0) == doctest::Approx(want).epsilon(1e-10));

    // factor decomposition against specfun at random (lambda, t)
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ul(0.1, 50.0), ut(0.05, 3.0), ua(0.25, 0.95);
    for (int i = 0; i < 100; ++i) {
        const double lam = ul(rng), t = ut(rng), a = ua(rng);
        OperatorFamily f(a, op);
        const double direct = f.symbol_T(lam, t);
        const double decomposed =
            std::pow(t, a - 1.0) * specfun::mittag_leffler(a, a, -lam * std::pow(t, a));
        CHECK(std::abs(direct - decomposed) < 1e-12 * std::max(1.0, std::abs(direct)));
    }

    CHECK_THROWS_AS(fam.symbol_T(1.0, 0.0), std::domain_error);
}

TEST_CASE("kernel mass identity") {
    auto op = SpectralOperator::synthetic({1.0});
    for (double a : {0.3, 0.5, 0.7, 1.0}) {
        OperatorFamily fam(a, op);
        for (double lam : {0.5, 4.0, 400.0}) {
            for (double tau : {1e-6, 0.01, 0.5, 2.0}) {
                const double got = fam.kernel_mass(lam, tau);
                const double want = std::pow(tau, a) *
                                    specfun::mittag_leffler(a, a + 1.0, -lam * std::pow(tau, a));
                CHECK(std::abs(got - want) < 1e-11 * std::max(want, 1e-12));
            }
        }
        // quadrature cross-check: substitute u = s^a, so
        // int_0^tau s^{a-1} E_{a,a}(-lam s^a) ds = (1/a) int_0^{tau^a} E_{a,a}(-lam u) du
        const double tau = 0.8, lam = 3.0;
        if (a < 1.0) {
            auto f = [&](double u) { return specfun::mittag_leffler(a, a, -lam * u); };
            const double quad = oracles::integrate(f, 0.0, std::pow(tau, a), 1e-11) / a;
            CHECK(std::abs(fam.kernel_mass(lam, tau) - quad) < 1e-9);
        }
    }
}

TEST_CASE("contour quadrature matches diagonal symbols") {
    // spec-anchored checks
    CHECK(contour_eval_scalar(0.5, 4.0, 1.0, FamilyKind::S) ==
          doctest::Approx(std::exp(16.0) * std::erfc(4.0)).epsilon(1e-8));
    const double t_ref = 1.0 / std::sqrt(M_PI) - std::exp(1.0) * std::erfc(1.0);
    CHECK(contour_eval_scalar(0.5, 1.0, 1.0, FamilyKind::T) ==
          doctest::Approx(t_ref).epsilon(1e-8));
    CHECK(std::abs(contour_eval_scalar(0.999, 1.0, 1.0, FamilyKind::S) - std::exp(-1.0)) < 1e-2);

    // 50 random triples vs the Mittag-Leffler path
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ua(0.25, 0.95), ul(0.2, 100.0), ut(0.1, 2.5);
    for (int i = 0; i < 50; ++i) {
        const double a = ua(rng), lam = ul(rng), t = ut(rng);
        const double ta = std::pow(t, a);
        const double sS = specfun::mittag_leffler(a, 1.0, -lam * ta);
        const double sT = std::pow(t, a - 1.0) * specfun::mittag_leffler(a, a, -lam * ta);
        CAPTURE(a); CAPTURE(lam); CAPTURE(t);
        CHECK(std::abs(contour_eval_scalar(a, lam, t, FamilyKind::S) - sS) <
              1e-8 * std::max(1.0, std::abs(sS)));
        CHECK(std::abs(contour_eval_scalar(a, lam, t, FamilyKind::T) - sT) <
              1e-8 * std::max(1.0, std::abs(sT)));
    }
}

TEST_CASE("operator bound audit: exact sups and grid stability") {
    SpectralGrid g(2, 16, 1.0);
    auto op = SpectralOperator::stokes(g);

    // log-spaced grids sharing endpoints, the fine one 10x denser
    auto log_grid = [](int n) {
        std::vector<double> t(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            t[static_cast<std::size_t>(i)] =
                1e-6 * std::pow(2.0 / 1e-6, static_cast<double>(i) / (n - 1));
        }
        return t;
    };

    for (double a : {0.3, 0.5, 0.7}) {
        OperatorFamily fam(a, op);
        auto rep = audit_operator_bounds(fam, {0.5, 0.75}, log_grid(20));
        auto rep_fine = audit_operator_bounds(fam, {0.5, 0.75}, log_grid(200));

        // exact sups: ||S|| <= 1 (complete monotonicity)
        CHECK(rep.empirical_constant("S_uniform", 0.0) <= 1.0 + 1e-12);
        // T bound: the symbol sup approaches E_{a,a}(0) = 1/Gamma(a) as lam t^a -> 0
        const double b1 = rep.empirical_constant("T_uniform", 0.0);
        CHECK(b1 <= 1.0 / specfun::gamma_fn(a) + 1e-10);
        CHECK(b1 == doctest::Approx(1.0 / specfun::gamma_fn(a)).epsilon(0.02));

        for (const char* lemma : {"S_uniform", "AS", "T_uniform", "AT"}) {
            const double c = rep.empirical_constant(lemma, 0.0);
            const double cf = rep_fine.empirical_constant(lemma, 0.0);
            CHECK(std::isfinite(c));
            CAPTURE(lemma); CAPTURE(a);
            CHECK(std::abs(c - cf) <= 0.1 * std::max(c, cf));
        }
        for (double b : {0.5, 0.75}) {
            for (const char* lemma : {"AbetaT", "AbetaS"}) {
                const double c = rep.empirical_constant(lemma, b);
                const double cf = rep_fine.empirical_constant(lemma, b);
                CHECK(std::isfinite(c));
                CHECK(std::abs(c - cf) <= 0.1 * std::max(c, cf));
            }
        }
    }
}

TEST_CASE("commutation residual is at rounding level") {
    SpectralGrid g(2, 16, 1.0);
    auto op = SpectralOperator::stokes(g);
    OperatorFamily fam(0.5, op);
    auto u = random_divergence_free_field(g, 2.0, 9);

    CHECK(check_commutation(fam, 0.5, u, 0.5) <= 1e-13);
    CHECK(check_commutation(fam, 0.0, u, 0.5) == 0.0);
    CHECK(check_commutation(fam, 0.75, u, 0.1) <= 1e-13);
}

TEST_CASE("uniform-topology continuity of A^beta T(t) (qualitative)") {
    SpectralGrid g(2, 16, 1.0);
    auto op = SpectralOperator::stokes(g);
    OperatorFamily fam(0.6, op);
    const double t0 = 0.5, beta = 0.5;
    double prev = 1e300;
    for (double dt : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
        double sup = 0.0;
        for (std::size_t m = 0; m < op.size(); ++m) {
            const double lam = op.eigenvalue(m);
            if (lam <= 0.0) continue;
            sup = std::max(sup, std::pow(lam, beta) *
                                    std::abs(fam.symbol_T(lam, t0 + dt) - fam.symbol_T(lam, t0)));
        }
        CHECK(sup < prev);
        prev = sup;
    }
}

TEST_CASE("derivative identity d/dt E_a(-lam t^a) = -lam t^{a-1} E_{a,a}(-lam t^a)") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ua(0.3, 0.95), ul(0.2, 20.0), ut(0.2, 2.0);
    for (int i = 0; i < 50; ++i) {
        const double a = ua(rng), lam = ul(rng), t = ut(rng);
        const double h = 1e-5 * t;
        auto Ea = [&](double s) { return specfun::mittag_leffler(a, 1.0, -lam * std::pow(s, a)); };
        const double deriv_fd = (Ea(t + h) - Ea(t - h)) / (2.0 * h);
        const double rhs = -lam * std::pow(t, a - 1.0) *
                           specfun::mittag_leffler(a, a, -lam * std::pow(t, a));
        CAPTURE(a); CAPTURE(lam); CAPTURE(t);
        CHECK(std::abs(deriv_fd - rhs) < 1e-5 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("subordination consistency of the S symbol") {
    for (double a : {0.3, 0.5, 0.7}) {
        for (double lam : {1.0, 4.0}) {
            for (double t : {0.5, 1.0}) {
                const double ta = std::pow(t, a);
                auto f = [&](double s) {
                    return fracns::specfun::mainardi(fracns::specfun::FractionalOrder(a), s) *
                           std::exp(-lam * s * ta);
                };
                const double sub = oracles::integrate(f, 0.0, 20.0, 1e-9);
                const double sym = specfun::mittag_leffler(a, 1.0, -lam * ta);
                CHECK(std::abs(sub - sym) < 1e-6);
            }
        }
    }
}
