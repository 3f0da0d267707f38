#include "fracns/verify_suites.hpp"

#include "fracns/analysis.hpp"
#include "fracns/contour.hpp"
#include "fracns/gammafn.hpp"
#include "fracns/mainardi.hpp"
#include "fracns/mittag_leffler.hpp"
#include "fracns/operator_audits.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace fracns::cli {

namespace {

class Csv {
public:
    Csv(const std::string& dir, const std::string& name, const std::string& header) {
        std::filesystem::create_directories(dir);
        os_.open((std::filesystem::path(dir) / name).string());
        os_.precision(16);
        os_ << header << "\n";
    }
    template <typename... Ts>
    void row(const Ts&... vs) {
        bool first = true;
        ((os_ << (first ? "" : ",") << vs, first = false), ...);
        os_ << "\n";
    }

private:
    std::ofstream os_;
};

void expect(SuiteResult& res, bool ok, const std::string& what) {
    ++res.checks;
    if (!ok) res.failures.push_back(what);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

SuiteResult run_suite_specfun(const std::string& dir) {
    using namespace fracns::specfun;
    SuiteResult res{"specfun", 0, {}};
    Csv csv(dir, "specfun_report.csv", "check,parameter,value,reference,abs_err");

    // E_{1,1} vs exp on [-50, 5]
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double z = -50.0 + 55.0 * i / 999.0;
        worst = std::max(worst,
                         std::abs(mittag_leffler(1.0, 1.0, z) - std::exp(z)) /
                             std::max(std::exp(z), 1e-300));
    }
    csv.row("E11_vs_exp", "sweep[-50,5]", worst, 0.0, worst);
    expect(res, worst < 1e-12, "E_{1,1} vs exp sweep exceeded 1e-12: " + fmt(worst));

    // E_{1/2}(-x) vs exp(x^2) erfc(x)
    worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = 5.0 * i / 200.0;
        const double want = std::exp(x * x) * std::erfc(x);
        worst = std::max(worst, std::abs(mittag_leffler(0.5, 1.0, -x) - want) / want);
    }
    csv.row("Ehalf_vs_erfc", "sweep[0,5]", worst, 0.0, worst);
    expect(res, worst < 1e-10, "E_{1/2} vs erfc identity exceeded 1e-10: " + fmt(worst));

    // moment identity
    for (double a : {0.3, 0.5, 0.7}) {
        for (double q : {0.0, 1.0, 2.0, 3.0}) {
            const double got = mainardi_moment(FractionalOrder(a), q);
            const double want = gamma_fn(q + 1.0) / gamma_fn(a * q + 1.0);
            csv.row("mainardi_moment", "a=" + fmt(a) + ";q=" + fmt(q), got, want,
                    std::abs(got - want));
            expect(res, std::abs(got - want) < 1e-8,
                   "moment identity a=" + fmt(a) + " q=" + fmt(q));
        }
    }

    // recursion identity across zones
    for (double a : {0.3, 0.5, 0.7}) {
        for (double b : {0.5, 1.0}) {
            for (double z : {-0.5, -5.0, -40.0, -100.0}) {
                const double lhs = mittag_leffler(a, b, z);
                const double rhs = reciprocal_gamma(b) + z * mittag_leffler(a, b + a, z);
                const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
                csv.row("recursion", "a=" + fmt(a) + ";b=" + fmt(b) + ";z=" + fmt(z), lhs, rhs,
                        std::abs(lhs - rhs));
                expect(res, std::abs(lhs - rhs) < 1e-9 * scale,
                       "recursion identity a=" + fmt(a) + " b=" + fmt(b) + " z=" + fmt(z));
            }
        }
    }
    return res;
}

SuiteResult run_suite_operators(const std::string& dir) {
    using namespace fracns::solops;
    SuiteResult res{"operators", 0, {}};
    Csv csv(dir, "operators_report.csv", "lemma,beta,t,raw_norm,constant");

    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> ua(0.25, 0.95), ul(0.2, 100.0), ut(0.1, 2.5);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double a = ua(rng), lam = ul(rng), t = ut(rng);
        const double ta = std::pow(t, a);
        const double sS = specfun::mittag_leffler(a, 1.0, -lam * ta);
        const double sT = std::pow(t, a - 1.0) * specfun::mittag_leffler(a, a, -lam * ta);
        const double cS = contour_eval_scalar(a, lam, t, FamilyKind::S);
        const double cT = contour_eval_scalar(a, lam, t, FamilyKind::T);
        worst = std::max({worst, std::abs(cS - sS) / std::max(1.0, std::abs(sS)),
                          std::abs(cT - sT) / std::max(1.0, std::abs(sT))});
    }
    expect(res, worst < 1e-8, "contour vs diagonal symbols exceeded 1e-8: " + fmt(worst));

    auto op = spectral::SpectralOperator::synthetic({1.0, 2.0, 4.0, 9.0, 16.0, 64.0, 256.0, 1024.0});
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
        auto fine = audit_operator_bounds(fam, {0.5, 0.75}, log_grid(200));
        for (const auto& row : rep.rows) {
            csv.row(row.lemma + "(a=" + fmt(a) + ")", row.beta, row.t, row.raw_norm, row.constant);
        }
        for (const char* lemma : {"S_uniform", "AS", "T_uniform", "AT"}) {
            const double c = rep.empirical_constant(lemma, 0.0);
            const double cf = fine.empirical_constant(lemma, 0.0);
            expect(res, std::isfinite(c) && std::abs(c - cf) <= 0.1 * std::max(c, cf),
                   std::string(lemma) + " constant unstable under grid refinement (a=" + fmt(a) +
                       ")");
        }
        for (double b : {0.5, 0.75}) {
            const double c = rep.empirical_constant("AbetaT", b);
            const double cf = fine.empirical_constant("AbetaT", b);
            expect(res, std::isfinite(c) && std::abs(c - cf) <= 0.1 * std::max(c, cf),
                   "AbetaT constant unstable (a=" + fmt(a) + ", b=" + fmt(b) + ")");
        }

        // commutation residual on a random grid field
        spectral::SpectralGrid g(2, 16, 1.0);
        OperatorFamily gf(a, spectral::SpectralOperator::stokes(g));
        auto u = spectral::random_divergence_free_field(g, 2.0, 31 + static_cast<unsigned>(a * 100));
        const double resid = check_commutation(gf, 0.5, u, 0.3);
        expect(res, resid <= 1e-13, "commutation residual above 1e-13 (a=" + fmt(a) + ")");
    }
    return res;
}

SuiteResult run_suite_bilinear(const std::string& dir, unsigned long long seed) {
    using namespace fracns::analysis;
    SuiteResult res{"bilinear", 0, {}};
    Csv csv(dir, "bilinear_report.csv", "quantity,n_modes,value");

    // sup across the decay family gamma in {1,2,3}: the smooth members attain
    // the ratio sup, the rough ones alone drift with resolution
    spectral::SpectralGrid coarse(2, 16, 1.0), fine(2, 32, 1.0);
    auto sample = [&](const spectral::SpectralGrid& g) {
        EstimatedConstants best;
        for (double gamma : {1.0, 2.0, 3.0}) {
            auto e = estimate_bilinear_constants(g, 500, gamma, seed);
            csv.row("c1(gamma=" + fmt(gamma) + ")", g.n_modes(), e.c1);
            csv.row("c2(gamma=" + fmt(gamma) + ")", g.n_modes(), e.c2);
            best.c1 = std::max(best.c1, e.c1);
            best.c2 = std::max(best.c2, e.c2);
            best.c1_lip = std::max(best.c1_lip, e.c1_lip);
            best.c2_lip = std::max(best.c2_lip, e.c2_lip);
        }
        return best;
    };
    auto ec = sample(coarse);
    auto ef = sample(fine);
    csv.row("c1_sup", 16, ec.c1);
    csv.row("c1_sup", 32, ef.c1);
    csv.row("c2_sup", 16, ec.c2);
    csv.row("c2_sup", 32, ef.c2);

    expect(res, std::isfinite(ec.c1) && ec.c1 > 0.0, "c1 not finite-positive");
    expect(res, std::isfinite(ec.c2) && ec.c2 > 0.0, "c2 not finite-positive");
    expect(res, std::abs(ec.c1 - ef.c1) <= 0.2 * std::max(ec.c1, ef.c1),
           "c1 unstable under mode doubling: " + fmt(ec.c1) + " vs " + fmt(ef.c1));
    expect(res, std::abs(ec.c2 - ef.c2) <= 0.2 * std::max(ec.c2, ef.c2),
           "c2 unstable under mode doubling: " + fmt(ec.c2) + " vs " + fmt(ef.c2));
    expect(res, std::isfinite(ec.c1_lip) && std::isfinite(ec.c2_lip),
           "Lipschitz variants not finite");

    // Taylor-Green: nonlinearity is a pure gradient
    auto tg = spectral::taylor_green(coarse);
    const double fu = spectral::nonlinear_term(tg).l2_norm();
    csv.row("taylor_green_Fu", 16, fu);
    expect(res, fu < 1e-10, "Taylor-Green Fu above 1e-10: " + fmt(fu));
    return res;
}

SuiteResult run_suite_regularity(const std::string& dir) {
    using namespace fracns::analysis;
    SuiteResult res{"regularity", 0, {}};
    Csv csv(dir, "regularity_report.csv", "case,beta,theta_measured,theta_predicted,r2");

    auto op = spectral::SpectralOperator::synthetic({1.0});
    // calibration on pure powers
    for (double theta : {0.2, 0.4, 0.6}) {
        const int n = 4097;
        std::vector<double> ts(n);
        std::vector<spectral::SpectralField> us;
        us.reserve(n);
        for (int i = 0; i < n; ++i) {
            ts[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
            auto u = spectral::SpectralField::synthetic(1);
            u.at(0, 0) = std::pow(ts[static_cast<std::size_t>(i)], theta);
            us.push_back(std::move(u));
        }
        auto rep = estimate_holder(ts, us, op, 0.0, theta);
        csv.row("power_calibration", 0.0, rep.theta_measured, theta, rep.fit_r2);
        expect(res, std::abs(rep.theta_measured - theta) < 0.02,
               "calibration slope off for theta=" + fmt(theta) + ": " + fmt(rep.theta_measured));
    }

    // S_alpha trajectories with datum in D(A)
    for (double a : {0.3, 0.5, 0.7}) {
        for (double beta : {0.5, 0.75}) {
            solops::OperatorFamily fam(a, op);
            const int n = 2048;
            std::vector<double> ts(n);
            std::vector<spectral::SpectralField> us;
            us.reserve(n);
            for (int i = 0; i < n; ++i) {
                const double t = 1e-4 + (0.5 - 1e-4) * i / (n - 1);
                ts[static_cast<std::size_t>(i)] = t;
                auto u = spectral::SpectralField::synthetic(1);
                u.at(0, 0) = fam.symbol_S(1.0, t);
                us.push_back(std::move(u));
            }
            auto rep = estimate_holder(ts, us, op, beta, a);
            csv.row("S_trajectory(a=" + fmt(a) + ")", beta, rep.theta_measured,
                    rep.theta_predicted, rep.fit_r2);
            expect(res, rep.theta_measured >= a * (1.0 - beta) - 0.1,
                   "S trajectory exponent below prediction (a=" + fmt(a) + ", b=" + fmt(beta) +
                       "): " + fmt(rep.theta_measured));
        }
    }
    return res;
}

std::vector<SuiteResult> run_suites(const std::string& which, const std::string& dir,
                                    unsigned long long seed) {
    std::vector<SuiteResult> out;
    const bool all = which == "all";
    if (all || which == "specfun") out.push_back(run_suite_specfun(dir));
    if (all || which == "operators") out.push_back(run_suite_operators(dir));
    if (all || which == "bilinear") out.push_back(run_suite_bilinear(dir, seed));
    if (all || which == "regularity") out.push_back(run_suite_regularity(dir));
    if (out.empty()) {
        throw std::invalid_argument("unknown verify suite: " + which +
                                    " (use specfun|operators|bilinear|regularity|all)");
    }
    return out;
}

} // namespace fracns::cli
