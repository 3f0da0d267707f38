#include "fracns/operator_audits.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fracns::solops {

namespace {

// spectrum plus log-spaced continuum sweep, deduplicated by magnitude
std::vector<double> lambda_sweep(const SpectralOperator& op) {
    std::vector<double> lams;
    for (std::size_t m = 0; m < op.size(); ++m) {
        if (op.eigenvalue(m) > 0.0) lams.push_back(op.eigenvalue(m));
    }
    const double lo = op.min_eigenvalue();
    const int n_cont = 400;
    for (int i = 0; i <= n_cont; ++i) {
        lams.push_back(lo * std::pow(1e6 / lo, static_cast<double>(i) / n_cont));
    }
    return lams;
}

} // namespace

double BoundReport::empirical_constant(const std::string& lemma, double beta) const {
    double sup = 0.0;
    bool found = false;
    for (const auto& r : rows) {
        if (r.lemma == lemma && r.beta == beta) {
            sup = std::max(sup, r.constant);
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("BoundReport: no rows for " + lemma);
    return sup;
}

void BoundReport::write_csv(std::ostream& os) const {
    os << "lemma,beta,t,raw_norm,constant\n";
    for (const auto& r : rows) {
        os << r.lemma << "," << r.beta << "," << r.t << "," << r.raw_norm << "," << r.constant
           << "\n";
    }
}

BoundReport audit_operator_bounds(const OperatorFamily& fam, const std::vector<double>& betas,
                                  const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("audit_operator_bounds: empty t grid");
    const double alpha = fam.alpha();
    const auto lams = lambda_sweep(fam.op());
    BoundReport rep;

    auto sup_symbol = [&](auto&& weighted) {
        double sup = 0.0;
        for (double lam : lams) sup = std::max(sup, std::abs(weighted(lam)));
        return sup;
    };

    for (double t : t_grid) {
        if (!(t > 0.0)) throw std::invalid_argument("audit_operator_bounds: t must be positive");

        const double nS = sup_symbol([&](double l) { return fam.symbol_S(l, t); });
        rep.rows.push_back({"S_uniform", 0.0, t, nS, nS});

        const double nAS = sup_symbol([&](double l) { return l * fam.symbol_S(l, t); });
        rep.rows.push_back({"AS", 0.0, t, nAS, nAS * std::pow(t, alpha)});

        const double nT = sup_symbol([&](double l) { return fam.symbol_T(l, t); });
        rep.rows.push_back({"T_uniform", 0.0, t, nT, nT * std::pow(t, 1.0 - alpha)});

        const double nAT = sup_symbol([&](double l) { return l * fam.symbol_T(l, t); });
        rep.rows.push_back({"AT", 0.0, t, nAT, nAT * t});

        for (double b : betas) {
            const double nbT =
                sup_symbol([&](double l) { return std::pow(l, b) * fam.symbol_T(l, t); });
            rep.rows.push_back({"AbetaT", b, t, nbT, nbT * std::pow(t, 1.0 - alpha * (1.0 - b))});

            const double nbS =
                sup_symbol([&](double l) { return std::pow(l, b) * fam.symbol_S(l, t); });
            rep.rows.push_back({"AbetaS", b, t, nbS, nbS * std::pow(t, alpha * b)});
        }
    }
    return rep;
}

double check_commutation(const OperatorFamily& fam, double beta, const SpectralField& u,
                         double t) {
    using spectral::apply_fractional_power;
    const auto& op = fam.op();
    auto lhs = apply_fractional_power(op, beta, fam.apply_S(t, u));
    const auto rhs = fam.apply_S(t, apply_fractional_power(op, beta, u));
    lhs -= rhs;
    const double denom = spectral::sobolev_norm(op, beta, u);
    return denom > 0.0 ? lhs.l2_norm() / denom : lhs.l2_norm();
}

} // namespace fracns::solops
