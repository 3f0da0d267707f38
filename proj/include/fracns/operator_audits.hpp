#pragma once

#include "fracns/operator_family.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fracns::solops {

/// One normalized operator-norm measurement: `raw` is the exact diagonal
/// operator norm at time t, `constant` the value after dividing out the
/// claimed t-power.
struct BoundRow {
    std::string lemma;
    double beta;
    double t;
    double raw_norm;
    double constant;
};

struct BoundReport {
    std::vector<BoundRow> rows;

    /// sup of `constant` over rows of one lemma/beta combination
    double empirical_constant(const std::string& lemma, double beta) const;
    void write_csv(std::ostream& os) const;
};

/// Audits the operator-family bounds:
///   S_uniform:  ||S(t)||           <= C1
///   AS:         ||A S(t)||         <= C2 t^{-alpha}
///   T_uniform:  ||T(t)||           <= B1 t^{alpha-1}
///   AT:         ||A T(t)||         <= B2 t^{-1}
///   AbetaT:     ||A^b T(t)||       <= B3(b) t^{alpha(1-b)-1}   (each beta)
///   AbetaS:     ||A^b S(t)||       <= C3(b) t^{-alpha b}       (each beta)
/// Norms are sups of the scalar symbol over the operator spectrum plus a
/// log-spaced continuum sweep up to 1e6 (truncation blind spots).
BoundReport audit_operator_bounds(const OperatorFamily& fam, const std::vector<double>& betas,
                                  const std::vector<double>& t_grid);

/// || A^beta S(t) u - S(t) A^beta u || / || A^beta u ||; diagonal operators
/// commute, so this is a pure floating-point residual.
double check_commutation(const OperatorFamily& fam, double beta, const SpectralField& u,
                         double t);

} // namespace fracns::solops
