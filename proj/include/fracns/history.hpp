#pragma once

#include "fracns/spectral.hpp"

#include <vector>

namespace fracns::solver {

using spectral::SpectralField;
using spectral::SpectralOperator;

/// Sampled trajectory on a window covering [t_now - r, t_now], interpolated
/// piecewise-linearly in coefficient space. Doubles as the initial datum
/// (samples on [-r, 0]) and as the growing solution trajectory.
class HistorySegment {
public:
    HistorySegment(double delay_r, std::vector<double> times, std::vector<SpectralField> fields);

    /// Constant-in-time datum phi(t) = phi0 on [-r, 0].
    static HistorySegment constant(double delay_r, const SpectralField& phi0);

    double delay() const { return delay_r_; }
    double t_now() const { return times_.back(); }
    double t_front() const { return times_.front(); }
    std::size_t size() const { return times_.size(); }
    const std::vector<double>& times() const { return times_; }
    const SpectralField& field(std::size_t i) const { return fields_[i]; }

    /// Linear interpolation; throws std::out_of_range on a history gap.
    SpectralField interpolate(double t) const;

    void append(double t, SpectralField u);

    /// sup over samples in [t_now - r, t_now] of ||A^beta u||  (the Y_beta norm)
    double window_sup_norm(const SpectralOperator& op, double beta) const;

    /// Samples covering [t_from - slack, t_now], times shifted so that t_now
    /// maps to zero: the initial datum of a reset restart.
    HistorySegment shifted_tail() const;

private:
    double delay_r_;
    std::vector<double> times_;
    std::vector<SpectralField> fields_;
};

/// History plus one tentative newest sample; the immutable view handed to
/// force evaluation inside the fixed-point iteration.
class HistoryView {
public:
    HistoryView(const HistorySegment& base, double t_new, const SpectralField& u_new)
        : base_(base), t_new_(t_new), u_new_(&u_new) {}

    double delay() const { return base_.delay(); }
    double t_now() const { return t_new_; }
    SpectralField interpolate(double t) const;

private:
    const HistorySegment& base_;
    double t_new_;
    const SpectralField* u_new_;
};

} // namespace fracns::solver
