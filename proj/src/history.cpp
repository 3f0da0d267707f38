#include "fracns/history.hpp"

#include <cmath>
#include <stdexcept>

namespace fracns::solver {

HistorySegment::HistorySegment(double delay_r, std::vector<double> times,
                               std::vector<SpectralField> fields)
    : delay_r_(delay_r), times_(std::move(times)), fields_(std::move(fields)) {
    if (!(delay_r_ > 0.0)) throw std::invalid_argument("HistorySegment: delay must be positive");
    if (times_.size() < 2 || times_.size() != fields_.size()) {
        throw std::invalid_argument("HistorySegment: need matching times/fields, length >= 2");
    }
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!(times_[i] > times_[i - 1])) {
            throw std::invalid_argument("HistorySegment: times must be strictly increasing");
        }
    }
    const double span = times_.back() - times_.front();
    if (span < delay_r_ - 1e-12 * std::max(1.0, delay_r_)) {
        throw std::invalid_argument("HistorySegment: samples must span at least [t_now - r, t_now]");
    }
    for (const auto& f : fields_) {
        if (f.components() != fields_.front().components() ||
            f.modes() != fields_.front().modes()) {
            throw std::invalid_argument("HistorySegment: all fields must share one grid");
        }
    }
}

HistorySegment HistorySegment::constant(double delay_r, const SpectralField& phi0) {
    return HistorySegment(delay_r, {-delay_r, 0.0}, {phi0, phi0});
}

SpectralField HistorySegment::interpolate(double t) const {
    const double lo = times_.front(), hi = times_.back();
    const double slack = 1e-12 * std::max(1.0, std::abs(hi));
    if (t < lo - slack || t > hi + slack) {
        throw std::out_of_range("HistorySegment: query outside covered window (history gap)");
    }
    t = std::min(std::max(t, lo), hi);
    // locate the panel
    std::size_t k = 0;
    while (k + 2 < times_.size() && times_[k + 1] < t) ++k;
    const double t0 = times_[k], t1 = times_[k + 1];
    const double w = (t - t0) / (t1 - t0);
    SpectralField out = fields_[k];
    out *= (1.0 - w);
    out.axpy(w, fields_[k + 1]);
    return out;
}

void HistorySegment::append(double t, SpectralField u) {
    if (!(t > times_.back())) {
        throw std::invalid_argument("HistorySegment::append: time must advance");
    }
    times_.push_back(t);
    fields_.push_back(std::move(u));
}

double HistorySegment::window_sup_norm(const SpectralOperator& op, double beta) const {
    const double t_lo = t_now() - delay_r_;
    double sup = 0.0;
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (times_[i] < t_lo - 1e-12) continue;
        sup = std::max(sup, spectral::sobolev_norm(op, beta, fields_[i]));
    }
    return sup;
}

HistorySegment HistorySegment::shifted_tail() const {
    const double t_hi = t_now();
    const double t_lo = t_hi - delay_r_;
    std::vector<double> ts;
    std::vector<SpectralField> fs;
    // keep one sample at or below t_lo so the shifted window still spans [-r, 0]
    std::size_t start = 0;
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (times_[i] <= t_lo + 1e-12) start = i;
    }
    for (std::size_t i = start; i < times_.size(); ++i) {
        ts.push_back(times_[i] - t_hi);
        fs.push_back(fields_[i]);
    }
    if (ts.size() < 2) {
        ts.insert(ts.begin(), -delay_r_);
        fs.insert(fs.begin(), fs.front());
    }
    return HistorySegment(delay_r_, std::move(ts), std::move(fs));
}

SpectralField HistoryView::interpolate(double t) const {
    const double t_base = base_.t_now();
    if (t <= t_base) return base_.interpolate(t);
    const double slack = 1e-12 * std::max(1.0, std::abs(t_new_));
    if (t > t_new_ + slack) {
        throw std::out_of_range("HistoryView: query beyond the tentative sample");
    }
    const double w = std::min((t - t_base) / (t_new_ - t_base), 1.0);
    SpectralField out = base_.field(base_.size() - 1);
    out *= (1.0 - w);
    out.axpy(w, *u_new_);
    return out;
}

} // namespace fracns::solver
