#include "msfem/charge_integral.hpp"

#include <stdexcept>

namespace msfem {

ChargeIntegral::ChargeIntegral(double final_time, int subintervals)
    : final_time_(final_time), subintervals_(subintervals)
{
    if (!(final_time > 0.0)) throw std::invalid_argument("charge integral: final time must be > 0");
    if (subintervals < 1) throw std::invalid_argument("charge integral: need at least one subinterval");
}

void ChargeIntegral::start(std::vector<double> rho0, std::vector<double> rho_t0)
{
    if (rho0.size() != rho_t0.size()) throw std::invalid_argument("charge integral: size mismatch");
    started_ = true;
    anchor_index_ = 0;
    anchor_t_ = 0.0;
    last_t_ = 0.0;
    s_anchor_.assign(rho0.size(), 0.0);
    integral_.assign(rho0.size(), 0.0);
    last_rho_ = rho0;
    rho_anchor_ = std::move(rho0);
    rho_t_anchor_ = std::move(rho_t0);
}

void ChargeIntegral::record(double t, std::span<const double> rho)
{
    if (!started_) throw std::logic_error("charge integral: record() before start()");
    if (rho.size() != last_rho_.size()) throw std::invalid_argument("charge integral: size mismatch");
    const double dt = t - last_t_;
    if (!(dt > 0.0)) throw std::invalid_argument("charge integral: times must increase");
    for (std::size_t i = 0; i < rho.size(); ++i) integral_[i] += 0.5 * dt * (last_rho_[i] + rho[i]);

    const double next_anchor = final_time_ * (anchor_index_ + 1) / subintervals_;
    if (t >= next_anchor - 1e-9 * final_time_) {
        s_anchor_ = integral_;
        rho_anchor_.assign(rho.begin(), rho.end());
        for (std::size_t i = 0; i < rho.size(); ++i) rho_t_anchor_[i] = (rho[i] - last_rho_[i]) / dt;
        anchor_t_ = t;
        while (final_time_ * (anchor_index_ + 1) / subintervals_ <= t + 1e-9 * final_time_) ++anchor_index_;
    }
    last_rho_.assign(rho.begin(), rho.end());
    last_t_ = t;
}

std::vector<double> ChargeIntegral::value(double t) const
{
    if (!started_) throw std::logic_error("charge integral: no history, call start() first");
    const double tau = t - anchor_t_;
    std::vector<double> s(s_anchor_.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = s_anchor_[i] + tau * rho_anchor_[i] + 0.5 * tau * tau * rho_t_anchor_[i];
    return s;
}

} // namespace msfem
