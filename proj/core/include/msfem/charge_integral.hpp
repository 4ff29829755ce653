#pragma once

#include <span>
#include <vector>

namespace msfem {

/// Piecewise-Taylor approximation S(x, t) of the accumulated charge
/// int_0^t rho(x, tau) dtau, kept as nodal values.
///
/// [0, T] is split into `subintervals` pieces with anchors t_j = j T / N.
/// Inside (t_j, t_{j+1}] the value is
///   S(t) = S(t_j) + (t - t_j) rho(t_j) + (t - t_j)^2 / 2 * rho_t(t_j),
/// where S(t_j) is the trapezoidal integral of the recorded densities and
/// rho_t(t_j) the backward difference of the last two records. The first
/// anchor uses the rho_t supplied to start().
class ChargeIntegral
{
public:
    /// Throws std::invalid_argument unless final_time > 0 and subintervals >= 1.
    ChargeIntegral(double final_time, int subintervals);

    void start(std::vector<double> rho0, std::vector<double> rho_t0);
    bool started() const { return started_; }

    /// Density after a completed step at time t (strictly increasing).
    void record(double t, std::span<const double> rho);

    /// S(t) for t in the current subinterval. Throws std::logic_error before start().
    std::vector<double> value(double t) const;

    double anchor_time() const { return anchor_t_; }
    int anchors_passed() const { return anchor_index_; }

private:
    double final_time_;
    int subintervals_;
    bool started_ = false;
    int anchor_index_ = 0;
    double anchor_t_ = 0.0;
    std::vector<double> s_anchor_, rho_anchor_, rho_t_anchor_;
    double last_t_ = 0.0;
    std::vector<double> last_rho_, integral_;
};

} // namespace msfem
