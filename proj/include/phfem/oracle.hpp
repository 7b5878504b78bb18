#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "phfem/rod.hpp"
#include "phfem/types.hpp"

namespace phfem {

/// Closed-form rod response by the method of characteristics, for zero
/// prescribed velocity and piecewise-constant traction. Independent of the
/// finite element path: it traces the Riemann invariants v +- sigma/(rho c)
/// back through boundary reflections (velocity flips at the fixed end, the
/// traction end re-emits whatever the applied force dictates).
template <typename Scalar>
class CharacteristicSolution {
public:
    struct Response {
        Scalar velocity;
        Scalar stress;
    };

    explicit CharacteristicSolution(const RodConfig<Scalar>& config) : config_(config) {
        if (!config.dirichlet_velocity.is_zero()) {
            throw std::invalid_argument(
                "characteristic solution: only zero prescribed velocity is supported");
        }
        if (!config.neumann_traction.is_piecewise_constant()) {
            throw std::invalid_argument(
                "characteristic solution: traction must be piecewise constant");
        }
        speed_ = config.wave_speed();
        impedance_ = config.density_per_length * speed_;
    }

    Scalar wave_speed() const { return speed_; }
    Scalar impedance() const { return impedance_; }

    Response operator()(Scalar x, Scalar t) const {
        const Scalar rp = invariant_left_moving(x, t);
        const Scalar rm = invariant_right_moving(x, t);
        return {Scalar(0.5) * (rp + rm), Scalar(0.5) * impedance_ * (rp - rm)};
    }

    /// Interior discontinuity locations at time t: every traction breakpoint
    /// launches one front at x = L that folds between the walls forever.
    std::vector<Scalar> front_positions(Scalar t) const {
        const Scalar length = config_.length;
        std::vector<Scalar> fronts;
        for (Scalar tb : traction_breakpoints()) {
            if (t <= tb) continue;
            const Scalar travelled = std::fmod(speed_ * (t - tb), Scalar(2) * length);
            const Scalar x = std::abs(length - travelled);
            if (x > Scalar(0) && x < length) {
                fronts.push_back(x);
            }
        }
        std::sort(fronts.begin(), fronts.end());
        fronts.erase(std::unique(fronts.begin(), fronts.end()), fronts.end());
        return fronts;
    }

    /// Exact total energy 1/2 int rho v^2 + sigma^2/(EA) dx, integrated
    /// piecewise between the fronts.
    Scalar energy(Scalar t) const {
        std::vector<Scalar> cuts = front_positions(t);
        cuts.insert(cuts.begin(), Scalar(0));
        cuts.push_back(config_.length);
        Scalar total = 0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const Scalar width = cuts[i + 1] - cuts[i];
            if (width <= Scalar(0)) continue;
            const Response r = (*this)(Scalar(0.5) * (cuts[i] + cuts[i + 1]), t);
            total += width * Scalar(0.5) *
                     (config_.density_per_length * r.velocity * r.velocity +
                      r.stress * r.stress / config_.axial_stiffness());
        }
        return total;
    }

    /// Exact boundary work int_0^t v(L, s) tau(s) ds. The tip velocity is
    /// piecewise constant between front round trips, so midpoint evaluation
    /// per subinterval integrates exactly.
    Scalar boundary_work(Scalar t) const {
        const Scalar round_trip = Scalar(2) * config_.length / speed_;
        std::set<Scalar> cuts{Scalar(0), t};
        for (Scalar tb : traction_breakpoints()) {
            for (Scalar s = tb; s < t; s += round_trip) {
                if (s > Scalar(0)) cuts.insert(s);
            }
        }
        Scalar total = 0;
        for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
            const Scalar a = *it;
            const Scalar b = *std::next(it);
            if (b <= a) continue;
            const Scalar mid = Scalar(0.5) * (a + b);
            total += (b - a) * (*this)(config_.length, mid).velocity *
                     config_.neumann_traction(mid);
        }
        return total;
    }

private:
    std::vector<Scalar> traction_breakpoints() const {
        std::vector<Scalar> bps{Scalar(0)};
        if (config_.neumann_traction.shape == SignalShape::Pulse) {
            bps.push_back(config_.neumann_traction.duration);
        }
        return bps;
    }

    // Invariant v - sigma/(rho c), constant along rightward characteristics;
    // generated at the fixed end where the velocity vanishes.
    Scalar invariant_right_moving(Scalar x, Scalar t) const {
        if (speed_ * t <= x) return Scalar(0);
        return -invariant_left_moving(Scalar(0), t - x / speed_);
    }

    // Invariant v + sigma/(rho c), constant along leftward characteristics;
    // generated at the traction end where the stress equals the applied force.
    Scalar invariant_left_moving(Scalar x, Scalar t) const {
        if (speed_ * t <= config_.length - x) return Scalar(0);
        const Scalar t_emit = t - (config_.length - x) / speed_;
        return invariant_right_moving(config_.length, t_emit) +
               Scalar(2) * config_.neumann_traction(t_emit) / impedance_;
    }

    RodConfig<Scalar> config_;
    Scalar speed_{0};
    Scalar impedance_{0};
};

/// One-shot evaluation of the characteristics solution.
template <typename Scalar>
typename CharacteristicSolution<Scalar>::Response exact_rod_response(
    const RodConfig<Scalar>& config, Scalar x, Scalar t) {
    return CharacteristicSolution<Scalar>(config)(x, t);
}

}  // namespace phfem
