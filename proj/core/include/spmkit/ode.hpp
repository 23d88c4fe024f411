#pragma once

#include <vector>

#include "spmkit/epidemic.hpp"

namespace spmkit {

/// Continuous-count solution of the homogeneous-mixing rate equations.
/// `cumulative` integrates the incidence beta*S*I/n, so cumulative + i0 is
/// the ever-infected count for every model (it equals I for SI, I+R for SIR
/// and I+I_D+R for SIIDR).
struct OdeSolution {
    std::vector<double> time;
    std::vector<double> s, i, i_d, r;
    std::vector<double> cumulative;
    Model model = Model::Siidr;
    double n = 0.0;

    std::size_t size() const { return time.size(); }
    double ever_infected(std::size_t idx) const { return cumulative[idx] + i[0] + i_d[0]; }
};

/// Fixed-step RK4 integration of
///   dS/dt  = -beta S I / n        (+ mu I for SIS)
///   dI/dt  =  beta S I / n - (mu + gamma1) I + gamma2 I_D
///   dI_D/dt = gamma1 I - gamma2 I_D
///   dR/dt  =  mu I
/// with the SI/SIS/SIR reductions implied by zero rates. Conservation is
/// checked to 1e-8*n per step; a compartment dipping below -1e-9*n raises
/// NumericalError suggesting a smaller dt.
OdeSolution ode_solve(Model model, const SiidrParams& params, double n, double i0,
                      double t_end, double dt);

}  // namespace spmkit
