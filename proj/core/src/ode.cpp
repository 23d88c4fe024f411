#include "spmkit/ode.hpp"

#include <array>
#include <cmath>

#include "spmkit/errors.hpp"

namespace spmkit {

namespace {

// State layout: S, I, I_D, R, cumulative incidence.
using State = std::array<double, 5>;

State derivative(Model model, const SiidrParams& p, double n, const State& y) {
    const double incidence = p.beta * y[0] * y[1] / n;
    State d{};
    switch (model) {
        case Model::Si:
            d[0] = -incidence;
            d[1] = incidence;
            break;
        case Model::Sis:
            d[0] = -incidence + p.mu * y[1];
            d[1] = incidence - p.mu * y[1];
            break;
        case Model::Sir:
        case Model::Siidr:
            d[0] = -incidence;
            d[1] = incidence - (p.mu + p.gamma1) * y[1] + p.gamma2 * y[2];
            d[2] = p.gamma1 * y[1] - p.gamma2 * y[2];
            d[3] = p.mu * y[1];
            break;
    }
    d[4] = incidence;
    return d;
}

}  // namespace

OdeSolution ode_solve(Model model, const SiidrParams& params, double n, double i0,
                      double t_end, double dt) {
    params.validate(model);
    if (n < 1.0) throw ConfigError("ode_solve: population must be >= 1");
    if (i0 <= 0.0 || i0 > n)
        throw ConfigError("ode_solve: initial infected must be in (0, n]");
    if (t_end < 0.0 || dt <= 0.0)
        throw ConfigError("ode_solve: need t_end >= 0 and dt > 0");

    OdeSolution sol;
    sol.model = model;
    sol.n = n;

    State y{n - i0, i0, 0.0, 0.0, 0.0};
    double t = 0.0;
    auto push = [&] {
        sol.time.push_back(t);
        sol.s.push_back(y[0]);
        sol.i.push_back(y[1]);
        sol.i_d.push_back(y[2]);
        sol.r.push_back(y[3]);
        sol.cumulative.push_back(y[4]);
    };
    push();

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));
    for (std::size_t step = 0; step < steps; ++step) {
        const double h = std::min(dt, t_end - t);
        const State k1 = derivative(model, params, n, y);
        State y2;
        for (int c = 0; c < 5; ++c) y2[c] = y[c] + 0.5 * h * k1[c];
        const State k2 = derivative(model, params, n, y2);
        State y3;
        for (int c = 0; c < 5; ++c) y3[c] = y[c] + 0.5 * h * k2[c];
        const State k3 = derivative(model, params, n, y3);
        State y4;
        for (int c = 0; c < 5; ++c) y4[c] = y[c] + h * k3[c];
        const State k4 = derivative(model, params, n, y4);
        for (int c = 0; c < 5; ++c)
            y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        t += h;

        for (int c = 0; c < 4; ++c) {
            if (y[c] < -1e-9 * n)
                throw NumericalError(
                    "ode_solve: compartment went negative; use a smaller dt");
        }
        const double total = y[0] + y[1] + y[2] + y[3];
        if (std::abs(total - n) > 1e-8 * n)
            throw NumericalError("ode_solve: conservation drifted; use a smaller dt");
        push();
    }
    return sol;
}

}  // namespace spmkit
