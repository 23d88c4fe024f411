#pragma once

#include <span>

namespace spmkit {

/// Heavy-tail diagnosis of a degree sequence: discrete power-law MLE above a
/// KS-selected cutoff, compared against a discrete exponential fit on the
/// same tail via a Vuong-style log-likelihood ratio.
struct PowerLawFit {
    double alpha = 0.0;        // power-law exponent, > 1 on success
    int xmin = 0;              // lower cutoff selected by KS scan
    double loglik_ratio = 0.0; // positive favors power-law over exponential
    double p_value = 1.0;      // significance of the normalized ratio
    int n_tail = 0;            // samples at or above xmin
    double ks_distance = 0.0;
};

/// Requires >= 50 samples with max > min; throws NumericalError on a
/// degenerate (all-equal) sequence, ConfigError on too-few samples.
PowerLawFit power_law_fit(std::span<const int> degrees);

/// Hurwitz zeta sum_{k>=0} (k+q)^-s for s > 1, q > 0 (Euler-Maclaurin tail).
double hurwitz_zeta(double s, double q);

}  // namespace spmkit
