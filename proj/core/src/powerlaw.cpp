#include "spmkit/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "spmkit/errors.hpp"

namespace spmkit {

double hurwitz_zeta(double s, double q) {
    constexpr int kDirect = 64;
    double sum = 0.0;
    for (int k = 0; k < kDirect; ++k) sum += std::pow(k + q, -s);
    const double a = kDirect + q;
    // Euler-Maclaurin tail from k = kDirect.
    sum += std::pow(a, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(a, -s);
    sum += s * std::pow(a, -s - 1.0) / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * std::pow(a, -s - 3.0) / 720.0;
    return sum;
}

namespace {

// Exact discrete power-law log-likelihood on the tail, up to constants:
// l(alpha) = -n*ln zeta(alpha, xmin) - alpha * sum(ln x).
double pl_loglik(double alpha, double sum_log, int n, int xmin) {
    return -n * std::log(hurwitz_zeta(alpha, xmin)) - alpha * sum_log;
}

// Concave in alpha; golden-section search on (1, 12].
double fit_alpha(double sum_log, int n, int xmin) {
    double lo = 1.0001, hi = 12.0;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - phi * (hi - lo);
    double d = lo + phi * (hi - lo);
    double fc = pl_loglik(c, sum_log, n, xmin);
    double fd = pl_loglik(d, sum_log, n, xmin);
    for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = pl_loglik(c, sum_log, n, xmin);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = pl_loglik(d, sum_log, n, xmin);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

PowerLawFit power_law_fit(std::span<const int> degrees) {
    if (degrees.size() < 50)
        throw ConfigError("power_law_fit: need at least 50 samples");
    std::vector<int> xs;
    xs.reserve(degrees.size());
    for (int d : degrees)
        if (d >= 1) xs.push_back(d);
    if (xs.size() < 50)
        throw ConfigError("power_law_fit: need at least 50 positive samples");
    std::sort(xs.begin(), xs.end());
    if (xs.front() == xs.back())
        throw NumericalError("power_law_fit: degenerate all-equal samples");

    std::vector<int> unique_vals(xs.begin(), xs.end());
    unique_vals.erase(std::unique(unique_vals.begin(), unique_vals.end()),
                      unique_vals.end());

    constexpr int kMinTail = 10;
    PowerLawFit best;
    best.ks_distance = std::numeric_limits<double>::infinity();

    for (int xmin : unique_vals) {
        auto tail_begin = std::lower_bound(xs.begin(), xs.end(), xmin);
        const int n = static_cast<int>(xs.end() - tail_begin);
        if (n < kMinTail) break;

        double sum_log = 0.0;
        for (auto it = tail_begin; it != xs.end(); ++it)
            sum_log += std::log(static_cast<double>(*it));
        const double alpha = fit_alpha(sum_log, n, xmin);

        // KS distance between the tail ECDF and the fitted discrete CDF
        // F(x) = 1 - zeta(alpha, x+1)/zeta(alpha, xmin), evaluated at the
        // tail's distinct values.
        const double z_xmin = hurwitz_zeta(alpha, xmin);
        double ks = 0.0;
        auto it = tail_begin;
        int seen = 0;
        while (it != xs.end()) {
            const int x = *it;
            while (it != xs.end() && *it == x) {
                ++it;
                ++seen;
            }
            const double ecdf = static_cast<double>(seen) / n;
            const double cdf = 1.0 - hurwitz_zeta(alpha, x + 1) / z_xmin;
            ks = std::max(ks, std::abs(ecdf - cdf));
        }
        if (ks < best.ks_distance) {
            best.alpha = alpha;
            best.xmin = xmin;
            best.n_tail = n;
            best.ks_distance = ks;
        }
    }
    if (best.n_tail == 0)
        throw NumericalError("power_law_fit: no xmin candidate with enough tail");

    // Discrete exponential (geometric) fit on the same tail:
    // p(x) = (1-q) q^(x - xmin), q from the MLE mean identity.
    auto tail_begin = std::lower_bound(xs.begin(), xs.end(), best.xmin);
    const int n = best.n_tail;
    double shifted_sum = 0.0;
    for (auto it = tail_begin; it != xs.end(); ++it) shifted_sum += *it - best.xmin;
    const double q = shifted_sum > 0.0 ? shifted_sum / (shifted_sum + n) : 1e-12;
    const double log_q = std::log(q);
    const double log_1mq = std::log1p(-q);

    const double log_zeta = std::log(hurwitz_zeta(best.alpha, best.xmin));
    double ratio_sum = 0.0;
    double ratio_sq_sum = 0.0;
    for (auto it = tail_begin; it != xs.end(); ++it) {
        const double l_pl = -best.alpha * std::log(static_cast<double>(*it)) - log_zeta;
        const double l_exp = log_1mq + (*it - best.xmin) * log_q;
        const double diff = l_pl - l_exp;
        ratio_sum += diff;
        ratio_sq_sum += diff * diff;
    }
    best.loglik_ratio = ratio_sum;
    const double mean = ratio_sum / n;
    const double var = std::max(ratio_sq_sum / n - mean * mean, 0.0);
    if (var > 0.0) {
        const double z = ratio_sum / std::sqrt(var * n);
        best.p_value = std::erfc(std::abs(z) / std::sqrt(2.0));
    } else {
        best.p_value = 1.0;
    }
    return best;
}

}  // namespace spmkit
