// Closed-form bounds for the total Shannon entropy of N MUB measurements at
// fixed state purity Pi = tr(rho^2):
//
//   alpha            = sqrt((d-1) [d(Pi+1) - (d+1)])
//   b+-              = (sqrt(N) +- alpha) / (d sqrt(N))
//   H_T^+            = N ln( d(d-1)sqrt(N) / ((d-1)sqrt(N) - alpha) )
//                      - ((N + sqrt(N) alpha)/d) ln( (d-1)(sqrt(N)+alpha) / ((d-1)sqrt(N) - alpha) )
//
// attained (as a stationary table) by rows with one entry b+ and d-1 entries
// (1-b+)/(d-1). Coherent-augmented states replace alpha by
//   alpha_bar = sqrt((d-1) [d(Pi+1) - (d+1) - r^2 (d-1)]),
// which collapses H_T^+ to N ln d at (Pi=1, r=1). Also provided: the Rastegin
// entropy lower bound q = (d+1) ln((d+1)/(Pi+1)) for complete sets, the qubit
// Bloch-vector lower bound, and the mutual-information bound computed as
// H_T^+(d+1, d, Pi) - q.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "mubcert/measure.hpp"

namespace mubcert {

// Raised when (N, d, Pi, r) violate an admissibility inequality.
struct InadmissibleError : std::domain_error {
    using std::domain_error::domain_error;
};

inline constexpr double kRadicandClamp = 1e-12;  // [-1e-12, 0] -> 0 for Pi = 1/d roundoff

namespace detail {

inline void check_basis_count(int n_bases, int d) {
    if (d < 2) throw InadmissibleError("bounds: dimension must be >= 2");
    if (n_bases < 1 || n_bases > d + 1)
        throw InadmissibleError("bounds: basis count must satisfy 1 <= N <= d+1 (got N=" +
                                std::to_string(n_bases) + ", d=" + std::to_string(d) + ")");
}

inline void check_purity(int d, double purity) {
    if (!(purity >= 1.0 / d - 1e-10 && purity <= 1.0 + 1e-10))
        throw InadmissibleError("bounds: purity " + std::to_string(purity) +
                                " outside [1/d, 1] for d=" + std::to_string(d));
}

inline double clamped_sqrt(double radicand, const char* what) {
    if (radicand < -kRadicandClamp)
        throw InadmissibleError(std::string(what) + ": radicand " + std::to_string(radicand) +
                                " is negative (inadmissible purity/coherent weight)");
    return radicand <= 0.0 ? 0.0 : std::sqrt(radicand);
}

}  // namespace detail

inline double alpha(int d, double purity) {
    detail::check_purity(d, purity);
    return detail::clamped_sqrt((d - 1.0) * (d * (purity + 1.0) - (d + 1.0)), "alpha");
}

// alpha with the coherent weight r carved out of the purity budget; equals
// alpha(d, purity) at r = 0 and vanishes at (purity=1, r=1).
inline double alpha_bar(int d, double purity, double coherent_weight) {
    detail::check_purity(d, purity);
    if (!(coherent_weight >= 0.0 && coherent_weight <= 1.0))
        throw InadmissibleError("alpha_bar: coherent weight must lie in [0,1]");
    const double radicand = (d - 1.0) * (d * (purity + 1.0) - (d + 1.0) -
                                         coherent_weight * coherent_weight * (d - 1.0));
    return detail::clamped_sqrt(radicand, "alpha_bar");
}

namespace detail {

inline double b_plus_from_alpha(int n_bases, int d, double a) {
    const double sn = std::sqrt(static_cast<double>(n_bases));
    return (sn + a) / (d * sn);
}

// The certainty bound evaluated at a given alpha value. The denominator
// (d-1)sqrt(N) - alpha vanishes only when b+ = 1 (N = 1 at purity 1), where
// the bound degenerates to the entropy of a deterministic row, i.e. 0.
inline double h_t_plus_from_alpha(int n_bases, int d, double a) {
    const double sn = std::sqrt(static_cast<double>(n_bases));
    const double denom = (d - 1.0) * sn - a;
    if (denom <= 0.0) {
        if (a <= (d - 1.0) * sn + 1e-9) return 0.0;
        throw InadmissibleError("h_t_plus: denominator (d-1)sqrt(N) - alpha is negative");
    }
    return n_bases * std::log(d * (d - 1.0) * sn / denom) -
           ((n_bases + sn * a) / d) * std::log((d - 1.0) * (sn + a) / denom);
}

}  // namespace detail

inline double b_plus(int n_bases, int d, double purity) {
    detail::check_basis_count(n_bases, d);
    return detail::b_plus_from_alpha(n_bases, d, alpha(d, purity));
}

struct BMinusResult {
    double value;
    bool stationary;  // true only at purity 1/d, where b- = b+ = 1/d
};

// b- solves the same stationarity equation but is an extremum of the
// constrained entropy only at purity 1/d; elsewhere it is flagged
// non-stationary rather than rejected.
inline BMinusResult b_minus(int n_bases, int d, double purity) {
    detail::check_basis_count(n_bases, d);
    const double a = alpha(d, purity);
    const double sn = std::sqrt(static_cast<double>(n_bases));
    return BMinusResult{(sn - a) / (d * sn), a == 0.0};
}

// Optimal entropic certainty bound for N MUBs at purity Pi (nats).
inline double h_t_plus(int n_bases, int d, double purity) {
    detail::check_basis_count(n_bases, d);
    return detail::h_t_plus_from_alpha(n_bases, d, alpha(d, purity));
}

// Bound for the coherent-augmented family: alpha replaced by alpha_bar.
inline double h_t_plus_bar(int n_bases, int d, double purity, double coherent_weight) {
    detail::check_basis_count(n_bases, d);
    return detail::h_t_plus_from_alpha(n_bases, d, alpha_bar(d, purity, coherent_weight));
}

// The stationary table itself: every row has b+ in the first slot and
// (1-b+)/(d-1) elsewhere. Its total entropy equals h_t_plus.
inline ProbabilityTable extremal_distribution(int n_bases, int d, double purity) {
    detail::check_basis_count(n_bases, d);
    const double b = detail::b_plus_from_alpha(n_bases, d, alpha(d, purity));
    const double rest = (1.0 - b) / (d - 1.0);
    std::vector<double> p;
    p.reserve(static_cast<size_t>(n_bases) * d);
    for (int n = 0; n < n_bases; ++n) {
        p.push_back(b);
        for (int k = 1; k < d; ++k) p.push_back(rest);
    }
    return ProbabilityTable(n_bases, d, std::move(p));
}

// Rastegin lower bound q = (d+1) ln((d+1)/(Pi+1)) for the complete set of
// d+1 complementary observables.
inline double lower_bound_rastegin(int d, double purity) {
    detail::check_purity(d, purity);
    return (d + 1.0) * std::log((d + 1.0) / (purity + 1.0));
}

// Qubit lower bound ln 4 - [h((1+|r|)/2) bracket] from the Bloch-vector norm.
inline double lower_bound_qubit(double bloch_norm) {
    if (!(bloch_norm >= 0.0 && bloch_norm <= 1.0))
        throw InadmissibleError("lower_bound_qubit: Bloch norm must lie in [0,1]");
    double bracket = 0.0;
    for (double p : {0.5 * (1.0 + bloch_norm), 0.5 * (1.0 - bloch_norm)})
        if (p > 0.0) bracket += p * std::log(p);
    return std::log(4.0) - bracket;
}

// Upper bound on sum_n I(A_n : Y) for the d+1 complementary observables,
// computed compositionally as H_T^+(d+1, d, Pi) - q.
inline double mutual_info_bound(int d, double purity) {
    return h_t_plus(d + 1, d, purity) - lower_bound_rastegin(d, purity);
}

// A fully expanded single-expression form of the same bound circulates with
// the coefficients below; it does not reduce to H_T^+(d+1,d,Pi) - q (the
// (d+1)sqrt(d+1) factor in the first denominator and the ungrouped
// (d-1)sqrt(d+1) + alpha numerator are inconsistent with the difference).
// Kept verbatim as a diagnostic; mutual_info_bound is authoritative.
inline double mutual_info_bound_expanded_form(int d, double purity) {
    const double a = alpha(d, purity);
    const double s = std::sqrt(d + 1.0);
    return (d + 1.0) * std::log(d * (d - 1.0) * (purity + 1.0) * s /
                                ((d + 1.0) * ((d + 1.0) * s - a))) -
           ((d + 1.0 + s * a) / d) * std::log(((d - 1.0) * s + a) / ((d - 1.0) * s - a));
}

struct MutualInfoDiagnostic {
    double compositional;  // h_t_plus(d+1, d, Pi) - lower_bound_rastegin(d, Pi)
    double expanded_form;  // the single-expression transcription above
    double discrepancy;    // |compositional - expanded_form|
};

inline MutualInfoDiagnostic mutual_info_diagnostic(int d, double purity) {
    const double comp = mutual_info_bound(d, purity);
    const double lit = mutual_info_bound_expanded_form(d, purity);
    return MutualInfoDiagnostic{comp, lit, std::abs(comp - lit)};
}

// Bundle of everything the bound layer knows about one (N, d, Pi, r) input.
// lower_q and mutual information apply only to complete sets (N = d+1), and
// the mutual-information bound additionally requires r = 0.
struct BoundReport {
    int n_bases = 0;
    int dim = 0;
    double purity = 1.0;
    double coherent_weight = 0.0;
    double alpha = 0.0;  // effective value: alpha_bar(d, Pi, r)
    double b_plus = 0.0;
    double b_minus = 0.0;
    bool b_minus_stationary = false;
    double h_t_plus = 0.0;  // evaluated at the effective alpha
    std::optional<double> lower_q;
    std::optional<double> mutual_info_bound;
};

inline BoundReport make_bound_report(int n_bases, int d, double purity, double coherent_weight = 0.0) {
    detail::check_basis_count(n_bases, d);
    const double a = alpha_bar(d, purity, coherent_weight);
    BoundReport report;
    report.n_bases = n_bases;
    report.dim = d;
    report.purity = purity;
    report.coherent_weight = coherent_weight;
    report.alpha = a;
    report.b_plus = detail::b_plus_from_alpha(n_bases, d, a);
    const double sn = std::sqrt(static_cast<double>(n_bases));
    report.b_minus = (sn - a) / (d * sn);
    report.b_minus_stationary = (a == 0.0);
    report.h_t_plus = detail::h_t_plus_from_alpha(n_bases, d, a);
    if (n_bases == d + 1) {
        report.lower_q = lower_bound_rastegin(d, purity);
        if (coherent_weight == 0.0) report.mutual_info_bound = mutual_info_bound(d, purity);
    }
    return report;
}

}  // namespace mubcert
