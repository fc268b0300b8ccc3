// Measurement statistics over a MUB set: outcome probability tables
// p_nk = tr(Pi_nk rho), Shannon entropies, observable purities
// C_n = sum_k p_nk^2, the purity-sum identity
//   sum_n C_n = tr(rho^2) + (N-1)/d   (for states diagonal in the N bases)
// and its inequality form sum_n C_n <= tr(rho^2) + 1, the linear expansion
// map p = T lambda, and the d=2 / d=3 closed-form probability tables kept as
// an independent oracle for the trace pipeline.

#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mubcert/linalg.hpp"
#include "mubcert/mub.hpp"
#include "mubcert/state.hpp"

namespace mubcert {

inline constexpr double kProbClamp = 1e-12;   // clamp window for negative roundoff
inline constexpr double kRowSumTol = 1e-10;
inline constexpr double kEqualityTol = 1e-9;  // purity-sum equality threshold

// N x d table of outcome probabilities, one row per observable. Entries in
// [-1e-12, 0) are clamped to 0 (projector roundoff); anything more negative
// is treated as a real bug and rejected.
class ProbabilityTable {
  public:
    ProbabilityTable(int n_bases, int dim, std::vector<double> p)
        : n_bases_(n_bases), dim_(dim), p_(std::move(p)) {
        if (static_cast<int>(p_.size()) != n_bases * dim)
            throw ValidationError("ProbabilityTable: need N*d entries");
        for (double& x : p_) {
            if (x < -kProbClamp)
                throw ValidationError("ProbabilityTable: entry " + std::to_string(x) +
                                      " below the clamp window");
            if (x < 0.0) {
                x = 0.0;
                clamped_negative_ = true;
            }
            if (x > 1.0 + kProbClamp)
                throw ValidationError("ProbabilityTable: entry " + std::to_string(x) + " exceeds 1");
        }
        for (int n = 0; n < n_bases_; ++n) {
            double sum = 0.0;
            for (int k = 0; k < dim_; ++k) sum += at(n, k);
            if (std::abs(sum - 1.0) > kRowSumTol)
                throw ValidationError("ProbabilityTable: row " + std::to_string(n) +
                                      " sums to " + std::to_string(sum));
        }
    }

    int n_bases() const { return n_bases_; }
    int dim() const { return dim_; }
    double at(int n, int k) const { return p_[static_cast<size_t>(n) * dim_ + k]; }
    std::span<const double> row(int n) const {
        return std::span<const double>(p_).subspan(static_cast<size_t>(n) * dim_, static_cast<size_t>(dim_));
    }
    std::span<const double> flat() const { return p_; }
    bool negative_clamped() const { return clamped_negative_; }

  private:
    int n_bases_;
    int dim_;
    std::vector<double> p_;
    bool clamped_negative_ = false;
};

// p_nk = tr(Pi_nk rho), evaluated as <nk|rho|nk>.
inline ProbabilityTable probabilities(const DensityMatrix& rho, const MubSet& m) {
    if (rho.dim() != m.dim()) throw ValidationError("probabilities: dimension mismatch");
    const int d = m.dim();
    std::vector<double> p;
    p.reserve(static_cast<size_t>(m.count()) * d);
    for (int n = 0; n < m.count(); ++n) {
        for (int k = 0; k < d; ++k) {
            const ComplexVector& v = m.basis(n).vectors[static_cast<size_t>(k)];
            cxd acc{0.0, 0.0};
            for (int i = 0; i < d; ++i) {
                cxd row{0.0, 0.0};
                for (int j = 0; j < d; ++j) row += rho.matrix()(i, j) * v[j];
                acc += std::conj(v[i]) * row;
            }
            p.push_back(acc.real());
        }
    }
    return ProbabilityTable(m.count(), d, std::move(p));
}

// Same table for a pure state, via p_nk = |<nk|psi>|^2. Cheaper than forming
// the projector; used heavily by the search layer.
inline ProbabilityTable pure_state_probabilities(const ComplexVector& psi, const MubSet& m) {
    if (psi.dim() != m.dim()) throw ValidationError("pure_state_probabilities: dimension mismatch");
    std::vector<double> p;
    p.reserve(static_cast<size_t>(m.count()) * m.dim());
    for (int n = 0; n < m.count(); ++n)
        for (int k = 0; k < m.dim(); ++k)
            p.push_back(std::norm(inner(m.basis(n).vectors[static_cast<size_t>(k)], psi)));
    return ProbabilityTable(m.count(), m.dim(), std::move(p));
}

// H = -sum p ln p in nats, with 0 ln 0 = 0 by explicit branch.
inline double shannon_entropy(std::span<const double> row) {
    double sum = 0.0;
    double h = 0.0;
    for (double p : row) {
        if (p < -kProbClamp) throw ValidationError("shannon_entropy: negative probability");
        if (p > 0.0) h -= p * std::log(p);
        sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTol)
        throw ValidationError("shannon_entropy: probabilities sum to " + std::to_string(sum));
    return h;
}

// S = sum_n H(A_n), in [0, N ln d].
inline double total_entropy(const ProbabilityTable& t) {
    double s = 0.0;
    for (int n = 0; n < t.n_bases(); ++n) s += shannon_entropy(t.row(n));
    return s;
}

using PurityVector = std::vector<double>;

// C_n = sum_k p_nk^2 per observable.
inline PurityVector purities(const ProbabilityTable& t) {
    PurityVector c(static_cast<size_t>(t.n_bases()), 0.0);
    for (int n = 0; n < t.n_bases(); ++n)
        for (int k = 0; k < t.dim(); ++k) c[static_cast<size_t>(n)] += t.at(n, k) * t.at(n, k);
    return c;
}

struct PuritySumReport {
    double purity_sum;      // sum_n C_n
    double state_purity;    // Pi = tr(rho^2)
    double equality_rhs;    // Pi + (N-1)/d
    double inequality_rhs;  // Pi + 1
    bool equality_holds;    // |purity_sum - equality_rhs| < 1e-9
};

// Checks sum_n C_n against both the inequality (always) and the equality
// (expected whenever rho lies in the span of the MUB projectors, and for any
// rho when N = d+1).
inline PuritySumReport purity_sum_check(const DensityMatrix& rho, const MubSet& m) {
    const ProbabilityTable t = probabilities(rho, m);
    const PurityVector c = purities(t);
    double sum = 0.0;
    for (double cn : c) sum += cn;
    const double pi = rho.purity();
    PuritySumReport report{
        sum,
        pi,
        pi + static_cast<double>(m.count() - 1) / m.dim(),
        pi + 1.0,
        false,
    };
    if (report.purity_sum > report.inequality_rhs + 1e-10)
        throw ValidationError("purity_sum_check: purity sum exceeds tr(rho^2) + 1");
    report.equality_holds = std::abs(report.purity_sum - report.equality_rhs) < kEqualityTol;
    return report;
}

// The Nd x Nd block matrix T relating mixture weights to probabilities,
// p = T lambda: identity blocks on the diagonal, constant-1/d blocks D_d off
// the diagonal. Each D block is idempotent and T is singular for N >= 2, so a
// probability table does not pin down the weights.
class ExpansionMap {
  public:
    ExpansionMap(int n_bases, int dim) : n_bases_(n_bases), dim_(dim) {
        if (n_bases < 1 || dim < 2) throw ValidationError("ExpansionMap: need N >= 1, d >= 2");
        const int size = n_bases * dim;
        t_.assign(static_cast<size_t>(size) * size, 0.0);
        for (int bn = 0; bn < n_bases; ++bn)
            for (int bm = 0; bm < n_bases; ++bm)
                for (int k = 0; k < dim; ++k)
                    for (int l = 0; l < dim; ++l) {
                        const int row = bn * dim + k;
                        const int col = bm * dim + l;
                        if (bn == bm)
                            t_[static_cast<size_t>(row) * size + col] = (k == l) ? 1.0 : 0.0;
                        else
                            t_[static_cast<size_t>(row) * size + col] = 1.0 / dim;
                    }
        // Singular values of the symmetric T are |eigenvalues|.
        ComplexMatrix tc(size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) tc(i, j) = cxd{t_[static_cast<size_t>(i) * size + j], 0.0};
        const std::vector<double> eigs = hermitian_eigenvalues(tc);
        double smallest = std::abs(eigs.front());
        double largest = 0.0;
        for (double e : eigs) {
            smallest = std::min(smallest, std::abs(e));
            largest = std::max(largest, std::abs(e));
        }
        smallest_singular_value_ = smallest;
        rank_deficient_ = smallest < 1e-10 * largest;
    }

    int n_bases() const { return n_bases_; }
    int dim() const { return dim_; }
    int size() const { return n_bases_ * dim_; }
    double at(int i, int j) const { return t_[static_cast<size_t>(i) * size() + j]; }
    std::span<const double> matrix() const { return t_; }
    bool rank_deficient() const { return rank_deficient_; }
    double smallest_singular_value() const { return smallest_singular_value_; }

    // p = T lambda for a flattened weight vector of length N*d summing to 1.
    std::vector<double> apply(std::span<const double> lambda) const {
        if (static_cast<int>(lambda.size()) != size())
            throw ValidationError("ExpansionMap::apply: weight vector length mismatch");
        double sum = 0.0;
        for (double w : lambda) sum += w;
        if (std::abs(sum - 1.0) > 1e-10)
            throw ValidationError("ExpansionMap::apply: weights must sum to 1");
        std::vector<double> p(static_cast<size_t>(size()), 0.0);
        for (int i = 0; i < size(); ++i) {
            double acc = 0.0;
            for (int j = 0; j < size(); ++j) acc += at(i, j) * lambda[static_cast<size_t>(j)];
            p[static_cast<size_t>(i)] = acc;
        }
        return p;
    }

  private:
    int n_bases_;
    int dim_;
    std::vector<double> t_;
    bool rank_deficient_ = false;
    double smallest_singular_value_ = 0.0;
};

// d=2 closed-form table for the (r, phi) chart:
//   row 1: (r, 1-r)
//   row 2: (1 +- 2 sqrt(r(1-r)) cos phi)/2
//   row 3: (1 -+ 2 sqrt(r(1-r)) sin phi)/2   (minus-sine entry first)
inline ProbabilityTable probs_d2_closed_form(const PureStateParamsD2& p) {
    const double s = 2.0 * std::sqrt(p.r * (1.0 - p.r));
    const double c = s * std::cos(p.phi);
    const double sn = s * std::sin(p.phi);
    return ProbabilityTable(3, 2,
                            {p.r, 1.0 - p.r,
                             0.5 * (1.0 + c), 0.5 * (1.0 - c),
                             0.5 * (1.0 - sn), 0.5 * (1.0 + sn)});
}

// d=3 closed-form table: row 1 is (r, q, 1-r-q) and rows 2..4 are
// (1 + 2 f_nk)/3 with the nine cosine combinations below.
inline ProbabilityTable probs_d3_closed_form(const PureStateParamsD3& p) {
    const double rest = std::max(0.0, 1.0 - p.r - p.q);
    const double a = std::sqrt(p.r * p.q);
    const double b = std::sqrt(p.r * rest);
    const double c = std::sqrt(p.q * rest);
    const double third = 2.0 * std::numbers::pi / 3.0;  // 2 pi / 3
    const double p1 = p.phi1, p2 = p.phi2, dp = p.phi1 - p.phi2;
    auto f = [&](double o1, double o2, double o12) {
        return a * std::cos(p1 - o1) + b * std::cos(p2 - o2) + c * std::cos(dp + o12);
    };
    const double f21 = f(0.0, 0.0, 0.0);
    const double f22 = f(third, 2.0 * third, third);
    const double f23 = f(2.0 * third, third, 2.0 * third);
    const double f31 = f(third, third, 0.0);
    const double f32 = f(2.0 * third, 0.0, third);
    const double f33 = f(0.0, 2.0 * third, 2.0 * third);
    const double f41 = f(2.0 * third, 2.0 * third, 0.0);
    const double f42 = f(third, 0.0, 2.0 * third);
    const double f43 = f(0.0, third, third);
    auto row = [](double x) { return (1.0 + 2.0 * x) / 3.0; };
    return ProbabilityTable(4, 3,
                            {p.r, p.q, rest,
                             row(f21), row(f22), row(f23),
                             row(f31), row(f32), row(f33),
                             row(f41), row(f42), row(f43)});
}

}  // namespace mubcert
