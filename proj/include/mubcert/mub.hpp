// Mutually unbiased bases: construction for prime dimensions, validation of
// arbitrary basis sets, and the projector families used by the measurement
// layer. A set of bases {|nk>} is mutually unbiased iff |<nk|ml>|^2 = 1/d for
// all n != m, which is exactly what validate_mub_set certifies.

#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mubcert/linalg.hpp"

namespace mubcert {

inline constexpr double kUnbiasednessTol = 1e-10;  // internal certification tolerance
inline constexpr double kIngestionTol = 1e-8;      // looser gate for file ingestion

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

struct OrthonormalBasis {
    std::string label;
    std::vector<ComplexVector> vectors;

    int dim() const { return vectors.empty() ? 0 : vectors.front().dim(); }
};

// Global-phase convention: rotate each vector so its first component of
// magnitude > 1e-12 is real and nonnegative. Makes serialization and
// comparison deterministic; probabilities are unaffected.
inline void fix_global_phases(OrthonormalBasis& basis) {
    for (ComplexVector& v : basis.vectors) {
        for (int i = 0; i < v.dim(); ++i) {
            const double mag = std::abs(v[i]);
            if (mag > 1e-12) {
                const cxd phase = std::conj(v[i]) / mag;
                for (int j = 0; j < v.dim(); ++j) v[j] *= phase;
                v[i] = cxd{std::abs(v[i]), 0.0};
                break;
            }
        }
    }
}

// max_k,l |<v_k|v_l> - delta_kl| within one basis
inline double orthonormality_defect(const OrthonormalBasis& basis) {
    double worst = 0.0;
    const int d = basis.dim();
    for (int k = 0; k < d; ++k)
        for (int l = k; l < d; ++l) {
            const cxd ov = inner(basis.vectors[static_cast<size_t>(k)], basis.vectors[static_cast<size_t>(l)]);
            const double target = (k == l) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(ov - cxd{target, 0.0}));
        }
    return worst;
}

struct MubValidationReport {
    double max_unbiasedness_deviation = 0.0;   // max over cross pairs of ||<nk|ml>|^2 - 1/d|
    double max_orthonormality_defect = 0.0;    // max within-basis defect
    int worst_basis_a = -1;                    // offending pair (unbiasedness)
    int worst_basis_b = -1;

    bool pass(double tol = kUnbiasednessTol) const {
        return max_unbiasedness_deviation < tol && max_orthonormality_defect < tol;
    }
};

inline MubValidationReport validate_mub_set(std::span<const OrthonormalBasis> bases) {
    if (bases.empty()) throw ValidationError("validate_mub_set: no bases supplied");
    const int d = bases.front().dim();
    for (const OrthonormalBasis& b : bases) {
        if (b.dim() != d) throw ValidationError("validate_mub_set: mixed dimensions");
        if (static_cast<int>(b.vectors.size()) != d)
            throw ValidationError("validate_mub_set: basis '" + b.label + "' does not have d vectors");
        for (const ComplexVector& v : b.vectors)
            if (v.dim() != d) throw ValidationError("validate_mub_set: vector length != dim");
    }

    MubValidationReport report;
    for (const OrthonormalBasis& b : bases)
        report.max_orthonormality_defect = std::max(report.max_orthonormality_defect, orthonormality_defect(b));

    const double inv_d = 1.0 / d;
    for (size_t n = 0; n < bases.size(); ++n) {
        for (size_t m = n + 1; m < bases.size(); ++m) {
            double pair_worst = 0.0;
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    const double ov2 = std::norm(inner(bases[n].vectors[static_cast<size_t>(k)],
                                                       bases[m].vectors[static_cast<size_t>(l)]));
                    pair_worst = std::max(pair_worst, std::abs(ov2 - inv_d));
                }
            if (pair_worst > report.max_unbiasedness_deviation) {
                report.max_unbiasedness_deviation = pair_worst;
                report.worst_basis_a = static_cast<int>(n);
                report.worst_basis_b = static_cast<int>(m);
            }
        }
    }
    return report;
}

// N orthonormal bases of one dimension with certified pairwise unbiasedness.
// Immutable after construction; safe to share across threads.
class MubSet {
  public:
    static MubSet from_bases(std::vector<OrthonormalBasis> bases, double tol = kUnbiasednessTol) {
        for (OrthonormalBasis& b : bases) fix_global_phases(b);
        const MubValidationReport report = validate_mub_set(bases);
        if (!bases.empty() && static_cast<int>(bases.size()) > bases.front().dim() + 1)
            throw ValidationError("MubSet: more than d+1 bases cannot be mutually unbiased");
        if (!report.pass(tol)) {
            throw ValidationError(
                "MubSet: validation failed (unbiasedness deviation " +
                std::to_string(report.max_unbiasedness_deviation) + ", orthonormality defect " +
                std::to_string(report.max_orthonormality_defect) + ")");
        }
        return MubSet(std::move(bases), report.max_unbiasedness_deviation);
    }

    // The built-in construction for prime d: the computational basis plus the
    // quadratic-phase bases with vector components w^(b l^2 + k l)/sqrt(d),
    // w = exp(2 pi i / d). That family breaks down at d = 2, where the three
    // Pauli eigenbases are used instead; d = 3 is pinned to the standard
    // four-basis set so that column order matches the closed-form probability
    // tables in the measurement layer.
    static MubSet standard(int d, int n);

    int dim() const { return bases_.front().dim(); }
    int count() const { return static_cast<int>(bases_.size()); }
    const OrthonormalBasis& basis(int n) const { return bases_[static_cast<size_t>(n)]; }
    const std::vector<OrthonormalBasis>& bases() const { return bases_; }
    double max_unbiasedness_deviation() const { return max_unbiasedness_deviation_; }

    // Pi_nk = |nk><nk|; satisfies tr(Pi_nk Pi_ml) = (1 + (d delta_kl - 1) delta_nm)/d.
    std::vector<std::vector<ComplexMatrix>> projectors() const {
        std::vector<std::vector<ComplexMatrix>> out;
        out.reserve(bases_.size());
        for (const OrthonormalBasis& b : bases_) {
            std::vector<ComplexMatrix> row;
            row.reserve(b.vectors.size());
            for (const ComplexVector& v : b.vectors) row.push_back(projector(v));
            out.push_back(std::move(row));
        }
        return out;
    }

  private:
    MubSet(std::vector<OrthonormalBasis> bases, double deviation)
        : bases_(std::move(bases)), max_unbiasedness_deviation_(deviation) {}

    std::vector<OrthonormalBasis> bases_;
    double max_unbiasedness_deviation_;
};

// Phase-insensitive basis equality: corresponding projectors match.
inline bool bases_equal(const OrthonormalBasis& a, const OrthonormalBasis& b, double tol = kUnbiasednessTol) {
    if (a.dim() != b.dim() || a.vectors.size() != b.vectors.size()) return false;
    for (size_t k = 0; k < a.vectors.size(); ++k) {
        if (projector(a.vectors[k]).max_abs_diff(projector(b.vectors[k])) > tol) return false;
    }
    return true;
}

namespace detail {

inline OrthonormalBasis computational_basis(int d, std::string label) {
    OrthonormalBasis basis{std::move(label), {}};
    basis.vectors.reserve(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) basis.vectors.push_back(ComplexVector::basis_state(d, k));
    return basis;
}

inline std::vector<OrthonormalBasis> pauli_bases_d2() {
    const double s = 1.0 / std::sqrt(2.0);
    const cxd i{0.0, 1.0};
    std::vector<OrthonormalBasis> out;
    out.push_back(computational_basis(2, "S_z"));
    out.push_back({"S_x",
                   {ComplexVector({s, s}), ComplexVector({s, -s})}});
    // sigma_y eigenbasis ordered (-1 eigenvector, +1 eigenvector) so that the
    // trace pipeline reproduces the d=2 closed-form probability rows with the
    // minus-sine entry first.
    out.push_back({"S_y",
                   {ComplexVector({cxd{s, 0.0}, -i * s}), ComplexVector({cxd{s, 0.0}, i * s})}});
    return out;
}

inline std::vector<OrthonormalBasis> standard_bases_d3() {
    const double s = 1.0 / std::sqrt(3.0);
    const cxd w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const cxd w2 = std::polar(1.0, 4.0 * std::numbers::pi / 3.0);
    std::vector<OrthonormalBasis> out;
    out.push_back(computational_basis(3, "A_1"));
    auto col = [s](cxd a, cxd b, cxd c) { return ComplexVector({s * a, s * b, s * c}); };
    out.push_back({"A_2", {col(1, 1, 1), col(1, w, w2), col(1, w2, w)}});
    out.push_back({"A_3", {col(1, w, w), col(1, w2, 1), col(1, 1, w2)}});
    out.push_back({"A_4", {col(1, w2, w2), col(1, w, 1), col(1, 1, w)}});
    return out;
}

// Quadratic-phase construction for odd prime d: basis b has vector k with
// component l equal to w^(b l^2 + k l) / sqrt(d). Exponents are reduced mod d
// before evaluating the root of unity to keep the phases exact.
inline std::vector<OrthonormalBasis> quadratic_phase_bases(int d) {
    std::vector<OrthonormalBasis> out;
    out.push_back(computational_basis(d, "A_1"));
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (int b = 0; b < d; ++b) {
        OrthonormalBasis basis{"A_" + std::to_string(b + 2), {}};
        for (int k = 0; k < d; ++k) {
            std::vector<cxd> v(static_cast<size_t>(d));
            for (int l = 0; l < d; ++l) {
                const long long exponent = (static_cast<long long>(b) * l * l + static_cast<long long>(k) * l) % d;
                v[static_cast<size_t>(l)] =
                    inv_sqrt_d * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(exponent) / d);
            }
            basis.vectors.emplace_back(std::move(v));
        }
        out.push_back(std::move(basis));
    }
    return out;
}

}  // namespace detail

inline MubSet MubSet::standard(int d, int n) {
    if (!is_prime(d)) {
        throw ValidationError("standard_mubs: dimension " + std::to_string(d) +
                              " is not prime; supply bases via file instead");
    }
    if (n < 1 || n > d + 1) {
        throw ValidationError("standard_mubs: basis count must satisfy 1 <= n <= d+1");
    }
    std::vector<OrthonormalBasis> all;
    if (d == 2) {
        all = detail::pauli_bases_d2();
    } else if (d == 3) {
        all = detail::standard_bases_d3();
    } else {
        all = detail::quadratic_phase_bases(d);
    }
    all.resize(static_cast<size_t>(n));
    return from_bases(std::move(all), 1e-12);
}

// Convenience alias matching the operation name.
inline MubSet standard_mubs(int d, int n) { return MubSet::standard(d, n); }

}  // namespace mubcert
