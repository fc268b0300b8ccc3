// Density-matrix constructors: pure states from the d=2 / d=3 parameter
// charts, Bloch form, Haar-random pure states, diagonal mixtures over a MUB
// set, and coherent-augmented mixtures. Every constructor returns a validated
// DensityMatrix (Hermitian, unit trace, positive semidefinite up to roundoff).

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mubcert/linalg.hpp"
#include "mubcert/mub.hpp"
#include "mubcert/rng.hpp"

namespace mubcert {

inline constexpr double kPsdFloor = -1e-9;   // minimum-eigenvalue tolerance
inline constexpr double kTraceTol = 1e-10;

class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
        if (m_.hermiticity_defect() > kHermitianTol)
            throw ValidationError("DensityMatrix: not Hermitian within tolerance");
        if (std::abs(m_.trace().real() - 1.0) > kTraceTol || std::abs(m_.trace().imag()) > kTraceTol)
            throw ValidationError("DensityMatrix: trace is not 1 within tolerance");
        const std::vector<double> eigs = hermitian_eigenvalues(m_);
        min_eigenvalue_ = eigs.back();
        if (min_eigenvalue_ < kPsdFloor)
            throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(min_eigenvalue_));
        purity_ = trace_product(m_, m_);
    }

    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return m_.dim(); }
    double purity() const { return purity_; }        // tr(rho^2), cached
    double min_eigenvalue() const { return min_eigenvalue_; }

  private:
    ComplexMatrix m_;
    double purity_ = 1.0;
    double min_eigenvalue_ = 0.0;
};

// Pi = tr(rho^2), in [1/d, 1] up to roundoff.
inline double purity(const DensityMatrix& rho) {
    const double p = rho.purity();
    const double lo = 1.0 / rho.dim();
    if (p < lo - 1e-10 || p > 1.0 + 1e-10)
        throw ValidationError("purity: value " + std::to_string(p) + " outside [1/d, 1]");
    return p;
}

// d=2 pure-state chart: amplitudes alpha = sqrt(r), beta = sqrt(1-r) e^{i phi}.
struct PureStateParamsD2 {
    double r;
    double phi;

    PureStateParamsD2(double r_, double phi_) : r(r_), phi(phi_) {
        if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("PureStateParamsD2: r must lie in [0,1]");
    }
};

// d=3 pure-state chart: alpha = sqrt(r), beta = sqrt(q) e^{i phi1},
// gamma = sqrt(1-r-q) e^{i phi2}.
struct PureStateParamsD3 {
    double r;
    double q;
    double phi1;
    double phi2;

    PureStateParamsD3(double r_, double q_, double phi1_, double phi2_)
        : r(r_), q(q_), phi1(phi1_), phi2(phi2_) {
        if (!(r >= 0.0 && q >= 0.0 && r + q <= 1.0 + 1e-15))
            throw ValidationError("PureStateParamsD3: need r, q >= 0 and r+q <= 1");
    }
};

inline ComplexVector pure_vector_d2(const PureStateParamsD2& p) {
    return ComplexVector({cxd{std::sqrt(p.r), 0.0},
                          std::polar(std::sqrt(1.0 - p.r), p.phi)});
}

inline ComplexVector pure_vector_d3(const PureStateParamsD3& p) {
    const double rest = std::max(0.0, 1.0 - p.r - p.q);
    return ComplexVector({cxd{std::sqrt(p.r), 0.0},
                          std::polar(std::sqrt(p.q), p.phi1),
                          std::polar(std::sqrt(rest), p.phi2)});
}

// |psi><psi| for a unit vector psi.
inline DensityMatrix pure_density(const ComplexVector& psi) {
    return DensityMatrix(projector(psi));
}

inline DensityMatrix pure_from_params_d2(const PureStateParamsD2& p) {
    return pure_density(pure_vector_d2(p));
}

inline DensityMatrix pure_from_params_d3(const PureStateParamsD3& p) {
    return pure_density(pure_vector_d3(p));
}

// Haar-distributed unit vector: normalize a vector of iid standard complex
// Gaussians. Deterministic for a given rng stream position.
inline ComplexVector haar_random_state(int d, SplitMix64& rng) {
    if (d < 2) throw ValidationError("haar_random_state: dimension must be >= 2");
    std::vector<cxd> v(static_cast<size_t>(d));
    for (cxd& z : v) z = cxd{rng.normal(), rng.normal()};
    return ComplexVector(std::move(v)).normalized();
}

inline DensityMatrix random_pure(int d, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return pure_density(haar_random_state(d, rng));
}

// lambda_nk weights of a MUB-diagonal mixture. Nonnegative and summing to 1
// by default; allow_signed admits negative entries (the resulting matrix must
// then still pass the positive-semidefiniteness check on construction).
class MixtureWeights {
  public:
    MixtureWeights(int n_bases, int dim, std::vector<double> lambda, bool allow_signed = false)
        : n_bases_(n_bases), dim_(dim), lambda_(std::move(lambda)) {
        if (static_cast<int>(lambda_.size()) != n_bases * dim)
            throw ValidationError("MixtureWeights: need N*d entries");
        double total = 0.0;
        for (double w : lambda_) {
            if (!allow_signed && w < 0.0)
                throw ValidationError("MixtureWeights: negative weight (pass allow_signed to permit)");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw ValidationError("MixtureWeights: weights must sum to 1 (got " + std::to_string(total) + ")");
    }

    static MixtureWeights uniform(int n_bases, int dim) {
        return MixtureWeights(n_bases, dim,
                              std::vector<double>(static_cast<size_t>(n_bases) * dim,
                                                  1.0 / (static_cast<double>(n_bases) * dim)));
    }

    // Uniform draw from the probability simplex (normalized Exp(1) variates).
    static MixtureWeights random_simplex(int n_bases, int dim, SplitMix64& rng) {
        std::vector<double> w(static_cast<size_t>(n_bases) * dim);
        double total = 0.0;
        for (double& x : w) {
            x = -std::log(rng.uniform01_open());
            total += x;
        }
        for (double& x : w) x /= total;
        return MixtureWeights(n_bases, dim, std::move(w));
    }

    int n_bases() const { return n_bases_; }
    int dim() const { return dim_; }
    double at(int n, int k) const { return lambda_[static_cast<size_t>(n) * dim_ + k]; }
    std::span<const double> flat() const { return lambda_; }

  private:
    int n_bases_;
    int dim_;
    std::vector<double> lambda_;
};

// rho = sum_nk lambda_nk |nk><nk|. Positive semidefiniteness is automatic for
// simplex weights; signed weights go through the full DensityMatrix check.
inline DensityMatrix mub_diagonal_mixture(const MubSet& m, const MixtureWeights& w) {
    if (w.n_bases() != m.count() || w.dim() != m.dim())
        throw ValidationError("mub_diagonal_mixture: weight shape does not match the MUB set");
    ComplexMatrix rho(m.dim());
    for (int n = 0; n < m.count(); ++n) {
        for (int k = 0; k < m.dim(); ++k) {
            const double lam = w.at(n, k);
            if (lam == 0.0) continue;
            const ComplexVector& v = m.basis(n).vectors[static_cast<size_t>(k)];
            for (int i = 0; i < m.dim(); ++i)
                for (int j = 0; j < m.dim(); ++j) rho(i, j) += lam * v[i] * std::conj(v[j]);
        }
    }
    return DensityMatrix(std::move(rho));
}

// Coherent-augmented mixture: sum_nk lambda_nk |nk><nk| + r |psi><psi|,
// with the lambda block scaled to total 1-r.
struct CoherentMixtureSpec {
    std::vector<double> scaled_lambda;  // totals 1 - coherent_weight
    double coherent_weight;
    ComplexVector psi;

    CoherentMixtureSpec(const MixtureWeights& unit_weights, double r, ComplexVector psi_coh)
        : coherent_weight(r), psi(std::move(psi_coh)) {
        if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("CoherentMixtureSpec: r must lie in [0,1]");
        if (!psi.is_unit()) throw ValidationError("CoherentMixtureSpec: psi must be a unit vector");
        scaled_lambda.assign(unit_weights.flat().begin(), unit_weights.flat().end());
        for (double& w : scaled_lambda) w *= (1.0 - r);
    }

    double lambda_total() const {
        double t = 0.0;
        for (double w : scaled_lambda) t += w;
        return t;
    }
};

inline DensityMatrix coherent_mixture(const CoherentMixtureSpec& spec, const MubSet& m) {
    if (spec.psi.dim() != m.dim())
        throw ValidationError("coherent_mixture: psi dimension does not match the MUB set");
    if (static_cast<int>(spec.scaled_lambda.size()) != m.count() * m.dim())
        throw ValidationError("coherent_mixture: weight shape does not match the MUB set");
    ComplexMatrix rho(m.dim());
    for (int n = 0; n < m.count(); ++n)
        for (int k = 0; k < m.dim(); ++k) {
            const double lam = spec.scaled_lambda[static_cast<size_t>(n) * m.dim() + k];
            if (lam == 0.0) continue;
            const ComplexVector& v = m.basis(n).vectors[static_cast<size_t>(k)];
            for (int i = 0; i < m.dim(); ++i)
                for (int j = 0; j < m.dim(); ++j) rho(i, j) += lam * v[i] * std::conj(v[j]);
        }
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            rho(i, j) += spec.coherent_weight * spec.psi[i] * std::conj(spec.psi[j]);
    return DensityMatrix(std::move(rho));
}

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// rho = (I + r . sigma)/2; purity (1 + |r|^2)/2.
inline DensityMatrix bloch_density(const BlochVector& b) {
    const double n = b.norm();
    if (n > 1.0 + 1e-12) throw ValidationError("bloch_density: Bloch vector norm exceeds 1");
    ComplexMatrix rho(2);
    rho(0, 0) = cxd{0.5 * (1.0 + b.z), 0.0};
    rho(1, 1) = cxd{0.5 * (1.0 - b.z), 0.0};
    rho(0, 1) = cxd{0.5 * b.x, -0.5 * b.y};
    rho(1, 0) = cxd{0.5 * b.x, 0.5 * b.y};
    return DensityMatrix(std::move(rho));
}

}  // namespace mubcert
