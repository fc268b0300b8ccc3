// Shared test helpers: random matrix/state generators driven by the library
// PRNG, and the tangent-space perturbation used for the local-maximum check
// of the extremal probability table.

#pragma once

#include <cmath>
#include <vector>

#include "mubcert/mubcert.hpp"

namespace mubcert::testutil {

inline ComplexMatrix random_hermitian(int d, SplitMix64& rng) {
    ComplexMatrix a(d);
    for (int i = 0; i < d; ++i) {
        a(i, i) = cxd{rng.normal(), 0.0};
        for (int j = i + 1; j < d; ++j) {
            const cxd z{rng.normal(), rng.normal()};
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    }
    return a;
}

// Generic full-rank mixed state: a simplex-weighted combination of d Haar
// pure states (not diagonal in any particular basis).
inline DensityMatrix random_mixed_state(int d, SplitMix64& rng) {
    std::vector<double> w(static_cast<size_t>(d));
    double total = 0.0;
    for (double& x : w) {
        x = -std::log(rng.uniform01_open());
        total += x;
    }
    ComplexMatrix rho(d);
    for (int s = 0; s < d; ++s) {
        const ComplexVector psi = haar_random_state(d, rng);
        const double weight = w[static_cast<size_t>(s)] / total;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) rho(i, j) += weight * psi[i] * std::conj(psi[j]);
    }
    return DensityMatrix(std::move(rho));
}

// Random unit direction tangent to both constraint manifolds at table p:
// every row of the direction sums to zero, and it is orthogonal to the
// gradient of sum p^2 restricted to that subspace (entries p_nk - 1/d).
inline std::vector<double> tangent_direction(const ProbabilityTable& p, SplitMix64& rng) {
    const int n = p.n_bases(), d = p.dim();
    std::vector<double> eta(static_cast<size_t>(n) * d);
    for (double& x : eta) x = rng.normal();
    for (int row = 0; row < n; ++row) {
        double mean = 0.0;
        for (int k = 0; k < d; ++k) mean += eta[static_cast<size_t>(row) * d + k];
        mean /= d;
        for (int k = 0; k < d; ++k) eta[static_cast<size_t>(row) * d + k] -= mean;
    }
    double gg = 0.0, ge = 0.0;
    for (int row = 0; row < n; ++row)
        for (int k = 0; k < d; ++k) {
            const double g = p.at(row, k) - 1.0 / d;
            gg += g * g;
            ge += g * eta[static_cast<size_t>(row) * d + k];
        }
    if (gg > 1e-24) {
        const double t = ge / gg;
        for (int row = 0; row < n; ++row)
            for (int k = 0; k < d; ++k) eta[static_cast<size_t>(row) * d + k] -= t * (p.at(row, k) - 1.0 / d);
    }
    double norm = 0.0;
    for (double x : eta) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 1e-12)
        for (double& x : eta) x /= norm;
    return eta;
}

// Total entropy of the perturbed table p + eps * eta, without constructing a
// ProbabilityTable (the perturbation is infinitesimal and already row-sum
// preserving).
inline double perturbed_entropy(const ProbabilityTable& p, const std::vector<double>& eta, double eps) {
    double h = 0.0;
    for (int n = 0; n < p.n_bases(); ++n)
        for (int k = 0; k < p.dim(); ++k) {
            const double x = p.at(n, k) + eps * eta[static_cast<size_t>(n) * p.dim() + k];
            if (x > 0.0) h -= x * std::log(x);
        }
    return h;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    std::vector<cxd> out;
    out.reserve(static_cast<size_t>(a.dim()) * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) out.push_back(a[i] * b[j]);
    return ComplexVector(std::move(out));
}

// Three mutually unbiased bases in dimension 6 from tensor products: if bases
// P, Q are unbiased in d=2 and R, S in d=3, then P x R and Q x S are unbiased
// in d=6 with overlap (1/2)(1/3) = 1/6.
inline MubSet six_dim_triple() {
    const MubSet q2 = standard_mubs(2, 3);
    const MubSet q3 = standard_mubs(3, 4);
    std::vector<OrthonormalBasis> bases;
    for (int pair = 0; pair < 3; ++pair) {
        OrthonormalBasis b{"B_" + std::to_string(pair + 1), {}};
        for (const ComplexVector& u : q2.basis(pair).vectors)
            for (const ComplexVector& v : q3.basis(pair).vectors) b.vectors.push_back(kron(u, v));
        bases.push_back(std::move(b));
    }
    return MubSet::from_bases(std::move(bases));
}

}  // namespace mubcert::testutil
