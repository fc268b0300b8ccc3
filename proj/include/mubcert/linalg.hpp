// Dense complex linear algebra for small Hilbert spaces (d <= ~16):
// vectors, square matrices, projectors, traces, and a cyclic-Jacobi
// Hermitian eigensolver. No external dependencies.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mubcert {

using cxd = std::complex<double>;

// Raised when an input fails a structural precondition (non-unit vector,
// non-Hermitian matrix, malformed file, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTol = 1e-10;  // global Hermiticity tolerance
inline constexpr double kUnitNormTol = 1e-12;   // unit-vector tolerance

class ComplexVector {
  public:
    ComplexVector() = default;
    explicit ComplexVector(std::vector<cxd> entries) : e_(std::move(entries)) {
        if (e_.empty()) {
            throw ValidationError("ComplexVector: length must be >= 1");
        }
        for (const cxd& z : e_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw ValidationError("ComplexVector: non-finite entry");
            }
        }
    }

    static ComplexVector basis_state(int dim, int k) {
        std::vector<cxd> e(static_cast<size_t>(dim), cxd{0.0, 0.0});
        e.at(static_cast<size_t>(k)) = cxd{1.0, 0.0};
        return ComplexVector(std::move(e));
    }

    int dim() const { return static_cast<int>(e_.size()); }
    cxd& operator[](int i) { return e_[static_cast<size_t>(i)]; }
    const cxd& operator[](int i) const { return e_[static_cast<size_t>(i)]; }
    std::span<const cxd> entries() const { return e_; }

    double norm() const {
        double s = 0.0;
        for (const cxd& z : e_) s += std::norm(z);
        return std::sqrt(s);
    }

    bool is_unit(double tol = kUnitNormTol) const { return std::abs(norm() - 1.0) <= tol; }

    ComplexVector normalized() const {
        const double n = norm();
        if (n < 1e-150) throw ValidationError("ComplexVector: cannot normalize (near-)zero vector");
        ComplexVector out = *this;
        for (cxd& z : out.e_) z /= n;
        return out;
    }

  private:
    std::vector<cxd> e_;
};

// <a|b> = sum_i conj(a_i) b_i
inline cxd inner(const ComplexVector& a, const ComplexVector& b) {
    if (a.dim() != b.dim()) throw ValidationError("inner: dimension mismatch");
    cxd s{0.0, 0.0};
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Square d x d complex matrix, row-major.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(int dim)
        : dim_(dim), e_(static_cast<size_t>(dim) * static_cast<size_t>(dim), cxd{0.0, 0.0}) {
        if (dim < 1) throw ValidationError("ComplexMatrix: dimension must be >= 1");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = cxd{1.0, 0.0};
        return m;
    }

    int dim() const { return dim_; }
    cxd& operator()(int i, int j) { return e_[static_cast<size_t>(i) * dim_ + j]; }
    const cxd& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * dim_ + j]; }
    std::span<const cxd> entries() const { return e_; }

    cxd trace() const {
        cxd s{0.0, 0.0};
        for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
        return s;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    // max_ij |A_ij - conj(A_ji)|
    double hermiticity_defect() const {
        double worst = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j <= i; ++j)
                worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return worst;
    }

    double max_abs_diff(const ComplexMatrix& other) const {
        if (other.dim_ != dim_) throw ValidationError("max_abs_diff: dimension mismatch");
        double worst = 0.0;
        for (size_t i = 0; i < e_.size(); ++i) worst = std::max(worst, std::abs(e_[i] - other.e_[i]));
        return worst;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cxd& z : e_) s += std::norm(z);
        return std::sqrt(s);
    }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const {
        if (rhs.dim_ != dim_) throw ValidationError("operator*: dimension mismatch");
        ComplexMatrix out(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < dim_; ++k) {
                const cxd aik = (*this)(i, k);
                if (aik == cxd{0.0, 0.0}) continue;
                for (int j = 0; j < dim_; ++j) out(i, j) += aik * rhs(k, j);
            }
        return out;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
        if (rhs.dim_ != dim_) throw ValidationError("operator+=: dimension mismatch");
        for (size_t i = 0; i < e_.size(); ++i) e_[i] += rhs.e_[i];
        return *this;
    }

    ComplexMatrix operator+(const ComplexMatrix& rhs) const {
        ComplexMatrix out = *this;
        out += rhs;
        return out;
    }

    ComplexMatrix operator-(const ComplexMatrix& rhs) const {
        if (rhs.dim_ != dim_) throw ValidationError("operator-: dimension mismatch");
        ComplexMatrix out = *this;
        for (size_t i = 0; i < out.e_.size(); ++i) out.e_[i] -= rhs.e_[i];
        return out;
    }

    ComplexMatrix scaled(cxd factor) const {
        ComplexMatrix out = *this;
        for (cxd& z : out.e_) z *= factor;
        return out;
    }

  private:
    int dim_;
    std::vector<cxd> e_;
};

// |v><v| for a unit vector v.
inline ComplexMatrix projector(const ComplexVector& v) {
    if (!v.is_unit()) {
        throw ValidationError("projector: input vector is not unit norm (deviation " +
                              std::to_string(std::abs(v.norm() - 1.0)) + ")");
    }
    ComplexMatrix p(v.dim());
    for (int i = 0; i < v.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) p(i, j) = v[i] * std::conj(v[j]);
    return p;
}

// Re tr(AB), computed without forming the product.
inline double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("trace_product: dimension mismatch");
    cxd s{0.0, 0.0};
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) s += a(i, j) * b(j, i);
    return s.real();
}

struct EigenSystem {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column k pairs with values[k]
};

namespace detail {

inline double offdiagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

// Cyclic Jacobi rotations on a Hermitian matrix. Dimensions here are tiny,
// so the O(d^3)-per-sweep cost is irrelevant; convergence is quadratic once
// the off-diagonal mass is small. Stops when that mass drops below
// 1e-14 * max(1, ||A||_F) or after 100 sweeps.
inline EigenSystem hermitian_eigensystem(const ComplexMatrix& input) {
    if (input.hermiticity_defect() > kHermitianTol) {
        throw ValidationError("hermitian_eigensystem: matrix is not Hermitian within tolerance");
    }
    const int n = input.dim();
    ComplexMatrix a = input;
    // Symmetrize exactly so rotations act on an exactly Hermitian matrix.
    for (int i = 0; i < n; ++i) {
        a(i, i) = cxd{a(i, i).real(), 0.0};
        for (int j = i + 1; j < n; ++j) {
            const cxd m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = 1e-14 * std::max(1.0, a.frobenius_norm());

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (detail::offdiagonal_norm(a) < threshold) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cxd apq = a(p, q);
                const double r = std::abs(apq);
                if (r < 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double sign = tau >= 0.0 ? 1.0 : -1.0;
                const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cxd s = (t * c) * (apq / r);
                // A <- G^dagger A G with G(p,p)=G(q,q)=c, G(p,q)=s, G(q,p)=-conj(s)
                for (int i = 0; i < n; ++i) {
                    const cxd aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - std::conj(s) * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const cxd apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = std::conj(s) * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    const cxd vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - std::conj(s) * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem out{std::vector<double>(static_cast<size_t>(n)), ComplexMatrix(n)};
    for (int k = 0; k < n; ++k) {
        out.values[static_cast<size_t>(k)] = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[static_cast<size_t>(k)]);
    }
    return out;
}

// All eigenvalues of a Hermitian matrix, descending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    return hermitian_eigensystem(a).values;
}

}  // namespace mubcert
