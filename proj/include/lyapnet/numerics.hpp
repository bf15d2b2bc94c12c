#pragma once

#include <algorithm>
#include <cstring>
#include <functional>
#include <limits>

#include "lyapnet/common.hpp"

namespace lyapnet {

// Default tolerances for the dense kernels below. Callers may pass their own
// values where a parameter is exposed.
struct NumericsTol {
    static constexpr double power_iter_rel = 1e-10;
    static constexpr int power_iter_max = 10000;
    static constexpr double singular_pivot = 1e-300;
};

// Dense row-major matrix. Everything in this project is tiny (at most a few
// hundred entries), so the representation stays simple and contiguous.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
        require(rows > 0 && cols > 0, "Mat: dimensions must be positive");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const int r = static_cast<int>(rows.size());
        const int c = static_cast<int>(rows.begin()->size());
        Mat m(r, c);
        int i = 0;
        for (const auto& row : rows) {
            require(static_cast<int>(row.size()) == c, "Mat: ragged initializer");
            int j = 0;
            for (double v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    double* row_ptr(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
    const double* row_ptr(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }

    Vec& data() { return data_; }
    const Vec& data() const { return data_; }

    bool finite() const { return all_finite(data_); }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    Vec data_;
};

inline Mat transpose(const Mat& a) {
    Mat t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    require(a.cols() == b.rows(), "matmul: inner dimensions differ");
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        const double* ai = a.row_ptr(i);
        double* ci = c.row_ptr(i);
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            const double* bk = b.row_ptr(k);
            for (int j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

inline Vec matvec(const Mat& a, const Vec& x) {
    require(a.cols() == static_cast<int>(x.size()), "matvec: dimension mismatch");
    Vec y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        const double* ai = a.row_ptr(i);
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
        y[i] = s;
    }
    return y;
}

// y = a^T x, accumulated row-wise so memory access stays contiguous.
inline Vec matvec_transposed(const Mat& a, const Vec& x) {
    require(a.rows() == static_cast<int>(x.size()), "matvec_transposed: dimension mismatch");
    Vec y(a.cols(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        const double* ai = a.row_ptr(i);
        for (int j = 0; j < a.cols(); ++j) y[j] += ai[j] * xi;
    }
    return y;
}

inline double frobenius_norm(const Mat& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

struct QrFactors {
    Mat q;  // orthonormal columns
    Mat r;  // upper triangular, nonnegative diagonal
};

// Householder QR with the diagonal of R made nonnegative by sign flips, so
// the factorization is unique and reproducible across runs.
inline QrFactors qr_decompose(const Mat& a) {
    require(a.rows() == a.cols(), "qr_decompose: matrix must be square");
    require(a.finite(), "qr_decompose: non-finite entries");
    const int n = a.rows();

    Mat r = a;
    Mat q = Mat::identity(n);
    Vec v(n);

    for (int k = 0; k < n - 1; ++k) {
        double norm_x = 0.0;
        for (int i = k; i < n; ++i) norm_x += r(i, k) * r(i, k);
        norm_x = std::sqrt(norm_x);
        if (norm_x == 0.0) continue;  // rank-deficient column: nothing to reflect

        const double alpha = (r(k, k) >= 0.0) ? -norm_x : norm_x;
        double vnorm2 = 0.0;
        for (int i = k; i < n; ++i) {
            v[i] = r(i, k);
            if (i == k) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;

        // r <- (I - 2 v v^T / v^T v) r ; q <- q (I - 2 v v^T / v^T v)
        for (int j = k; j < n; ++j) {
            double s = 0.0;
            for (int i = k; i < n; ++i) s += v[i] * r(i, j);
            s *= 2.0 / vnorm2;
            for (int i = k; i < n; ++i) r(i, j) -= s * v[i];
        }
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = k; j < n; ++j) s += q(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (int j = k; j < n; ++j) q(i, j) -= s * v[j];
        }
    }

    // Fix the sign convention and clear roundoff below the diagonal.
    for (int k = 0; k < n; ++k) {
        if (r(k, k) < 0.0) {
            for (int j = k; j < n; ++j) r(k, j) = -r(k, j);
            for (int i = 0; i < n; ++i) q(i, k) = -q(i, k);
        }
    }
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) r(i, j) = 0.0;

    return {std::move(q), std::move(r)};
}

// Largest singular value via power iteration on a^T a. Deterministic start
// vector; matrices in this project are small enough that convergence is fast.
inline double spectral_norm(const Mat& a,
                            double rel_tol = NumericsTol::power_iter_rel,
                            int max_iter = NumericsTol::power_iter_max) {
    require(a.finite(), "spectral_norm: non-finite entries");
    const int n = a.cols();
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * i;  // generic direction
    double inv = 1.0 / norm2(v);
    for (double& x : v) x *= inv;

    double sigma2 = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vec w = matvec_transposed(a, matvec(a, v));  // w = a^T a v
        const double lam = dot(v, w);
        const double wn = norm2(w);
        if (wn == 0.0) return 0.0;
        for (int i = 0; i < n; ++i) v[i] = w[i] / wn;
        if (it > 0 && std::abs(lam - sigma2) <= rel_tol * std::max(std::abs(lam), 1e-300))
            return std::sqrt(std::max(lam, 0.0));
        sigma2 = lam;
    }
    return std::sqrt(std::max(sigma2, 0.0));
}

// Gauss-Jordan with partial pivoting. Throws NumericError when a pivot
// underflows; callers that need a condition estimate combine this with
// spectral_norm.
inline Mat invert(const Mat& a) {
    require(a.rows() == a.cols(), "invert: matrix must be square");
    require(a.finite(), "invert: non-finite entries");
    const int n = a.rows();
    Mat m = a;
    Mat inv = Mat::identity(n);

    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(m(i, col)) > std::abs(m(piv, col))) piv = i;
        if (std::abs(m(piv, col)) < NumericsTol::singular_pivot)
            throw NumericError("invert: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(m(col, j), m(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
        }
        const double d = 1.0 / m(col, col);
        for (int j = 0; j < n; ++j) {
            m(col, j) *= d;
            inv(col, j) *= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            const double f = m(i, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Central differences, column by column: entry (i,j) approximates
// d func_i / d x_j.
inline Mat finite_diff_jacobian(const std::function<Vec(const Vec&)>& func,
                                const Vec& x, double h) {
    require(h > 0.0, "finite_diff_jacobian: step must be positive");
    const int n = static_cast<int>(x.size());
    Vec xp = x, xm = x;
    Mat jac(static_cast<int>(func(x).size()), n);
    for (int j = 0; j < n; ++j) {
        xp[j] = x[j] + h;
        xm[j] = x[j] - h;
        const Vec fp = func(xp);
        const Vec fm = func(xm);
        for (int i = 0; i < jac.rows(); ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
        xp[j] = x[j];
        xm[j] = x[j];
    }
    return jac;
}

}  // namespace lyapnet
