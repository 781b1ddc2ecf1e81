#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace growthlab {

// Small dense row-major matrix. Sizes here are 2n x 2n with n rarely above 2,
// so no attempt is made at blocking or expression templates.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    double entry_abs_sum() const {
        double s = 0.0;
        for (double v : a_) s += std::abs(v);
        return s;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Mat multiply: shape mismatch");
        Mat c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
        return c;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        Mat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
        return c;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Mat apply: shape mismatch");
        std::vector<double> y(rows_, 0.0);
        for (int i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

// Standard symplectic form on R^{2n}: [[0, I], [-I, 0]].
inline Mat symplectic_form(int n) {
    Mat j(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j(i, n + i) = 1.0;
        j(n + i, i) = -1.0;
    }
    return j;
}

// exp(tau * J_n) = [[cos(tau) I, sin(tau) I], [-sin(tau) I, cos(tau) I]].
inline Mat rotation_exp(int n, double tau) {
    Mat r(2 * n, 2 * n);
    const double c = std::cos(tau), s = std::sin(tau);
    for (int i = 0; i < n; ++i) {
        r(i, i) = c;
        r(i, n + i) = s;
        r(n + i, i) = -s;
        r(n + i, n + i) = c;
    }
    return r;
}

// max |(A^T J + J A)_{ij}|, zero exactly when A is a Hamiltonian matrix.
inline double hamiltonian_defect(const Mat& a) {
    const int n2 = a.rows();
    const Mat j = symplectic_form(n2 / 2);
    return (a.transpose() * j + j * a).max_abs();
}

// max |(W^T J W - J)_{ij}|, zero exactly when W is symplectic.
inline double symplectic_defect(const Mat& w) {
    const int n2 = w.rows();
    const Mat j = symplectic_form(n2 / 2);
    return (w.transpose() * j * w - j).max_abs();
}

// Largest singular value of a 2x2 matrix. The discriminant e^2 - 4 det^2 is
// evaluated in the factored form ((a-d)^2 + (b+c)^2)((a+d)^2 + (b-c)^2),
// which is free of cancellation near repeated singular values (rotations).
inline double two_norm_2x2(const Mat& m) {
    const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const double e = a * a + b * b + c * c + d * d;
    const double disc = ((a - d) * (a - d) + (b + c) * (b + c)) *
                        ((a + d) * (a + d) + (b - c) * (b - c));
    return std::sqrt(0.5 * (e + std::sqrt(std::max(0.0, disc))));
}

// Matrix size measure used for growth laws: exact operator 2-norm for 2x2,
// the equivalent entry-sum norm otherwise.
inline double flow_matrix_norm(const Mat& m) {
    if (m.rows() == 2 && m.cols() == 2) return two_norm_2x2(m);
    return m.entry_abs_sum();
}

inline double euclidean_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace growthlab
