#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace growthlab {

// Complex banded LU with partial pivoting, LAPACK band storage: column j of
// the matrix lives in ab[j * ldab + (kl + ku + i - j)] for
// max(0, j - ku) <= i <= min(n - 1, j + kl); the extra kl rows on top absorb
// pivoting fill, giving an effective upper bandwidth of kl + ku.
class BandedLU {
public:
    using cd = std::complex<double>;

    BandedLU(int n, int kl, int ku)
        : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1),
          ab_(static_cast<size_t>(n) * ldab_), piv_(n) {}

    void reset(int n) {
        n_ = n;
        ab_.assign(static_cast<size_t>(n) * ldab_, cd(0.0, 0.0));
        piv_.assign(n, 0);
        factored_ = false;
    }

    int size() const { return n_; }

    // Entry accessor valid for i - j in [-(kl+ku), kl].
    cd& at(int i, int j) { return ab_[static_cast<size_t>(j) * ldab_ + (kl_ + ku_ + i - j)]; }
    cd at(int i, int j) const { return ab_[static_cast<size_t>(j) * ldab_ + (kl_ + ku_ + i - j)]; }

    void factor() {
        for (int j = 0; j < n_; ++j) {
            const int imax = std::min(j + kl_, n_ - 1);
            int p = j;
            double best = std::abs(at(j, j));
            for (int i = j + 1; i <= imax; ++i) {
                const double v = std::abs(at(i, j));
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            piv_[j] = p;
            if (best == 0.0) throw std::runtime_error("BandedLU: singular matrix");
            const int jend = std::min(j + kl_ + ku_, n_ - 1);
            if (p != j)
                for (int c = j; c <= jend; ++c) std::swap(at(p, c), at(j, c));
            const cd pivot = at(j, j);
            for (int i = j + 1; i <= imax; ++i) {
                const cd m = at(i, j) / pivot;
                at(i, j) = m;
                if (m != cd(0.0, 0.0))
                    for (int c = j + 1; c <= jend; ++c) at(i, c) -= m * at(j, c);
            }
        }
        factored_ = true;
    }

    void solve(std::vector<cd>& x) const {
        if (!factored_) throw std::logic_error("BandedLU: solve before factor");
        if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("BandedLU: size mismatch");
        for (int j = 0; j < n_; ++j) {
            if (piv_[j] != j) std::swap(x[j], x[piv_[j]]);
            const cd xj = x[j];
            if (xj == cd(0.0, 0.0)) continue;
            const int imax = std::min(j + kl_, n_ - 1);
            for (int i = j + 1; i <= imax; ++i) x[i] -= at(i, j) * xj;
        }
        for (int j = n_ - 1; j >= 0; --j) {
            cd s = x[j];
            const int cend = std::min(j + kl_ + ku_, n_ - 1);
            for (int c = j + 1; c <= cend; ++c) s -= at(j, c) * x[c];
            x[j] = s / at(j, j);
        }
    }

private:
    int n_;
    int kl_, ku_;
    int ldab_;
    std::vector<cd> ab_;
    std::vector<int> piv_;
    bool factored_ = false;
};

}  // namespace growthlab
