#include "growthlab/classical_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace growthlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

AffineSystemSpec oscillator_system(const Perturbation& p, double a) {
    AffineSystemSpec spec;
    spec.dim = 1;
    spec.label = "oscillator[" + p.label + (a != 0.0 ? ", forced" : "") + "]";
    Perturbation pert = p;
    spec.coeff = [pert](double t) {
        Mat m(2, 2);
        m(0, 1) = 1.0;
        m(1, 0) = -(1.0 + pert.phi(t));
        return m;
    };
    if (a != 0.0) {
        spec.forcing = [a](double t) { return std::vector<double>{0.0, a * std::sin(t)}; };
    }
    return spec;
}

FlowResult integrate_flow(const AffineSystemSpec& spec, double t0, double t_end, double tol,
                          double sample_step, const std::vector<double>& z0) {
    const int n = spec.dim;
    const int d = 2 * n;
    const size_t mat = static_cast<size_t>(d) * d;
    if (static_cast<int>(z0.size()) != d)
        throw std::invalid_argument("integrate_flow: z0 size must be 2n");

    // state layout: [W | U | z], all row-major
    std::vector<double> y0(2 * mat + d, 0.0);
    const Mat jn = symplectic_form(n);
    for (int i = 0; i < d; ++i) y0[static_cast<size_t>(i) * d + i] = 1.0;  // W = I
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) y0[mat + static_cast<size_t>(i) * d + j] = jn(i, j);  // U = J
    for (int i = 0; i < d; ++i) y0[2 * mat + i] = z0[i];

    auto rhs = [&spec, n, d, mat](double t, const std::vector<double>& y, std::vector<double>& dy) {
        const Mat a = spec.coeff(t);
        if (a.rows() != d || a.cols() != d)
            throw std::invalid_argument("integrate_flow: A(t) has wrong shape");
        const double defect = hamiltonian_defect(a);
        if (defect > 1e-12 * (1.0 + a.max_abs()))
            throw std::domain_error("integrate_flow: A(t) is not a Hamiltonian matrix at t=" +
                                    std::to_string(t));
        // W' = A W
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double s = 0.0;
                for (int k = 0; k < d; ++k) s += a(i, k) * y[static_cast<size_t>(k) * d + j];
                dy[static_cast<size_t>(i) * d + j] = s;
            }
        // U' = A U - U J; (U J) has columns [-U_right | U_left]
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double s = 0.0;
                for (int k = 0; k < d; ++k) s += a(i, k) * y[mat + static_cast<size_t>(k) * d + j];
                const double uj = (j < n) ? -y[mat + static_cast<size_t>(i) * d + (j + n)]
                                          : y[mat + static_cast<size_t>(i) * d + (j - n)];
                dy[mat + static_cast<size_t>(i) * d + j] = s - uj;
            }
        // z' = A z + ell
        for (int i = 0; i < d; ++i) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += a(i, k) * y[2 * mat + k];
            dy[2 * mat + i] = s;
        }
        if (spec.forcing) {
            const auto ell = spec.forcing(t);
            for (int i = 0; i < d; ++i) dy[2 * mat + i] += ell[i];
        }
    };

    FlowResult out;
    out.dim = n;
    out.t0 = t0;
    auto observe = [&out, n, d, mat](double t, const std::vector<double>& y) {
        Mat w(d, d), u(d, d);
        std::vector<double> z(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                w(i, j) = y[static_cast<size_t>(i) * d + j];
                u(i, j) = y[mat + static_cast<size_t>(i) * d + j];
            }
        for (int i = 0; i < d; ++i) z[i] = y[2 * mat + i];
        out.times.push_back(t);
        out.W.push_back(std::move(w));
        out.U.push_back(std::move(u));
        out.zstar.push_back(std::move(z));
    };

    Dopri5Options opt;
    // tol names the accumulated-error scale of the sampled trajectories;
    // the embedded pair runs at a stricter local tolerance so invariant
    // defects (symplecticity, pairings) stay at tol scale over
    // hundred-unit horizons.
    opt.rtol = 1e-2 * tol;
    opt.atol = 1e-2 * tol;
    out.stats = integrate_dopri5(rhs, y0, t0, t_end, sample_step, observe, opt);
    return out;
}

double max_symplectic_defect_W(const FlowResult& flow) {
    double m = 0.0;
    for (const Mat& w : flow.W) m = std::max(m, symplectic_defect(w));
    return m;
}

double max_symplectic_defect_U(const FlowResult& flow) {
    double m = 0.0;
    for (const Mat& u : flow.U) m = std::max(m, symplectic_defect(u));
    return m;
}

double max_wtex_residual(const FlowResult& flow) {
    const int n = flow.dim;
    const Mat jt = symplectic_form(n).transpose();
    double m = 0.0;
    for (size_t i = 0; i < flow.times.size(); ++i) {
        const Mat pred = flow.U[i] * rotation_exp(n, flow.times[i] - flow.t0) * jt;
        m = std::max(m, (flow.W[i] - pred).max_abs());
    }
    return m;
}

SymplecticPairingReport check_symplectic_pairings(const FlowResult& flow) {
    const int n = flow.dim;
    const int d = 2 * n;
    const Mat jn = symplectic_form(n);
    SymplecticPairingReport rep;
    for (const Mat& u : flow.U) {
        // pairing(j, i) = <X_j, J X_i> with X_j the j-th column of U
        auto pairing = [&](int j, int i) {
            double s = 0.0;
            for (int r = 0; r < d; ++r) {
                double jx = 0.0;
                for (int c = 0; c < d; ++c) jx += jn(r, c) * u(c, i);
                s += u(r, j) * jx;
            }
            return s;
        };
        for (int j = 0; j < n; ++j)
            rep.diag_defect = std::max(rep.diag_defect, std::abs(pairing(j, n + j) - 1.0));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                rep.block_defect = std::max(rep.block_defect, std::abs(pairing(j, i)));
                rep.block_defect = std::max(rep.block_defect, std::abs(pairing(n + j, n + i)));
                if (i != j)
                    rep.cross_defect = std::max(rep.cross_defect, std::abs(pairing(j, n + i)));
            }
    }
    return rep;
}

AnalyticBasis::AnalyticBasis(GrowthRate rate, double quad_tol)
    : rate_(std::move(rate)), quad_tol_(quad_tol), hf_(rate_, quad_tol) {
    const GrowthRate r = rate_;
    const HfEvaluator hf = hf_;
    g_ = std::make_shared<CumulativeIntegral>(
        [r, hf](double s) {
            return std::sin(2.0 * s) * r.log_deriv(s) * std::exp(-2.0 * hf.log_value(s));
        },
        rate_.t0, quad_tol);
}

AnalyticBasis::Values AnalyticBasis::eval(double t) const {
    const double h = hf_.value(t);
    const double g = rate_.log_deriv(t);
    const double gg = g_->value(t);
    const double c = std::cos(t), s = std::sin(t);
    Values v;
    v.xi1 = c * h;
    v.x1 = (-s + g * c * c * c) * h;
    v.xi2 = s / h + c * h * gg;
    v.x2 = (c + g * c * c * s) / h + (g * c * c * c - s) * h * gg;
    return v;
}

bool AnalyticBasis::t0_aligned() const {
    const double k = (rate_.t0 - kPi / 2.0) / (2.0 * kPi);
    return std::abs(k - std::round(k)) < 1e-9 && std::round(k) >= 0.0;
}

Mat AnalyticBasis::fundamental(double t) const {
    if (!t0_aligned())
        throw std::domain_error("AnalyticBasis::fundamental: t0 must equal 2k*pi + pi/2");
    const Values v = eval(t);
    Mat w(2, 2);
    w(0, 0) = v.xi2;
    w(0, 1) = -v.xi1;
    w(1, 0) = v.x2;
    w(1, 1) = -v.x1;
    return w;
}

Mat AnalyticBasis::fundamental_general(double t) const {
    const Values v = eval(t);
    const Values v0 = eval(rate_.t0);
    Mat w(2, 2), w0inv(2, 2);
    w(0, 0) = v.xi2;
    w(0, 1) = -v.xi1;
    w(1, 0) = v.x2;
    w(1, 1) = -v.x1;
    // det of the basis matrix is the Wronskian, identically 1
    w0inv(0, 0) = -v0.x1;
    w0inv(0, 1) = v0.xi1;
    w0inv(1, 0) = -v0.x2;
    w0inv(1, 1) = v0.xi2;
    return w * w0inv;
}

double AnalyticBasis::ode_residual(int j, double t, double h) const {
    auto xi = [this, j](double s) {
        const Values v = eval(s);
        return j == 1 ? v.xi1 : v.xi2;
    };
    const double second = (xi(t + h) - 2.0 * xi(t) + xi(t - h)) / (h * h);
    const Perturbation p = build_phi(rate_);
    return second + (1.0 + p.phi(t)) * xi(t);
}

const CumulativeIntegral& AnalyticBasis::forced_sin_xi2() const {
    std::lock_guard<std::mutex> lock(lazy_mu_);
    if (!sin_xi2_) {
        const AnalyticBasis* self = this;
        sin_xi2_ = std::make_shared<CumulativeIntegral>(
            [self](double s) { return std::sin(s) * self->eval(s).xi2; }, rate_.t0, quad_tol_);
    }
    return *sin_xi2_;
}

const CumulativeIntegral& AnalyticBasis::forced_sin_xi1() const {
    std::lock_guard<std::mutex> lock(lazy_mu_);
    if (!sin_xi1_) {
        const AnalyticBasis* self = this;
        sin_xi1_ = std::make_shared<CumulativeIntegral>(
            [self](double s) { return std::sin(s) * self->eval(s).xi1; }, rate_.t0, quad_tol_);
    }
    return *sin_xi1_;
}

std::vector<double> AnalyticBasis::forced_particular(double a, double t, double quad_tol) const {
    if (quad_tol < quad_tol_)
        throw std::invalid_argument(
            "forced_particular: requested tolerance finer than the basis quadrature tolerance");
    if (a == 0.0) return {0.0, 0.0};
    if (!t0_aligned())
        throw std::domain_error("forced_particular: t0 must equal 2k*pi + pi/2");
    // W11 = xi2, W12 = -xi1, W21 = x2, W22 = -x1; W(s)^{-1} (0, sin s) =
    // sin(s) (-W12(s), W11(s)).
    const double ia = forced_sin_xi2().value(t);   // integral sin(s) W11(s)
    const double ib = -forced_sin_xi1().value(t);  // integral sin(s) W12(s)
    const Values v = eval(t);
    const double w11 = v.xi2, w12 = -v.xi1, w21 = v.x2, w22 = -v.x1;
    return {a * (w12 * ia - w11 * ib), a * (w22 * ia - w21 * ib)};
}

const CumulativeIntegral& AnalyticBasis::app_i1() const {
    std::lock_guard<std::mutex> lock(lazy_mu_);
    if (!i1_) {
        const HfEvaluator hf = hf_;
        i1_ = std::make_shared<CumulativeIntegral>(
            [hf](double s) {
                const double sn = std::sin(s);
                return sn * sn * std::exp(-hf.log_value(s));
            },
            rate_.t0, quad_tol_);
    }
    return *i1_;
}

const CumulativeIntegral& AnalyticBasis::app_i2() const {
    std::lock_guard<std::mutex> lock(lazy_mu_);
    if (!i2_) {
        const HfEvaluator hf = hf_;
        i2_ = std::make_shared<CumulativeIntegral>(
            [hf](double s) { return std::sin(2.0 * s) * hf.value(s); }, rate_.t0, quad_tol_);
    }
    return *i2_;
}

const CumulativeIntegral& AnalyticBasis::app_i3q() const {
    std::lock_guard<std::mutex> lock(lazy_mu_);
    if (!i3q_) {
        const HfEvaluator hf = hf_;
        const std::shared_ptr<CumulativeIntegral> g = g_;
        i3q_ = std::make_shared<CumulativeIntegral>(
            [hf, g](double s) { return std::sin(2.0 * s) * hf.value(s) * g->value(s); },
            rate_.t0, quad_tol_);
    }
    return *i3q_;
}

AnalyticBasis::AppendixReport AnalyticBasis::appendix_integrals(double t) const {
    AppendixReport rep;
    rep.i1 = app_i1().value(t);
    rep.i2 = app_i2().value(t);
    // integral of sin(2s) H(s) (G(t) - G(s)) over [t0, t]
    rep.i3 = g_->value(t) * rep.i2 - app_i3q().value(t);
    const double fr = std::sqrt(rate_.f(t));
    rep.band1 = rep.i1 * fr / (t - rate_.t0);
    rep.band2 = std::abs(rep.i2) / fr;
    rep.band3 = std::abs(rep.i3);
    return rep;
}

OscillatoryIntegralReport oscillatory_integral_check(
    const std::function<double(double)>& G,
    const std::vector<std::function<double(double)>>& derivatives, int N, double t0,
    double horizon, double quad_tol) {
    if (N < 1) throw std::invalid_argument("oscillatory_integral_check: N must be >= 1");
    if (static_cast<int>(derivatives.size()) < N)
        throw std::invalid_argument("oscillatory_integral_check: need G' .. G^(N)");
    CumulativeIntegral cum_cos([G](double s) { return std::cos(2.0 * s) * G(s); }, t0, quad_tol);
    CumulativeIntegral cum_sin([G](double s) { return std::sin(2.0 * s) * G(s); }, t0, quad_tol);

    OscillatoryIntegralReport rep;
    const double decade_start = std::max(t0 + 1.0, horizon / 10.0);
    double sup_early = 0.0;
    const double step = kPi / 8.0;
    const double tail_start = horizon - 0.1 * (horizon - t0);
    for (double t = t0; t <= horizon + 1e-9 * horizon; t += step) {
        const double vc = std::abs(cum_cos.value(t));
        const double vs = std::abs(cum_sin.value(t));
        rep.sup_cos = std::max(rep.sup_cos, vc);
        rep.sup_sin = std::max(rep.sup_sin, vs);
        if (t <= decade_start) sup_early = std::max({sup_early, vc, vs});
        if (t >= tail_start) {
            // decay evidence for G, G', ..., G^(N-1)
            rep.deriv_tail_sup = std::max(rep.deriv_tail_sup, std::abs(G(t)));
            for (int j = 0; j + 1 < N; ++j)
                rep.deriv_tail_sup = std::max(rep.deriv_tail_sup, std::abs(derivatives[j](t)));
        }
    }
    const double sup_total = std::max(rep.sup_cos, rep.sup_sin);
    rep.tail_increase = sup_total > 0.0 ? (sup_total - sup_early) / sup_total : 0.0;
    rep.bounded_on_horizon = rep.tail_increase < 0.01;
    return rep;
}

}  // namespace growthlab
