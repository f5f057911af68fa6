#include "gsqg/spectral.hpp"

#include "gsqg/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

namespace gsqg {

namespace {

// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct Spectral::Plans {
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
    ~Plans() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
        fftw_free(real);
        fftw_free(cplx);
    }
};

Spectral::Spectral(int n, double box_length)
    : n_(n), box_length_(box_length), kscale_(2.0 * std::numbers::pi / box_length), plans_(std::make_unique<Plans>()) {
    if (n < 2 || n % 2 != 0) throw PreconditionError("Spectral: n must be even and >= 2");
    if (!(box_length > 0.0)) throw PreconditionError("Spectral: box_length must be > 0");
    const std::size_t nr = static_cast<std::size_t>(n) * n, nc = static_cast<std::size_t>(n) * half();
    std::lock_guard<std::mutex> lock(planner_mutex());
    plans_->real = fftw_alloc_real(nr);
    plans_->cplx = fftw_alloc_complex(nc);
    plans_->fwd = fftw_plan_dft_r2c_2d(n, n, plans_->real, plans_->cplx, FFTW_ESTIMATE);
    plans_->inv = fftw_plan_dft_c2r_2d(n, n, plans_->cplx, plans_->real, FFTW_ESTIMATE);
}

Spectral::~Spectral() = default;

Spectrum Spectral::forward(const std::vector<double>& x) {
    const std::size_t nr = static_cast<std::size_t>(n_) * n_;
    if (x.size() != nr) throw PreconditionError("Spectral::forward: size mismatch");
    std::memcpy(plans_->real, x.data(), nr * sizeof(double));
    fftw_execute(plans_->fwd);
    Spectrum s(static_cast<std::size_t>(n_) * half());
    std::memcpy(reinterpret_cast<double*>(s.data()), plans_->cplx, s.size() * sizeof(fftw_complex));
    return s;
}

std::vector<double> Spectral::inverse(const Spectrum& s) {
    if (s.size() != static_cast<std::size_t>(n_) * half()) throw PreconditionError("Spectral::inverse: size mismatch");
    // c2r destroys its input, so copy into the scratch buffer.
    std::memcpy(plans_->cplx, reinterpret_cast<const double*>(s.data()), s.size() * sizeof(fftw_complex));
    fftw_execute(plans_->inv);
    const std::size_t nr = static_cast<std::size_t>(n_) * n_;
    std::vector<double> x(nr);
    const double scale = 1.0 / static_cast<double>(nr);
    for (std::size_t k = 0; k < nr; ++k) x[k] = plans_->real[k] * scale;
    return x;
}

Spectrum Spectral::apply_power(const Spectrum& s, double p) const {
    Spectrum out(s.size());
    const int h = half();
    for (int i = 0; i < n_; ++i) {
        const double a = k1(i);
        for (int j = 0; j < h; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * h + j;
            if (i == 0 && j == 0) {
                out[idx] = 0.0;
                continue;
            }
            const double b = k2(j);
            out[idx] = s[idx] * std::pow(a * a + b * b, 0.5 * p);
        }
    }
    return out;
}

Spectrum Spectral::riesz_stream_hat(const Spectrum& theta_hat, double beta) const {
    return apply_power(theta_hat, beta - 2.0);
}

Spectrum Spectral::d1(const Spectrum& s) const {
    Spectrum out(s.size());
    const int h = half();
    for (int i = 0; i < n_; ++i) {
        const Complex f = i == n_ / 2 ? Complex(0.0) : Complex(0.0, k1(i));
        for (int j = 0; j < h; ++j) out[static_cast<std::size_t>(i) * h + j] = f * s[static_cast<std::size_t>(i) * h + j];
    }
    return out;
}

Spectrum Spectral::d2(const Spectrum& s) const {
    Spectrum out(s.size());
    const int h = half();
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < h; ++j) {
            const Complex f = j == n_ / 2 ? Complex(0.0) : Complex(0.0, k2(j));
            out[static_cast<std::size_t>(i) * h + j] = f * s[static_cast<std::size_t>(i) * h + j];
        }
    return out;
}

void Spectral::dealias(Spectrum& s, double fraction) const {
    const int cut = static_cast<int>(std::floor(fraction * n_ / 2.0));
    const int h = half();
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < h; ++j)
            if (std::abs(mode1(i)) > cut || mode2(j) > cut) s[static_cast<std::size_t>(i) * h + j] = 0.0;
}

bool Spectral::is_dealiased(const Spectrum& s, double fraction, double tol) const {
    Spectrum c = s;
    dealias(c, fraction);
    for (std::size_t k = 0; k < s.size(); ++k)
        if (std::abs(s[k] - c[k]) > tol) return false;
    return true;
}

double Spectral::evaluate(const Spectrum& s, double x1, double x2) const {
    // Node index coordinates; the grid starts at -L/2.
    const double h = box_length_ / n_;
    const double s1 = (x1 + 0.5 * box_length_) / h, s2 = (x2 + 0.5 * box_length_) / h;
    const int hh = half();
    const double w = 2.0 * std::numbers::pi / n_;
    double acc = 0.0;
    for (int i = 0; i < n_; ++i) {
        const double p1 = w * mode1(i) * s1;
        for (int j = 0; j < hh; ++j) {
            const double weight = (j == 0 || j == n_ / 2) ? 1.0 : 2.0;
            const Complex e = std::polar(1.0, p1 + w * mode2(j) * s2);
            acc += weight * (s[static_cast<std::size_t>(i) * hh + j] * e).real();
        }
    }
    return acc / (static_cast<double>(n_) * n_);
}

ScalarField riesz_stream(const ScalarField& theta, double beta, Spectral& sp) {
    ScalarField psi(theta.n, theta.box_length);
    psi.time = theta.time;
    psi.values = sp.inverse(sp.riesz_stream_hat(sp.forward(theta.values), beta));
    return psi;
}

ScalarField riesz_stream(const ScalarField& theta, double beta) {
    Spectral sp(theta.n, theta.box_length);
    return riesz_stream(theta, beta, sp);
}

VelocityField velocity(const ScalarField& theta, double beta, Spectral& sp) {
    const Spectrum psi = sp.riesz_stream_hat(sp.forward(theta.values), beta);
    VelocityField u;
    u.u1 = sp.inverse(sp.d2(psi));
    Spectrum m = sp.d1(psi);
    for (auto& c : m) c = -c;
    u.u2 = sp.inverse(m);
    return u;
}

VelocityField velocity(const ScalarField& theta, double beta) {
    Spectral sp(theta.n, theta.box_length);
    return velocity(theta, beta, sp);
}

double max_speed(const VelocityField& u) {
    double m = 0.0;
    for (std::size_t k = 0; k < u.u1.size(); ++k) m = std::max(m, std::hypot(u.u1[k], u.u2[k]));
    return m;
}

double relative_divergence(const VelocityField& u, Spectral& sp) {
    const Spectrum a = sp.d1(sp.forward(u.u1));
    Spectrum b = sp.d2(sp.forward(u.u2));
    for (std::size_t k = 0; k < b.size(); ++k) b[k] += a[k];
    const std::vector<double> div = sp.inverse(b);
    double dmax = 0.0;
    for (double v : div) dmax = std::max(dmax, std::fabs(v));
    const double umax = max_speed(u);
    if (umax == 0.0) return dmax;
    // Divergence has units of u / length; compare against max|u| times the largest wavenumber.
    return dmax / (umax * sp.k1(sp.n() / 2 - 1));
}

}  // namespace gsqg
