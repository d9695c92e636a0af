#include "scatter/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scatter/errors.hpp"

namespace scatter {

double trapezoid(const std::vector<double>& v, double h) {
    if (v.size() < 2) return 0.0;
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * h;
}

cplx trapezoid(const std::vector<cplx>& v, double h) {
    if (v.size() < 2) return {0.0, 0.0};
    cplx s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * h;
}

namespace {
constexpr double kEulerGamma = 0.57721566490153286061;

// E1(ix) = -Ci(x) + i (Si(x) - pi/2) for x > 0, by modified Lentz on the
// continued fraction e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...))).
void cisi_large(double x, double& si, double& ci) {
    const cplx z(0.0, x);
    cplx b = z + 1.0;
    cplx c = cplx(1.0 / 1e-290, 0.0);
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 400; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    const cplx e1 = h * std::exp(-z);
    ci = -e1.real();
    si = kPi / 2.0 + e1.imag();
}

void cisi_series(double x, double& si, double& ci) {
    // Si: sum (-1)^n x^{2n+1} / ((2n+1)(2n+1)!);  Ci: gamma + ln x + even sum.
    double term = x;  // (-1)^n x^{2n+1} / (2n+1)!
    double sum_si = 0.0;
    for (int n = 0; n < 40; ++n) {
        const double odd = 2.0 * n + 1.0;
        sum_si += term / odd;
        term *= -x * x / ((odd + 1.0) * (odd + 2.0));
        if (std::abs(term) < 1e-18) break;
    }
    double t = 1.0;  // (-1)^n x^{2n} / (2n)!
    double sum_ci = 0.0;
    for (int n = 1; n < 40; ++n) {
        t *= -x * x / ((2.0 * n - 1.0) * (2.0 * n));
        sum_ci += t / (2.0 * n);
        if (std::abs(t) < 1e-18) break;
    }
    si = sum_si;
    ci = kEulerGamma + std::log(x) + sum_ci;
}
}  // namespace

void sin_cos_integrals(double x, double& si, double& ci) {
    if (x == 0.0) {
        si = 0.0;
        ci = -std::numeric_limits<double>::infinity();
        return;
    }
    const double ax = std::abs(x);
    double s, c;
    if (ax <= 2.0)
        cisi_series(ax, s, c);
    else
        cisi_large(ax, s, c);
    si = (x < 0.0) ? -s : s;
    ci = c;  // Ci defined for positive arguments; callers pass |x|
}

double sin_integral(double x) {
    double si, ci;
    sin_cos_integrals(x, si, ci);
    return si;
}

double tail_sin_over_power(double K, double t, int p) {
    if (!(K > 0.0)) throw Error("tail integral: K must be positive");
    if (t < 0.0) return -tail_sin_over_power(K, -t, p);
    if (p == 1) {
        if (t == 0.0) return 0.0;
        return kPi / 2.0 - sin_integral(K * t);
    }
    const double pm1 = static_cast<double>(p - 1);
    return std::sin(K * t) / (pm1 * std::pow(K, pm1)) +
           (t / pm1) * tail_cos_over_power(K, t, p - 1);
}

double tail_cos_over_power(double K, double t, int p) {
    if (!(K > 0.0)) throw Error("tail integral: K must be positive");
    t = std::abs(t);  // cosine tails are even in t
    if (p == 1) {
        if (t == 0.0) throw Error("tail integral: cos/k diverges at t = 0");
        double si, ci;
        sin_cos_integrals(K * t, si, ci);
        return -ci;
    }
    const double pm1 = static_cast<double>(p - 1);
    return std::cos(K * t) / (pm1 * std::pow(K, pm1)) -
           (t / pm1) * tail_sin_over_power(K, t, p - 1);
}

void fit_power_tail(const std::vector<double>& k, const std::vector<double>& w, int p1, int p2,
                    double& c1, double& c2) {
    // Normal equations for w ~ c1 k^-p1 + c2 k^-p2.
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double f1 = std::pow(k[i], -p1);
        const double f2 = std::pow(k[i], -p2);
        a11 += f1 * f1;
        a12 += f1 * f2;
        a22 += f2 * f2;
        b1 += f1 * w[i];
        b2 += f2 * w[i];
    }
    const double det = a11 * a22 - a12 * a12;
    if (k.size() < 8 || std::abs(det) < 1e-300) {
        // Single-term fallback.
        c1 = (a11 > 0.0) ? b1 / a11 : 0.0;
        c2 = 0.0;
        return;
    }
    c1 = (b1 * a22 - b2 * a12) / det;
    c2 = (b2 * a11 - b1 * a12) / det;
}

std::vector<double> derivative4(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n < 5) {
        // second-order fallback for very short inputs
        for (std::size_t i = 0; i < n; ++i) {
            if (i == 0)
                d[i] = (f[1] - f[0]) / h;
            else if (i + 1 == n)
                d[i] = (f[n - 1] - f[n - 2]) / h;
            else
                d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        }
        return d;
    }
    const double c = 1.0 / (12.0 * h);
    d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = c * (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]);
    d[n - 2] = -c * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] +
                     f[n - 5]);
    d[n - 1] = -c * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] -
                     3.0 * f[n - 5]);
    return d;
}

std::vector<double> midpoints(const std::vector<double>& f) {
    const std::size_t n = f.size();
    if (n < 2) return {};
    std::vector<double> m(n - 1, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (i == 0 && n >= 3)
            m[i] = (3.0 * f[0] + 6.0 * f[1] - f[2]) / 8.0;
        else if (i + 2 == n && n >= 3)
            m[i] = (3.0 * f[n - 1] + 6.0 * f[n - 2] - f[n - 3]) / 8.0;
        else if (i >= 1 && i + 2 < n)
            m[i] = (9.0 * (f[i] + f[i + 1]) - f[i - 1] - f[i + 2]) / 16.0;
        else
            m[i] = 0.5 * (f[i] + f[i + 1]);
    }
    return m;
}

namespace {
double wrap_pi(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a <= -kPi) a += 2.0 * kPi;
    return a;
}
}  // namespace

std::vector<double> unwrap_phase_from_back(const std::vector<double>& raw, double max_step) {
    std::vector<double> out(raw.size());
    if (raw.empty()) return out;
    out.back() = wrap_pi(raw.back());
    for (std::size_t i = raw.size() - 1; i-- > 0;) {
        const double d = wrap_pi(raw[i] - raw[i + 1]);
        if (std::abs(d) > max_step)
            throw UnwrapAmbiguity("phase step " + std::to_string(d) +
                                  " exceeds bound; grid too coarse");
        out[i] = out[i + 1] + d;
    }
    return out;
}

std::vector<double> unwrap_phase_from_front(const std::vector<double>& raw, double max_step) {
    std::vector<double> out(raw.size());
    if (raw.empty()) return out;
    out.front() = wrap_pi(raw.front());
    for (std::size_t i = 1; i < raw.size(); ++i) {
        const double d = wrap_pi(raw[i] - raw[i - 1]);
        if (std::abs(d) > max_step)
            throw UnwrapAmbiguity("phase step " + std::to_string(d) +
                                  " exceeds bound; grid too coarse");
        out[i] = out[i - 1] + d;
    }
    return out;
}

double even_extrapolate0(double k1, double v1, double k2, double v2) {
    const double d = k2 * k2 - k1 * k1;
    if (std::abs(d) < 1e-300) return v1;
    return (v1 * k2 * k2 - v2 * k1 * k1) / d;
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw Error("CubicSpline: need matching arrays, n >= 2");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw Error("CubicSpline: abscissae must increase");
    y2_.assign(n, 0.0);
    if (n == 2) return;
    std::vector<double> u(n - 1, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
        const double p = sig * y2_[i - 1] + 2.0;
        y2_[i] = (sig - 1.0) / p;
        u[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) -
               (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
        u[i] = (6.0 * u[i] / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
    }
    for (std::size_t i = n - 1; i-- > 1;) y2_[i] = y2_[i] * y2_[i + 1] + u[i];
    y2_[0] = y2_[n - 1] = 0.0;
}

double CubicSpline::operator()(double x) const {
    const std::size_t n = x_.size();
    std::size_t lo = 0, hi = n - 1;
    if (x <= x_.front()) {
        hi = 1;
    } else if (x >= x_.back()) {
        lo = n - 2;
    } else {
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (x_[mid] > x)
                hi = mid;
            else
                lo = mid;
        }
    }
    const double h = x_[hi] - x_[lo];
    const double a = (x_[hi] - x) / h;
    const double b = (x - x_[lo]) / h;
    return a * y_[lo] + b * y_[hi] +
           ((a * a * a - a) * y2_[lo] + (b * b * b - b) * y2_[hi]) * (h * h) / 6.0;
}

}  // namespace scatter
