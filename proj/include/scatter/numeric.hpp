#ifndef SCATTER_NUMERIC_HPP
#define SCATTER_NUMERIC_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace scatter {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Composite trapezoid with half weights at both ends.
double trapezoid(const std::vector<double>& v, double h);
cplx trapezoid(const std::vector<cplx>& v, double h);

// Sine and cosine integrals Si(x) = int_0^x sin(t)/t dt,
// Ci(x) = gamma + ln x + int_0^x (cos(t)-1)/t dt.  Power series for small
// arguments, Lentz continued fraction for E1(ix) otherwise.
void sin_cos_integrals(double x, double& si, double& ci);
double sin_integral(double x);

// Truncated Fourier tails int_K^inf cos(kt)/k^p dk and the sine analogue,
// p in {1,2,3,4}, t >= 0 (the cosine tail requires t > 0 when p == 1).
double tail_cos_over_power(double K, double t, int p);
double tail_sin_over_power(double K, double t, int p);

// Least-squares fit of w(k) ~ c1 k^-p1 + c2 k^-p2 over the given nodes.
void fit_power_tail(const std::vector<double>& k, const std::vector<double>& w,
                    int p1, int p2, double& c1, double& c2);

// First derivative on a uniform grid, fourth order, one-sided at the ends.
std::vector<double> derivative4(const std::vector<double>& f, double h);

// Values at cell midpoints by 4-point interpolation (quadratic at the ends).
std::vector<double> midpoints(const std::vector<double>& f);

// Phase unwrapping: reduce successive differences to (-pi, pi] and
// accumulate.  Throws UnwrapAmbiguity when a reduced step exceeds max_step.
// The anchored variants fix the principal value at one end.
std::vector<double> unwrap_phase_from_back(const std::vector<double>& raw, double max_step);
std::vector<double> unwrap_phase_from_front(const std::vector<double>& raw, double max_step);

// Even-function extrapolation to zero from two positive nodes:
// v(k) = a + b k^2 through (k1,v1), (k2,v2); returns a.
double even_extrapolate0(double k1, double v1, double k2, double v2);

// Natural cubic spline through strictly increasing abscissae.
class CubicSpline {
  public:
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;

  private:
    std::vector<double> x_, y_, y2_;
};

}  // namespace scatter

#endif
