#include "phasewave/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phasewave::special {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kAgmMaxIter = 32;
constexpr int kSimpsonMaxDepth = 60;
constexpr double kRkNormGuard = 1e12;

double clamp_unit(double v) { return std::min(1.0, std::max(-1.0, v)); }

}  // namespace

double complete_elliptic_K(double k) {
  if (!(k >= 0.0) || k >= 1.0)
    throw DomainError("complete_elliptic_K: modulus must satisfy 0 <= k < 1");
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));  // complementary modulus k'
  for (int i = 0; i < kAgmMaxIter && std::abs(a - b) > kEps * a; ++i) {
    const double am = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = am;
  }
  return kPi / (a + b);  // pi / (2 agm)
}

EllipticTriple jacobi_sn_cn_dn(double u, double k) {
  if (!std::isfinite(u)) throw DomainError("jacobi_sn_cn_dn: u must be finite");
  if (!(k >= 0.0 && k <= 1.0))
    throw DomainError("jacobi_sn_cn_dn: modulus must satisfy 0 <= k <= 1");

  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};
  double mc = (1.0 - k) * (1.0 + k);  // complementary parameter k'^2
  if (mc == 0.0) {
    const double s = 1.0 / std::cosh(u);
    return {std::tanh(u), s, s};
  }

  // Bulirsch's descending Gauss/Landen scale with backward recurrence for dn
  // (Bulirsch 1965). Well conditioned for all u, including quarter periods;
  // the error of the truncated scale enters at kLandenStop squared.
  constexpr double kLandenStop = 1e-8;
  double em[kAgmMaxIter], en[kAgmMaxIter];
  double a = 1.0, dn = 1.0, c = 0.0;
  int l = 0;
  for (int i = 0; i < kAgmMaxIter; ++i) {
    l = i;
    em[i] = a;
    mc = std::sqrt(mc);
    en[i] = mc;
    c = 0.5 * (a + mc);
    if (std::abs(a - mc) <= kLandenStop * a) break;
    mc *= a;
    a = c;
  }
  const double phi = c * u;
  double sn = std::sin(phi), cn = std::cos(phi);
  if (sn != 0.0) {
    a = cn / sn;
    c *= a;
    for (int i = l; i >= 0; --i) {
      const double b = em[i];
      a *= c;
      c *= dn;
      dn = (en[i] + a) / (b + a);
      a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    sn = (sn >= 0.0) ? a : -a;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

double erf(double x) { return std::erf(x); }

CubicRoots real_cubic_roots(double p2, double p1, double p0) {
  CubicRoots out;
  // Classic discriminant of x^3 + p2 x^2 + p1 x + p0.
  const double disc = 18.0 * p2 * p1 * p0 - 4.0 * p2 * p2 * p2 * p0 +
                      p2 * p2 * p1 * p1 - 4.0 * p1 * p1 * p1 -
                      27.0 * p0 * p0;
  out.discriminant = disc;

  // Depressed form t^3 + p t + q with x = t - p2/3.
  const double shift = p2 / 3.0;
  const double p = p1 - p2 * p2 / 3.0;
  const double q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;
  // Rounding floor for deciding "discriminant is zero".
  const double disc_scale =
      64.0 * kEps *
      (4.0 * std::abs(p * p * p) + 27.0 * q * q + std::abs(disc) + kEps);

  const auto poly = [&](double x) {
    return ((x + p2) * x + p1) * x + p0;
  };
  const auto dpoly = [&](double x) { return (3.0 * x + 2.0 * p2) * x + p1; };
  const auto polish = [&](double x) {
    const double d = dpoly(x);
    if (std::abs(d) < 1e-8 * (1.0 + x * x)) return x;  // repeated root: skip
    const double step = poly(x) / d;
    const double xn = x - step;
    return std::abs(poly(xn)) < std::abs(poly(x)) ? xn : x;
  };

  std::array<double, 3> real{};
  bool three_real = true;
  if (std::abs(disc) <= disc_scale) {
    // Repeated roots. Triple when p ~ 0, else one single + one double.
    if (std::abs(p) <= 8.0 * kEps * (1.0 + p2 * p2)) {
      real = {-shift, -shift, -shift};
    } else {
      const double td = -1.5 * q / p;  // double root of the depressed cubic
      const double ts = 3.0 * q / p;   // single root
      real = {ts - shift, td - shift, td - shift};
    }
    out.discriminant = 0.0;
  } else if (disc > 0.0) {
    // Three distinct real roots: trigonometric method.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double theta =
        std::acos(clamp_unit(3.0 * q / (p * m)));
    for (int i = 0; i < 3; ++i)
      real[i] = m * std::cos((theta - 2.0 * kPi * i) / 3.0) - shift;
  } else {
    three_real = false;
    // One real root: cancellation-safe Cardano.
    const double rad = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const double alpha = -0.5 * q - std::copysign(rad, q);
    const double a3 = std::cbrt(alpha);
    double t1;
    if (a3 != 0.0)
      t1 = a3 + (-p / 3.0) / a3;
    else
      t1 = 0.0;
    const double x1 = polish(t1 - shift);
    // Deflate: x^2 + (p2 + x1) x + (p1 + (p2 + x1) x1) = 0.
    const double b1 = p2 + x1;
    const double c1 = p1 + b1 * x1;
    const std::complex<double> sq = std::sqrt(std::complex<double>(b1 * b1 - 4.0 * c1, 0.0));
    out.roots = {std::complex<double>(x1, 0.0), (-b1 + sq) / 2.0,
                 (-b1 - sq) / 2.0};
  }

  if (three_real) {
    for (double& r : real) r = polish(r);
    std::sort(real.begin(), real.end());
    out.roots = {std::complex<double>(real[0], 0.0),
                 std::complex<double>(real[1], 0.0),
                 std::complex<double>(real[2], 0.0)};
  }
  out.all_real = out.discriminant >= 0.0;
  std::sort(out.roots.begin(), out.roots.end(),
            [](const std::complex<double>& l, const std::complex<double>& r) {
              if (l.real() != r.real()) return l.real() < r.real();
              return l.imag() < r.imag();
            });
  return out;
}

namespace {

double simpson_recurse(const std::function<double(double)>& f, double a,
                       double b, double fa, double fm, double fb, double whole,
                       double tol, int depth, bool& converged) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth >= kSimpsonMaxDepth) {
    if (std::abs(delta) > 15.0 * tol) converged = false;
    return left + right + delta / 15.0;  // Richardson correction
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1,
                         converged) +
         simpson_recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1,
                         converged);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  if (!(tol > 0.0)) throw DomainError("integrate_adaptive: tol must be > 0");
  if (a == b) return 0.0;
  const double sign = a < b ? 1.0 : -1.0;
  if (a > b) std::swap(a, b);
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  bool converged = true;
  const double result =
      simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 0, converged);
  if (!converged)
    throw AccuracyError(
        "integrate_adaptive: depth cap reached before tolerance", sign * result);
  return sign * result;
}

std::vector<double> integrate_cumulative(
    const std::function<double(double)>& f, const std::vector<double>& xs,
    double tol) {
  std::vector<double> out(xs.size(), 0.0);
  if (xs.size() < 2) return out;
  const double panel_tol = tol / static_cast<double>(xs.size() - 1);
  double acc = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    acc += integrate_adaptive(f, xs[i - 1], xs[i], panel_tol);
    out[i] = acc;
  }
  return out;
}

double weierstrass_p(double y, double g2, double g3) {
  if (g2 < 0.0)
    throw DomainError("weierstrass_p: g2 must be nonnegative");
  if (std::abs(y) < 1e-8)
    throw PoleError("weierstrass_p: evaluation inside the origin pole guard");
  const CubicRoots cr = real_cubic_roots(0.0, -g2 / 4.0, -g3 / 4.0);
  if (!cr.all_real)
    throw DomainError(
        "weierstrass_p: complex-root lattice is unsupported (discriminant < 0)");
  const double e3 = cr.roots[0].real();
  const double e2 = cr.roots[1].real();
  const double e1 = cr.roots[2].real();
  const double span = e1 - e3;
  if (span < 1e-15) return e1 + 1.0 / (y * y);  // triple root: P = e + y^-2
  const double k = std::sqrt((e2 - e3) / span);
  const EllipticTriple j = jacobi_sn_cn_dn(y * std::sqrt(span), k);
  if (std::abs(j.sn) < 1e-10)
    throw PoleError("weierstrass_p: evaluation at a lattice point");
  return e3 + span / (j.sn * j.sn);
}

RkTrajectory rk_integrate(
    const std::function<void(double, const std::vector<double>&,
                             std::vector<double>&)>& f,
    const std::vector<double>& y0, double t0, double t1, double step) {
  if (!(step > 0.0)) throw DomainError("rk_integrate: step must be > 0");
  if (!(t1 > t0)) throw DomainError("rk_integrate: t1 must exceed t0");
  const std::size_t dim = y0.size();
  RkTrajectory traj;
  traj.times.push_back(t0);
  traj.states.push_back(y0);

  std::vector<double> y = y0, k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  double t = t0;
  while (t < t1 - 1e-15 * (1.0 + std::abs(t1))) {
    const double h = std::min(step, t1 - t);
    f(t, y, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    f(t + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    f(t + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
    f(t + h, tmp, k4);
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      norm = std::max(norm, std::abs(y[i]));
    }
    if (!(norm < kRkNormGuard))
      throw BlowUpError("rk_integrate: state norm exceeded the overflow guard",
                        t);
    t += h;
    traj.times.push_back(t);
    traj.states.push_back(y);
  }
  return traj;
}

}  // namespace phasewave::special
