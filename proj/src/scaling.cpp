#include "phasewave/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "phasewave/special_functions.hpp"

namespace phasewave::scaling {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Absolute spread of the pointwise first integral beyond which the (a, p)
// pair is rejected as inconsistent.
constexpr double kFirstIntegralSpread = 1e-6;
// Quadrature tolerance for maps without a closed form.
constexpr double kMapQuadTol = 1e-12;

// Scaled imaginary error function: returns (sqrt(pi)/2) erfi(z) / 1, i.e.
// int_0^z exp(t^2) dt, via the everywhere-positive Maclaurin series (no
// cancellation for real z).
double integral_exp_t2(double z) {
  const double z2 = z * z;
  double term = z, sum = z;
  for (int n = 1; n < 400; ++n) {
    term *= z2 / n;
    const double add = term / (2.0 * n + 1.0);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  if (!std::isfinite(sum))
    throw DomainError("canonical_y: Gaussian map overflows at this x");
  return sum;
}

}  // namespace

ScalingSpec make_trig(double C1, double C2, double C3, double omega) {
  if (!(omega > 0.0)) throw DomainError("make_trig: omega must be > 0");
  const double swing = std::hypot(C1, C2);
  if (!(C3 > swing))
    throw PositivityError(
        "make_trig: need C3 > sqrt(C1^2 + C2^2) so a(x) stays positive");
  ScalingSpec s;
  s.family = Family::Trig;
  s.C1 = C1;
  s.C2 = C2;
  s.C3 = C3;
  s.omega = omega;
  s.mu = -omega * omega / 4.0;
  return s;
}

ScalingSpec make_exp(double C1, double C2, double C3, double omega) {
  if (!(omega > 0.0)) throw DomainError("make_exp: omega must be > 0");
  if (C1 < 0.0 || C2 < 0.0)
    throw PositivityError("make_exp: need C1, C2 >= 0 so a(x) stays positive");
  // With C1, C2 >= 0 the infimum over the line is C3 when either exponential
  // is absent, and 2 sqrt(C1 C2) + C3 (attained at an interior point) when
  // both are present.
  const bool positive = (C3 >= 0.0)
                            ? (C1 + C2 + C3 > 0.0)
                            : (C1 > 0.0 && C2 > 0.0 &&
                               2.0 * std::sqrt(C1 * C2) + C3 > 0.0);
  if (!positive)
    throw PositivityError("make_exp: a(x) is not positive on the whole line");
  ScalingSpec s;
  s.family = Family::Exp;
  s.C1 = C1;
  s.C2 = C2;
  s.C3 = C3;
  s.omega = omega;
  s.mu = omega * omega / 4.0;
  return s;
}

ScalingSpec make_gaussian(double mu) {
  if (!(mu < 0.0)) throw DomainError("make_gaussian: mu must be < 0");
  ScalingSpec s;
  s.family = Family::Gaussian;
  s.mu = mu;
  return s;
}

ScalingSpec make_constant(double mu) {
  ScalingSpec s;
  s.family = Family::Constant;
  s.mu = mu;
  return s;
}

ScalingDerivatives eval_scaling(const ScalingSpec& spec, double x) {
  ScalingDerivatives d;
  switch (spec.family) {
    case Family::Trig: {
      const double w = spec.omega;
      const double s = std::sin(w * x), c = std::cos(w * x);
      d.a = spec.C1 * s + spec.C2 * c + spec.C3;
      d.da = w * (spec.C1 * c - spec.C2 * s);
      d.d2a = -w * w * (spec.C1 * s + spec.C2 * c);
      d.d3a = -w * w * w * (spec.C1 * c - spec.C2 * s);
      break;
    }
    case Family::Exp: {
      const double w = spec.omega;
      const double ep = std::exp(w * x), em = std::exp(-w * x);
      d.a = spec.C1 * ep + spec.C2 * em + spec.C3;
      d.da = w * (spec.C1 * ep - spec.C2 * em);
      d.d2a = w * w * (spec.C1 * ep + spec.C2 * em);
      d.d3a = w * w * w * (spec.C1 * ep - spec.C2 * em);
      break;
    }
    case Family::Gaussian: {
      const double m = spec.mu;
      const double e = std::exp(m * x * x);
      d.a = e;
      d.da = 2.0 * m * x * e;
      d.d2a = (2.0 * m + 4.0 * m * m * x * x) * e;
      d.d3a = (12.0 * m * m * x + 8.0 * m * m * m * x * x * x) * e;
      break;
    }
    case Family::Constant:
      d = {1.0, 0.0, 0.0, 0.0};
      break;
  }
  return d;
}

double chemical_potential(const ScalingSpec& spec) {
  switch (spec.family) {
    case Family::Trig:
      return -spec.omega * spec.omega / 4.0;
    case Family::Exp:
      return spec.omega * spec.omega / 4.0;
    case Family::Gaussian:
    case Family::Constant:
      return spec.mu;
  }
  return spec.mu;
}

double potential(const ScalingSpec& spec, double x) {
  if (spec.family == Family::Gaussian) return spec.mu * spec.mu * x * x;
  return 0.0;
}

double p_coefficient(const ScalingSpec& spec, double x) {
  return -chemical_potential(spec) - potential(spec, x);
}

double p_derivative(const ScalingSpec& spec, double x) {
  if (spec.family == Family::Gaussian) return -2.0 * spec.mu * spec.mu * x;
  return 0.0;
}

double verify_scaling_ode(const ScalingSpec& spec,
                          const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) {
    const auto d = eval_scaling(spec, x);
    const double res = d.d3a + 4.0 * p_coefficient(spec, x) * d.da +
                       2.0 * p_derivative(spec, x) * d.a;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

double first_integral_E_samples(const std::vector<ScalingDerivatives>& samples,
                                const std::vector<double>& p) {
  if (samples.empty() || samples.size() != p.size())
    throw DomainError(
        "first_integral_E_samples: need equally sized, nonempty sample sets");
  std::vector<double> e(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& d = samples[i];
    e[i] = 0.25 * (2.0 * d.a * d.d2a - d.da * d.da) + p[i] * d.a * d.a;
  }
  std::vector<double> sorted = e;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                   sorted.end());
  const double median = sorted[sorted.size() / 2];
  for (double v : e) {
    if (std::abs(v - median) > kFirstIntegralSpread)
      throw InconsistencyError(
          "first_integral_E: pointwise first integral varies across the grid; "
          "the (a, p) pair does not satisfy the scaling reduction");
  }
  return median;
}

double first_integral_E(const ScalingSpec& spec,
                        const std::vector<double>& xs) {
  std::vector<ScalingDerivatives> samples;
  std::vector<double> p;
  samples.reserve(xs.size());
  p.reserve(xs.size());
  for (double x : xs) {
    samples.push_back(eval_scaling(spec, x));
    p.push_back(p_coefficient(spec, x));
  }
  return first_integral_E_samples(samples, p);
}

double first_integral_E_closed(const ScalingSpec& spec) {
  const double w2 = spec.omega * spec.omega;
  switch (spec.family) {
    case Family::Trig:
      return w2 *
             (spec.C3 * spec.C3 - spec.C1 * spec.C1 - spec.C2 * spec.C2) / 4.0;
    case Family::Exp:
      return w2 * (4.0 * spec.C1 * spec.C2 - spec.C3 * spec.C3) / 4.0;
    case Family::Gaussian:
      return 0.0;
    case Family::Constant:
      return -spec.mu;
  }
  return 0.0;
}

double canonical_y(const ScalingSpec& spec, double x) {
  switch (spec.family) {
    case Family::Constant:
      return x;
    case Family::Gaussian: {
      // y = int_0^x e^{-mu s^2} ds with mu < 0: substitute t = sqrt(-mu) s.
      const double r = std::sqrt(-spec.mu);
      return integral_exp_t2(r * x) / r;
    }
    case Family::Trig: {
      // a = C3 + R cos(omega x - phi); per half-period antiderivative
      // G(v) = (2/sqrt(C3^2-R^2)) [atan2(beta sin vh, cos vh) + pi n] with
      // v = (omega x - phi)/2, n = round(v/pi), vh = v - n pi, continuous and
      // strictly increasing across branch points of tan.
      const double R = std::hypot(spec.C1, spec.C2);
      const double root = std::sqrt((spec.C3 - R) * (spec.C3 + R));
      const double beta = std::sqrt((spec.C3 - R) / (spec.C3 + R));
      const double phi = (R == 0.0) ? 0.0 : std::atan2(spec.C1, spec.C2);
      const auto antider = [&](double u) {  // u = omega x - phi
        const double v = 0.5 * u;
        const double n = std::round(v / kPi);
        const double vh = v - n * kPi;
        return 2.0 / root *
               (std::atan2(beta * std::sin(vh), std::cos(vh)) + kPi * n);
      };
      return (antider(spec.omega * x - phi) - antider(-phi)) / spec.omega;
    }
    case Family::Exp:
      return special::integrate_adaptive(
          [&spec](double s) { return 1.0 / eval_scaling(spec, s).a; }, 0.0, x,
          kMapQuadTol);
  }
  return x;
}

std::vector<double> canonical_y_grid(const ScalingSpec& spec,
                                     const std::vector<double>& xs) {
  std::vector<double> ys(xs.size());
  if (xs.empty()) return ys;
  if (spec.family == Family::Exp) {
    // One quadrature to anchor the first point, then cumulative panels.
    const auto inv_a = [&spec](double s) { return 1.0 / eval_scaling(spec, s).a; };
    const auto cum = special::integrate_cumulative(inv_a, xs, kMapQuadTol);
    const double y0 = special::integrate_adaptive(inv_a, 0.0, xs.front(),
                                                  kMapQuadTol);
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = y0 + cum[i];
    return ys;
  }
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = canonical_y(spec, xs[i]);
  return ys;
}

std::array<double, 4> coefficients_from_scaling(const ScalingSpec& spec,
                                                const std::array<double, 4>& h,
                                                double x) {
  const double a = eval_scaling(spec, x).a;
  if (!(a > 0.0))
    throw PositivityError(
        "coefficients_from_scaling: a(x) must be positive where g = h/a^3 is "
        "evaluated");
  const double inv3 = 1.0 / (a * a * a);
  return {h[0] * inv3, h[1] * inv3, h[2] * inv3, h[3] * inv3};
}

CanonicalMap make_canonical_map(const ScalingSpec& spec, double x_lo,
                                double x_hi) {
  if (!(x_hi > x_lo))
    throw DomainError("make_canonical_map: window must satisfy x_hi > x_lo");
  CanonicalMap m;
  m.spec = spec;
  m.x_lo = x_lo;
  m.x_hi = x_hi;
  m.y_lo = canonical_y(spec, x_lo);
  m.y_hi = canonical_y(spec, x_hi);
  m.E = first_integral_E_closed(spec);
  return m;
}

}  // namespace phasewave::scaling
