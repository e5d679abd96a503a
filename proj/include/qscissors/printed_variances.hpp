// Closed-form quadrature variances as published for the two-mode coupler,
// stored term by term so each top-level term's coefficient can be audited
// against variances computed from the amplitudes.
//
// Every expression is a sum  sum_k coefficient_k * shape_k(t)  where the split
// follows the top-level additive terms of the published formula.

#pragma once

#include "qscissors/closed_form.hpp"
#include "qscissors/observables.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace qscissors {

struct PrintedTerm {
  std::string label;
  double coefficient;
  std::function<double(double)> shape;  // t in seconds
};

struct PrintedExpression {
  std::string name;  // e.g. "dX2_1"
  std::vector<PrintedTerm> terms;

  double operator()(double t) const {
    double v = 0.0;
    for (const auto& term : terms) v += term.coefficient * term.shape(t);
    return v;
  }
};

/// The four expressions of one model, ordered dX2_1, dX2_2, dY2_1, dY2_2.
using PrintedVarianceSet = std::array<PrintedExpression, 4>;

/// Single-pump variances. gamma1 = cos(sqrt5 a t/2), gamma2 = cos(a t/2),
/// phi1 = sin(sqrt5 a t/2), phi2 = sin(a t/2).
inline PrintedVarianceSet printed_single_pump_expressions(double alpha1) {
  const double s5 = std::sqrt(5.0);
  struct Angles {
    double g1, g2, f1, f2;
  };
  auto angles = [alpha1, s5](double t) {
    const double u = 0.5 * s5 * alpha1 * t;
    const double v = 0.5 * alpha1 * t;
    return Angles{std::cos(u), std::cos(v), std::sin(u), std::sin(v)};
  };
  using S = std::function<double(double)>;
  auto shape = [angles](auto f) -> S {
    return [angles, f](double t) {
      const Angles a = angles(t);
      return f(a.g1, a.g2, a.f1, a.f2);
    };
  };

  PrintedExpression x1{"dX2_1",
                       {{"g1 g2 f1 f2", -s5 / 5.0, shape([](double g1, double g2, double f1, double f2) {
                           return g1 * g2 * f1 * f2;
                         })},
                        {"(2f1^2+1)g2^2 + (2g1^2+1)f2^2", 0.25,
                         shape([](double g1, double g2, double f1, double f2) {
                           return (2 * f1 * f1 + 1) * g2 * g2 + (2 * g1 * g1 + 1) * f2 * f2;
                         })}}};

  PrintedExpression x2{
      "dX2_2",
      {{"f1^4", -4.0 / 25.0, shape([](double, double, double f1, double) { return f1 * f1 * f1 * f1; })},
       {"g1 (4 sqrt5 g2 f1 f2 - 5 (2f2^2+1) g1)", -1.0 / 5.0,
        shape([s5](double g1, double g2, double f1, double f2) {
          return g1 * (4 * s5 * g2 * f1 * f2 - (2 * f2 * f2 + 1) * 5 * g1);
        })},
       {"f1^2 (6f2^2+7)", 1.0 / 20.0,
        shape([](double, double, double f1, double f2) { return f1 * f1 * (6 * f2 * f2 + 7); })}}};

  PrintedExpression y1{
      "dY2_1",
      {{"(3-2g2^2)g1^2 + (3-2f2^2)f1^2", 0.25,
        shape([](double g1, double g2, double f1, double f2) {
          return (3 - 2 * g2 * g2) * g1 * g1 + (3 - 2 * f2 * f2) * f1 * f1;
        })},
       {"(sqrt5(2f2^2-1)g1 - g2 f1 f2) g2 f1^3 f2", 16.0 / 25.0,
        shape([s5](double g1, double g2, double f1, double f2) {
          return (s5 * (2 * f2 * f2 - 1) * g1 - g2 * f1 * f2) * g2 * f1 * f1 * f1 * f2;
        })},
       {"(-sqrt5 + 8 g1 g2 f1 f2) g1 g2 f1 f2 - 4 (g2^4+f2^4) f1^2 g1^2", 1.0 / 5.0,
        shape([s5](double g1, double g2, double f1, double f2) {
          const double q = g1 * g2 * f1 * f2;
          return (-s5 + 8 * q) * q - 4 * (std::pow(g2, 4) + std::pow(f2, 4)) * f1 * f1 * g1 * g1;
        })}}};

  PrintedExpression y2{"dY2_2",
                       {{"(5+2f1^2)g2^2 + 13 f1^2 f2^2 - g1 f2 (4 sqrt5 g2 f1 - 15 g1 f2)", 1.0 / 20.0,
                         shape([s5](double g1, double g2, double f1, double f2) {
                           return (5 + 2 * f1 * f1) * g2 * g2 + 13 * f1 * f1 * f2 * f2 -
                                  g1 * f2 * (4 * s5 * g2 * f1 - 15 * g1 * f2);
                         })}}};

  return {x1, x2, y1, y2};
}

/// Coefficient of the second dX2_2 term that makes the single-pump set agree
/// with the amplitudes; the published value is -1/5.
inline constexpr double kSinglePumpX2BracketCorrected = -1.0 / 20.0;

/// Twelve coefficients of the two-pump variances, indexed 1..12 via at().
struct XiCoefficients {
  std::array<double, 12> printed{};
  /// Suspected typos replaced: Xi_4 denominator 4 eps^4 -> 4 lambda^4 and the
  /// Xi_8 term 65 lambda^2 -> 65 lambda^2 eps^2. Others equal `printed`.
  std::array<double, 12> corrected{};

  double at(std::size_t i) const { return printed.at(i - 1); }
  double corrected_at(std::size_t i) const { return corrected.at(i - 1); }
};

inline XiCoefficients xi_coefficients(double epsilon, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("xi_coefficients: lambda must be positive");
  const double e = epsilon, l = lambda;
  const double e2 = e * e, e4 = e2 * e2, l2 = l * l, l3 = l2 * l, l4 = l2 * l2;
  XiCoefficients xi;
  auto& p = xi.printed;
  p[0] = (l4 + 32 * e4 - 25 * l2 * e2) / (4 * l4);
  p[1] = (l2 * e - 16 * e * e2) / (2 * l4);
  p[2] = (17 * l2 * e2 + l4 - 16 * e4) / (4 * l4);
  p[3] = (8 * l2 * e2 - 16 * e4) / (4 * e4);  // diverges as eps -> 0
  p[4] = 2 * (l2 * e2 - e4) / l4;
  p[5] = 8 * e * (e2 - l2 / 32) / l3;
  p[6] = (49 * l2 * e2 + l4 - 32 * e4) / (8 * l4);
  p[7] = (64 * e4 + l4 - 65 * l2) / (8 * l4);
  p[8] = (l2 - 9 * e2) / (4 * l2);
  p[9] = (l2 + 9 * e2) / (4 * l2);
  p[10] = (l2 - 33 * e2) / (8 * l2);
  p[11] = (l2 + 33 * e2) / (8 * l2);
  xi.corrected = p;
  xi.corrected[3] = (8 * l2 * e2 - 16 * e4) / (4 * l4);
  xi.corrected[7] = (64 * e4 + l4 - 65 * l2 * e2) / (8 * l4);
  return xi;
}

/// Two-pump variances with tau1 = lambda t/2, tau2 = eps t/2, evaluated
/// literally in SI units (some published terms are not dimensionless).
inline PrintedVarianceSet printed_two_pump_expressions(double alpha, double epsilon, bool corrected_xi = false) {
  const double e = epsilon;
  const double l = std::sqrt(16.0 * alpha * alpha + e * e);
  const XiCoefficients xc = xi_coefficients(e, l);
  auto xi = [&](std::size_t i) { return corrected_xi ? xc.corrected_at(i) : xc.at(i); };
  struct Angles {
    double c1, s1, c2t2, s2, s2t1;
  };
  auto angles = [e, l](double t) {
    const double t1 = 0.5 * l * t, t2 = 0.5 * e * t;
    return Angles{std::cos(t1), std::sin(t1), std::cos(2 * t2), std::sin(t2), std::sin(2 * t1)};
  };
  using S = std::function<double(double)>;
  auto shape = [angles](auto f) -> S { return [angles, f](double t) { return f(angles(t)); }; };
  const double r = e / l;
  const double r3 = 8.0 * r * r * r;  // (2 eps/lambda)^3

  PrintedExpression x1{
      "dX2_1",
      {{"Xi1 cos^2 tau1", xi(1), shape([](Angles a) { return a.c1 * a.c1; })},
       {"Xi2 sin tau1 sin tau2 cos tau1", xi(2), shape([](Angles a) { return a.s1 * a.s2 * a.c1; })},
       {"Xi3", xi(3), shape([](Angles) { return 1.0; })},
       {"Xi4 cos^4 tau1", xi(4), shape([](Angles a) { return std::pow(a.c1, 4); })},
       {"(eps^2/2lambda^2) cos 2tau2 sin^2 2tau1", 0.5 * r * r,
        shape([](Angles a) { return a.c2t2 * a.s2t1 * a.s2t1; })},
       {"cos tau1", -0.25, shape([](Angles a) { return a.c1; })},
       {"sin tau2 sin tau1 ((2eps/lambda)^3 cos^3 tau1 - eps/4lambda)", 1.0,
        shape([r, r3](Angles a) { return a.s2 * a.s1 * (r3 * std::pow(a.c1, 3) - 0.25 * r); })}}};

  PrintedExpression x2{
      "dX2_2",
      {{"Xi5 cos^4 tau1", xi(5), shape([](Angles a) { return std::pow(a.c1, 4); })},
       {"-Xi6 sin tau1 sin tau2 cos tau1", -xi(6), shape([](Angles a) { return a.s1 * a.s2 * a.c1; })},
       {"Xi7", xi(7), shape([](Angles) { return 1.0; })},
       {"Xi8 cos^2 tau1", xi(8), shape([](Angles a) { return a.c1 * a.c1; })},
       {"(eps^2/2lambda^2) cos 2tau2 sin^2 2tau1", 0.5 * r * r,
        shape([](Angles a) { return a.c2t2 * a.s2t1 * a.s2t1; })},
       {"(2eps/lambda)^3 sin tau2 sin tau1 cos^3 tau1", r3,
        shape([](Angles a) { return a.s2 * a.s1 * std::pow(a.c1, 3); })}}};

  PrintedExpression y1{
      "dY2_1",
      {{"Xi9 cos^2 tau1", xi(9), shape([](Angles a) { return a.c1 * a.c1; })},
       {"Xi10", xi(10), shape([](Angles) { return 1.0; })},
       {"-2(eps/lambda)^2 cos 2tau2 sin^2 tau1", -2.0 * r * r, shape([](Angles a) { return a.c2t2 * a.s1 * a.s1; })},
       {"-(eps/2lambda) sin tau2 sin tau1 (1/2 - cos tau1)", -0.5 * r,
        shape([](Angles a) { return a.s2 * a.s1 * (0.5 - a.c1); })},
       {"cos tau1", -0.25, shape([](Angles a) { return a.c1; })}}};

  PrintedExpression y2{
      "dY2_2",
      {{"Xi11 cos^2 tau1", xi(11), shape([](Angles a) { return a.c1 * a.c1; })},
       {"Xi12", xi(12), shape([](Angles) { return 1.0; })},
       {"-(2/lambda^2) cos 2tau2 (eps^2 - cos^2 tau1)", -2.0 / (l * l),
        shape([e](Angles a) { return a.c2t2 * (e * e - a.c1 * a.c1); })},
       {"(eps/4lambda) sin tau2 sin tau1 cos tau1", 0.25 * r, shape([](Angles a) { return a.s2 * a.s1 * a.c1; })}}};

  return {x1, x2, y1, y2};
}

namespace detail {

inline QuadratureVariances evaluate_set(const PrintedVarianceSet& set, double t) {
  return {{set[0](t), set[1](t)}, {set[2](t), set[3](t)}};
}

}  // namespace detail

/// Single-pump variances. The default applies the one-coefficient fix to
/// dX2_2 (bracket prefactor -1/20); AsPrinted keeps the published -1/5.
inline QuadratureVariances analytic_variances_single_pump(double alpha1, double t,
                                                          SinglePumpReading reading = SinglePumpReading::Corrected) {
  if (!(alpha1 > 0.0)) throw std::invalid_argument("analytic_variances_single_pump: alpha1 must be positive");
  PrintedVarianceSet set = printed_single_pump_expressions(alpha1);
  if (reading == SinglePumpReading::Corrected) set[1].terms[1].coefficient = kSinglePumpX2BracketCorrected;
  return detail::evaluate_set(set, t);
}

/// Two-pump variances exactly as published (these do not describe the state;
/// see the reconciliation report).
inline QuadratureVariances analytic_variances_two_pump(double alpha, double epsilon, double t,
                                                       bool corrected_xi = false) {
  if (!(alpha > 0.0) || !(epsilon > 0.0))
    throw std::invalid_argument("analytic_variances_two_pump: alpha and epsilon must be positive");
  return detail::evaluate_set(printed_two_pump_expressions(alpha, epsilon, corrected_xi), t);
}

/// Unpumped coupler from |10>: mode 1 (1 + 2cos^2 eps t)/4, mode 2 (1 + 2sin^2 eps t)/4.
inline QuadratureVariances analytic_variances_no_pump(double epsilon, double t) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("analytic_variances_no_pump: epsilon must be positive");
  const double c = std::cos(epsilon * t), s = std::sin(epsilon * t);
  const double m1 = 0.25 * (1.0 + 2.0 * c * c);
  const double m2 = 0.25 * (1.0 + 2.0 * s * s);
  return {{m1, m2}, {m1, m2}};
}

}  // namespace qscissors
