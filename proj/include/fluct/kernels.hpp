#pragma once

#include <numbers>

namespace fluct {

/// Environment temperature T and body temperature T' (both in eV).
struct ThermalPair {
  double env = 0.0;
  double body = 0.0;

  static ThermalPair from_kelvin(double env_k, double body_k);
  ThermalPair swapped() const { return {body, env}; }
  double hottest() const { return env > body ? env : body; }
};

/// Bose occupation 1/(e^x - 1); x may be +inf.
double bose(double x);

/// n(x1) - n(x2) without cancellation or overflow; x1, x2 in (0, inf].
double bose_difference(double x1, double x2);

/// n(omega, T) - n(omega, T'). Zero temperature gives a zero occupation.
double planck_diff(double omega, const ThermalPair& th);

/// coth(beta' omega/2) - coth(beta omega/2) = 2 [n(omega,T') - n(omega,T)].
double coth_diff(double omega, const ThermalPair& th);

/// f_n(y) = int_0^inf x^n/(x^2+1) / (e^{yx}-1) dx, n in [2, 12].
double f_n(int n, double y, double rel_tol = 1e-8);

/// f_n(y1) - f_n(y2) evaluated as one integral of the Bose difference, so it
/// stays accurate as y2 -> y1.
double f_n_diff(int n, double y1, double y2, double rel_tol = 1e-8);

/// Asymptotic f_n(y) -> Gamma(n+1) zeta(n+1) / y^(n+1) for y >> 1; also the
/// exact value of f_n + f_{n+2}.
double bose_moment(int n, double y);

/// Evaluation policy for the pair kernel phi. Below switch_threshold the
/// Taylor series is used; above it the closed form.
struct PhiEvalPolicy {
  double switch_threshold = 0.5;
  int series_terms = 12;
  /// 53 evaluates the closed form in double, anything larger in long double.
  int working_precision_bits = 64;

  void validate() const;
};

inline constexpr int kPhiMaxSeriesTerms = 18;

/// Exact Taylor coefficient of R^(8+2k) in phi, as numerator/denominator.
struct Rational {
  long double num;
  long double den;
  long double value() const { return num / den; }
};
Rational phi_series_coefficient(int k);

/// phi(R) = -9 - 2R^2 - R^4 + (9 - 16R^2 + 3R^4) cos 2R + R (18 - 8R^2 + R^4) sin 2R.
double phi(double r, const PhiEvalPolicy& policy = {});

/// phi(R) / R^8, finite at the origin (-4/9).
double phi_over_r8(double r, const PhiEvalPolicy& policy = {});

/// phi(R) / R^8 + 4/9, accurate at small R where the leading term dominates.
double phi_over_r8_subleading(double r, const PhiEvalPolicy& policy = {});

/// The closed form in plain double, no series switch. Exposed for
/// cancellation diagnostics.
double phi_closed_form_naive(double r);

/// Coincident-point vacuum Green's dyadic, rotationally averaged:
/// Gamma -> 1 (omega^2/(6 pi R) + i omega^3/(6 pi)). Only the imaginary part
/// survives in physical quantities; the 1/R real part is a self-energy and is
/// dropped.
struct VacuumGreensCoincident {
  static double imaginary(double omega) { return omega * omega * omega / (6.0 * std::numbers::pi); }
};

inline double im_gamma_coincident(double omega) { return VacuumGreensCoincident::imaginary(omega); }

/// Im alpha for radiation-reaction damping of a real static polarizability.
inline double radiation_reaction_imalpha(double omega, double alpha0) {
  return im_gamma_coincident(omega) * alpha0 * alpha0;
}

}  // namespace fluct
