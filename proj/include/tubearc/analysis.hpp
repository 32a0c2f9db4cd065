#pragma once

#include <string>
#include <vector>

#include "tubearc/basis.hpp"
#include "tubearc/geometry.hpp"
#include "tubearc/linalg.hpp"

namespace tubearc {

enum class Parity { even, odd, mixed };

std::string_view to_string(Parity parity);

struct ParityLabel {
  Parity parity = Parity::mixed;
  double score = 0.0;  ///< <Psi|R Psi> / <Psi|Psi>
};

/// Scores beyond +-kParityThreshold are labelled even/odd.
inline constexpr double kParityThreshold = 0.999;

/// Matrix of theta -> -theta on xi coefficients: c_{m,n} <-> c_{-m,n} for
/// complex exponentials, sign flip of the sin(|m| theta) entries for real_trig.
Matrix reflection_operator(const BasisSpec& spec);

ParityLabel parity_classify(const Vector& xi_coefficients, const BasisSpec& spec,
                            const Matrix& overlap);

/// |Psi(theta, s)|^2 for Psi = sum_j c_j xi_j (1/nm^2 when c is S-normalized).
double density(const Vector& xi_coefficients, const BasisSpec& spec, SurfacePoint p);
std::vector<double> density_profile_at(const Vector& xi_coefficients, const BasisSpec& spec,
                                       double theta, const std::vector<double>& s_samples);

/// n evenly spaced samples over the closed interval [0, L].
std::vector<double> uniform_samples(double length, int n);

/// Minimum peak prominence, as a fraction of the largest prominence found.
inline constexpr double kPeakProminenceFraction = 0.05;

/// Strict local maxima of the density on `samples` uniform angles in [0, 2pi)
/// at fixed s, ignoring peaks with prominence below 5% of the largest one.
/// A density flat to rounding has no peaks.
int angular_peak_count(const Vector& xi_coefficients, const BasisSpec& spec, double s,
                       int samples = 512);

/// One term of a state written in the trig form used by the tables:
/// coefficient of cos(m theta) sin(n pi s/L) (sine == false) or
/// sin(m theta) sin(n pi s/L) (sine == true), m >= 0.
struct TrigTerm {
  int m = 0;
  int n = 1;
  bool sine = false;
  double value = 0.0;

  std::string label(double length) const;
};

/// All trig-form coefficients of a state, ordered by (n, m, cos before sin).
/// The imaginary parts vanish for the real states produced by solve(); the
/// largest remaining imaginary part is reported through `max_imag`.
std::vector<TrigTerm> trig_coefficients(const Vector& xi_coefficients, const BasisSpec& spec,
                                        double* max_imag = nullptr);

struct StateRow {
  int state = 0;
  double energy = 0.0;
  ParityLabel parity;
  std::vector<TrigTerm> terms;  ///< descending |value|
};

/// Terms with |c| >= threshold * max|c|; sign chosen so the largest term is
/// positive. threshold = 0 lists every coefficient.
StateRow format_state(int state, double energy, const Vector& xi_coefficients,
                      const BasisSpec& spec, const Matrix& overlap, double threshold);

std::string render_state_row(const StateRow& row, double length);

}  // namespace tubearc

namespace tubearc {

struct AnalyticLevel {
  int m = 0;
  int n = 1;
  double energy = 0.0;  ///< meV
};

/// Closed-form straight-tube levels over the basis labels, ascending:
/// (hbar^2/2m*)(m^2/a^2 + n^2 pi^2/L^2) - hbar^2/(8 m* a^2).
std::vector<AnalyticLevel> straight_tube_spectrum(const TubeGeometry& geom,
                                                  const BasisSpec& spec);

}  // namespace tubearc
