#include "tubearc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace tubearc {

std::string_view to_string(Parity parity) {
  switch (parity) {
    case Parity::even: return "+1";
    case Parity::odd: return "-1";
    case Parity::mixed: return "mixed";
  }
  return "mixed";
}

Matrix reflection_operator(const BasisSpec& spec) {
  const int size = spec.size();
  Matrix r = Matrix::Zero(size, size);
  for (int j = 1; j <= size; ++j) {
    const BasisIndex idx = index_map(spec, j);
    if (spec.kind == BasisKind::complex_exponential) {
      r(flat_index(spec, -idx.m, idx.n) - 1, j - 1) = 1.0;
    } else {
      r(j - 1, j - 1) = idx.m < 0 ? -1.0 : 1.0;
    }
  }
  return r;
}

ParityLabel parity_classify(const Vector& c, const BasisSpec& spec, const Matrix& overlap) {
  const Vector sc = overlap * c;
  const double norm = std::real(c.dot(sc));
  const double score = std::real(sc.dot(reflection_operator(spec) * c)) / norm;
  ParityLabel label;
  label.score = score;
  if (score > kParityThreshold) {
    label.parity = Parity::even;
  } else if (score < -kParityThreshold) {
    label.parity = Parity::odd;
  } else {
    label.parity = Parity::mixed;
  }
  return label;
}

double density(const Vector& c, const BasisSpec& spec, SurfacePoint p) {
  cdouble psi = 0.0;
  for (int j = 1; j <= spec.size(); ++j) psi += c(j - 1) * eval_xi(spec, index_map(spec, j), p);
  return std::norm(psi);
}

std::vector<double> density_profile_at(const Vector& c, const BasisSpec& spec, double theta,
                                       const std::vector<double>& s_samples) {
  std::vector<double> out;
  out.reserve(s_samples.size());
  for (double s : s_samples) out.push_back(density(c, spec, {theta, s}));
  return out;
}

std::vector<double> uniform_samples(double length, int n) {
  std::vector<double> out(static_cast<std::size_t>(std::max(n, 0)));
  if (n == 1) {
    out[0] = 0.5 * length;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = length * i / (n - 1);
  return out;
}

int angular_peak_count(const Vector& c, const BasisSpec& spec, double s, int samples) {
  std::vector<double> rho(samples);
  for (int i = 0; i < samples; ++i) {
    rho[i] = density(c, spec, {2.0 * std::numbers::pi * i / samples, s});
  }
  const auto [lo_it, hi_it] = std::minmax_element(rho.begin(), rho.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (hi - lo <= 1e-9 * std::abs(hi)) return 0;

  auto at = [&](int i) { return rho[((i % samples) + samples) % samples]; };
  std::vector<double> prominence;
  for (int i = 0; i < samples; ++i) {
    if (!(rho[i] > at(i - 1) && rho[i] > at(i + 1))) continue;
    double right_min = rho[i];
    bool right_higher = false;
    for (int k = 1; k < samples; ++k) {
      if (at(i + k) > rho[i]) {
        right_higher = true;
        break;
      }
      right_min = std::min(right_min, at(i + k));
    }
    double left_min = rho[i];
    for (int k = 1; k < samples; ++k) {
      if (at(i - k) > rho[i]) break;
      left_min = std::min(left_min, at(i - k));
    }
    prominence.push_back(right_higher ? rho[i] - std::max(left_min, right_min) : rho[i] - lo);
  }
  if (prominence.empty()) return 0;
  const double cut = kPeakProminenceFraction * *std::max_element(prominence.begin(), prominence.end());
  return static_cast<int>(std::count_if(prominence.begin(), prominence.end(),
                                        [&](double p) { return p >= cut; }));
}

std::string TrigTerm::label(double length) const {
  char buf[96];
  const char* ang = sine ? "sin" : "cos";
  std::string angular;
  if (m == 1) {
    angular = std::string(ang) + "(theta) ";
  } else if (m > 1) {
    std::snprintf(buf, sizeof buf, "%s(%d theta) ", ang, m);
    angular = buf;
  }
  if (n == 1) {
    std::snprintf(buf, sizeof buf, "sin(pi s/%g)", length);
  } else {
    std::snprintf(buf, sizeof buf, "sin(%d pi s/%g)", n, length);
  }
  return angular + buf;
}

std::vector<TrigTerm> trig_coefficients(const Vector& c, const BasisSpec& spec,
                                        double* max_imag) {
  std::vector<TrigTerm> terms;
  double imag = 0.0;
  auto push = [&](int m, int n, bool sine, cdouble v) {
    imag = std::max(imag, std::abs(v.imag()));
    terms.push_back({m, n, sine, v.real()});
  };
  for (int n = 1; n <= spec.max_n; ++n) {
    push(0, n, false, c(flat_index(spec, 0, n) - 1));
    for (int m = 1; m <= spec.max_m; ++m) {
      const cdouble plus = c(flat_index(spec, m, n) - 1);
      const cdouble minus = c(flat_index(spec, -m, n) - 1);
      if (spec.kind == BasisKind::complex_exponential) {
        push(m, n, false, plus + minus);
        push(m, n, true, cdouble(0.0, 1.0) * (plus - minus));
      } else {
        push(m, n, false, plus);
        push(m, n, true, minus);
      }
    }
  }
  if (max_imag != nullptr) *max_imag = imag;
  return terms;
}

StateRow format_state(int state, double energy, const Vector& c, const BasisSpec& spec,
                      const Matrix& overlap, double threshold) {
  StateRow row;
  row.state = state;
  row.energy = energy;
  row.parity = parity_classify(c, spec, overlap);
  std::vector<TrigTerm> terms = trig_coefficients(c, spec);
  std::stable_sort(terms.begin(), terms.end(), [](const TrigTerm& x, const TrigTerm& y) {
    return std::abs(x.value) > std::abs(y.value);
  });
  const double biggest = terms.empty() ? 0.0 : std::abs(terms.front().value);
  const double sign = !terms.empty() && terms.front().value < 0.0 ? -1.0 : 1.0;
  for (TrigTerm t : terms) {
    if (threshold > 0.0 && std::abs(t.value) < threshold * biggest) break;
    t.value *= sign;
    row.terms.push_back(t);
  }
  return row;
}

std::string render_state_row(const StateRow& row, double length) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "E%d = %.4f meV [%s] Psi =", row.state, row.energy,
                std::string(to_string(row.parity.parity)).c_str());
  std::string out = buf;
  for (const TrigTerm& t : row.terms) {
    std::snprintf(buf, sizeof buf, " %+.4f ", t.value);
    out += buf;
    out += t.label(length);
  }
  return out;
}

}  // namespace tubearc

namespace tubearc {

std::vector<AnalyticLevel> straight_tube_spectrum(const TubeGeometry& geom,
                                                  const BasisSpec& spec) {
  const double c = geom.kinetic_scale();
  const double a = geom.radius;
  std::vector<AnalyticLevel> out;
  for (int j = 1; j <= spec.size(); ++j) {
    const BasisIndex idx = index_map(spec, j);
    const double k = idx.n * std::numbers::pi / geom.length;
    out.push_back({idx.m, idx.n, c * (idx.m * idx.m / (a * a) + k * k) - c / (4.0 * a * a)});
  }
  std::stable_sort(out.begin(), out.end(), [](const AnalyticLevel& x, const AnalyticLevel& y) {
    return x.energy < y.energy;
  });
  return out;
}

}  // namespace tubearc
