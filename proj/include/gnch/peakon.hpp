#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gnch/moments.hpp"

namespace gnch {

/// Point masses g_j at y_j on the string (-1, 1). When valid,
/// -1 < y_1 < ... < y_N < 1 and every g_j is finite and nonzero; otherwise
/// reason names the quantity that degenerated.
template <class T>
struct StringConfig {
  T t{};
  std::vector<T> y;
  std::vector<T> g;
  bool valid = false;
  std::string reason;

  std::size_t size() const { return y.size(); }
};

/// Peak positions x_j and amplitudes m_j of u = 1/2 sum m_j exp(-2|x - x_j|).
/// Indices are 0-based: x[0] is the leftmost peak.
struct PeakonState {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> m;
  bool valid = false;
  std::string reason;

  std::size_t size() const { return x.size(); }
};

/// Exact reconstruction. Positions are irrational in general, so they are
/// carried as exp(2 x_j) = (1 + y_j) / (1 - y_j), which is rational.
struct ExactPeakonState {
  Rational t;
  std::vector<Rational> exp2x;
  std::vector<Rational> m;
  bool valid = false;
  std::string reason;

  std::size_t size() const { return m.size(); }
  PeakonState approx() const;
};

/// Reconstruction from the moments A_0 .. A_{2N-1}: y_j = 1 - delta(N-j, 2) / delta(N-j+1, 0),
/// g_j = delta(N-j+1, 0)^2 / (delta(N-j+1, 1) delta(N-j, 1)), 1-based j.
template <class T>
StringConfig<T> string_config_from_moments(const ElementSeq<T>& moments, std::size_t n, const T& t);

StringConfig<double> string_config(const MomentSystem& sys, double t);
StringConfig<Rational> string_config(const ExactMomentSystem& sys, const Rational& t);

/// x_j = 1/2 ln((1 + y_j) / (1 - y_j)), m_j = g_j (1 - y_j^2).
PeakonState peakon_state(const StringConfig<double>& cfg);
PeakonState peakon_state(const MomentSystem& sys, double t);
ExactPeakonState peakon_state(const StringConfig<Rational>& cfg);
ExactPeakonState peakon_state(const ExactMomentSystem& sys, const Rational& t);

/// Inverse Liouville map: y_j = tanh x_j, g_j = m_j / (1 - y_j^2).
StringConfig<double> to_string_config(const PeakonState& state);

double eval_u(const PeakonState& state, double x);

/// Mean of the one-sided derivatives of u at x_j (0-based j).
double u_x_average(const PeakonState& state, std::size_t j);

/// One-sided derivatives (left, right) of u at x_j, each from its own closed-form sum.
std::pair<double, double> u_x_one_sided(const PeakonState& state, std::size_t j);

/// Exact one-sided derivatives at a peak: exp(2(x_i - x_j)) = exp2x_i / exp2x_j
/// is rational, so both slopes are exact.
std::pair<Rational, Rational> u_x_one_sided(const ExactPeakonState& state, std::size_t j);

/// Exact u(x_j).
Rational u_at_peak(const ExactPeakonState& state, std::size_t j);

/// Integral of u over [x_j, infinity).
double tail_integral(const PeakonState& state, std::size_t j);

/// H = 1/4 sum_{j,k} m_j m_k exp(-2|x_j - x_k|).
double hamiltonian(const PeakonState& state);

/// Profile samples (x, u(x)) on n evenly spaced points of [x0, x1]. With
/// include_peaks, peak positions inside the range are merged in so the
/// corners are sampled exactly.
std::vector<std::pair<double, double>> sample_profile(const PeakonState& state, double x0, double x1,
                                                      std::size_t n, bool include_peaks);

}  // namespace gnch
