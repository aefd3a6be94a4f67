#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gnch/hankel.hpp"
#include "gnch/moments.hpp"

namespace gnch {

/// One evaluated identity: value is (left side) - (right side).
template <class T>
struct Residual {
  std::string identity;
  int k = 0;
  int l = 0;
  T value{};
};

template <class T>
using ResidualReport = std::vector<Residual<T>>;

template <class T>
bool all_zero(const ResidualReport<T>& report) {
  for (const auto& r : report)
    if (!is_zero(r.value)) return false;
  return true;
}

/// Weight b_j and node mu_j of the power-sum law B_k = sum_j b_j mu_j^k.
template <class T>
struct PowerMode {
  T weight;
  T node;
};

/// B_k = (offset if k == 0) + sum_j b_j mu_j^k over [kmin, kmax]. Negative k
/// needs nonzero nodes. The offset models the mu_0 = 0, b_0 = 1/2 mode, which
/// only contributes at k = 0.
template <class T>
ElementSeq<T> power_sum_sequence(const std::vector<PowerMode<T>>& modes, int kmin, int kmax,
                                 const T& offset_at_zero = T(0)) {
  return ElementSeq<T>::generate(kmin, kmax, [&](int k) {
    T sum = k == 0 ? offset_at_zero : T(0);
    for (const auto& m : modes) sum += m.weight * int_pow(m.node, k);
    return sum;
  });
}

/// prod_i b_i mu_i^l * prod_{i<j} (mu_j - mu_i)^2
template <class T>
T vandermonde_product(const std::vector<PowerMode<T>>& modes, int l) {
  T prod(1);
  for (const auto& m : modes) prod *= m.weight * int_pow(m.node, l);
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      T d = modes[j].node - modes[i].node;
      prod *= d * d;
    }
  return prod;
}

// Identity names, shared by the checks, the battery tally and the reports.
namespace identity {
inline constexpr const char* kHankelProduct = "hankel_product";
inline constexpr const char* kHankelRank = "hankel_rank";
inline constexpr const char* kOffsetProductL0 = "offset_product_l0";
inline constexpr const char* kOffsetProduct = "offset_product";
inline constexpr const char* kOffsetRankL0 = "offset_rank_l0";
inline constexpr const char* kOffsetRank = "offset_rank";
inline constexpr const char* kOffsetShifted = "offset_shifted";
inline constexpr const char* kJacobi[4] = {"jacobi_1", "jacobi_2", "jacobi_3", "jacobi_4"};
inline constexpr const char* kTelescoping[4] = {"telescoping_1", "telescoping_2", "telescoping_3",
                                                "telescoping_4"};
inline constexpr const char* kCombined[2] = {"combined_1", "combined_2"};
inline constexpr const char* kMomentLaw = "moment_law";
inline constexpr const char* kDeltaRate[3] = {"delta_rate_l0", "delta_rate_l1", "delta_rate_l2plus"};

std::vector<std::string> all();
}  // namespace identity

/// Power-sum law without offset: the k = N product formula at shift l and
/// vanishing of the (N+1)- and (N+2)-order determinants.
template <class T>
ResidualReport<T> check_vandermonde(const ElementSeq<T>& els, const std::vector<PowerMode<T>>& modes, int l) {
  const int n = static_cast<int>(modes.size());
  HankelTable<T> tbl(els);
  ResidualReport<T> out;
  out.push_back({identity::kHankelProduct, n, l, T(tbl.delta(n, l) - vandermonde_product(modes, l))});
  out.push_back({identity::kHankelRank, n + 1, l, tbl.delta(n + 1, l)});
  out.push_back({identity::kHankelRank, n + 2, l, tbl.delta(n + 2, l)});
  return out;
}

/// Power-sum law with the extra mode b_0 = 1/2, mu_0 = 0 (B_{-1} built from
/// the nonzero nodes only). l >= 1 is the shift for the plain product and
/// rank relations, k > N the order for the rank relations.
template <class T>
ResidualReport<T> check_offset_identities(const ElementSeq<T>& els, const std::vector<PowerMode<T>>& modes,
                                          int l, int k) {
  const int n = static_cast<int>(modes.size());
  if (l < 1) throw IndexError("offset product relation needs l >= 1");
  if (k <= n) throw IndexError("offset rank relations need k > N");
  HankelTable<T> tbl(els);
  const T half = T(1) / T(2);
  const T quarter = T(1) / T(4);
  ResidualReport<T> out;
  out.push_back({identity::kOffsetProductL0, n, 0,
                 T(tbl.delta(n, 0) - half * tbl.delta(n - 1, 2) - vandermonde_product(modes, 0))});
  out.push_back({identity::kOffsetProduct, n, l, T(tbl.delta(n, l) - vandermonde_product(modes, l))});
  out.push_back({identity::kOffsetRankL0, k, 0, T(tbl.delta(k, 0) - half * tbl.delta(k - 1, 2))});
  out.push_back({identity::kOffsetRank, k, l, tbl.delta(k, l)});
  // Expanding det(B*_{i+j-1}) with B*_0 = B_0 - 1/2 in its two B_0 entries
  // leaves the (N-1)-order block starting at B_3.
  out.push_back({identity::kOffsetShifted, n, -1,
                 T(tbl.delta(n + 1, -1) + tbl.gee(n, 0) - quarter * tbl.delta(n - 1, 3))});
  return out;
}

/// The four bilinear relations from the Jacobi determinant identity; they
/// hold for every element sequence and every k >= -1.
template <class T>
ResidualReport<T> check_bilinear(const HankelTable<T>& t, int k, int l) {
  auto D = [&](int kk, int ll) { return t.delta(kk, ll); };
  auto G = [&](int kk, int ll) { return t.gee(kk, ll); };
  ResidualReport<T> out;
  out.push_back({identity::kJacobi[0], k, l,
                 T(D(k + 2, l - 1) * D(k, l + 1) - (D(k + 1, l - 1) * D(k + 1, l + 1) - D(k + 1, l) * D(k + 1, l)))});
  out.push_back({identity::kJacobi[1], k, l,
                 T(D(k + 1, l - 1) * D(k, l + 1) - (G(k + 1, l - 1) * D(k, l) - G(k, l - 1) * D(k + 1, l)))});
  out.push_back({identity::kJacobi[2], k, l,
                 T(D(k + 1, l) * G(k, l) - (D(k, l + 1) * G(k + 1, l - 1) - D(k + 1, l - 1) * D(k, l + 2)))});
  out.push_back({identity::kJacobi[3], k, l,
                 T(D(k + 2, l - 1) * D(k, l + 2) - (D(k + 1, l + 1) * G(k + 1, l - 1) - D(k + 1, l) * G(k + 1, l)))});
  return out;
}

/// The four telescoping sums for 0 <= k <= n-1. Requires a field; throws
/// SingularError if one of the denominators delta(j, 1), j <= n, vanishes.
template <class T>
ResidualReport<T> check_sums(const HankelTable<T>& t, int n, int k) {
  if (k < 0 || k > n - 1) throw IndexError("telescoping sums need 0 <= k <= N-1");
  auto D = [&](int kk, int ll) { return t.delta(kk, ll); };
  auto G = [&](int kk, int ll) { return t.gee(kk, ll); };
  for (int j = 0; j <= n; ++j)
    if (is_zero(D(j, 1))) throw SingularError("delta(" + std::to_string(j) + ", 1) vanishes");

  T s1(0), s2(0), s3(0), s4(0);
  for (int j = k + 1; j <= n - 1; ++j) {
    const T den = D(j + 1, 1) * D(j, 1);
    s1 += D(j + 1, 0) * D(j + 1, 0) / den;
    s2 += D(j + 1, 0) * D(j, 2) / den;
    s3 += D(j, 2) * D(j, 2) / den;
  }
  for (int j = 0; j <= k; ++j) s4 += D(j, 2) * D(j, 2) / (D(j + 1, 1) * D(j, 1));

  ResidualReport<T> out;
  out.push_back({identity::kTelescoping[0], k, n, T(s1 - (D(k + 2, -1) / D(k + 1, 1) - D(n + 1, -1) / D(n, 1)))});
  out.push_back({identity::kTelescoping[1], k, n, T(s2 - (G(n, 0) / D(n, 1) - G(k + 1, 0) / D(k + 1, 1)))});
  out.push_back({identity::kTelescoping[2], k, n, T(s3 - (D(n - 1, 3) / D(n, 1) - D(k, 3) / D(k + 1, 1)))});
  out.push_back({identity::kTelescoping[3], k, n, T(s4 - D(k, 3) / D(k + 1, 1))});
  return out;
}

/// The two multi-term relations obtained by eliminating the skip-one
/// determinants. The first is stated with a 1/delta(k+1, 1) factor; the
/// residual is reported multiplied through by delta(k+1, 1) so it stays
/// defined when that determinant vanishes.
template <class T>
ResidualReport<T> check_combined(const HankelTable<T>& t, int k) {
  if (k < 0) throw IndexError("combined relations need k >= 0");
  auto D = [&](int kk, int ll) { return t.delta(kk, ll); };
  auto G = [&](int kk, int ll) { return t.gee(kk, ll); };
  const T d1 = D(k + 1, 1);

  const T lhs1 = ((G(k + 1, -1) + G(k, 1)) * D(k, 2) - G(k, 1) * D(k + 1, 0)) * d1;
  const T rhs1 = D(k, 2) * D(k, 2) * (D(k + 2, -1) + G(k + 1, 0)) +
                 (D(k + 1, 0) * D(k + 1, 0) - D(k + 1, 0) * D(k, 2)) * D(k, 3);

  const T lhs2 = T(2) * D(k + 1, 1) * D(k, 1) * (T(2) * G(k + 1, -1) + T(2) * G(k, 1)) -
                 D(k + 1, 0) * ((T(2) * G(k + 1, 0) - D(k, 3)) * D(k, 1) +
                                D(k + 1, 1) * (T(2) * G(k, 0) - D(k - 1, 3)));
  const T rhs2 = D(k, 1) * D(k, 2) * (T(4) * D(k + 2, -1) + T(4) * G(k + 1, 0) - D(k, 3)) -
                 D(k + 1, 1) * D(k - 1, 3) * (T(2) * D(k + 1, 0) - D(k, 2)) +
                 (D(k + 1, 0) - D(k, 2)) * (T(2) * D(k + 1, 0) * D(k, 2) - D(k, 2) * D(k, 2));

  ResidualReport<T> out;
  out.push_back({identity::kCombined[0], k, 0, T(lhs1 - rhs1)});
  out.push_back({identity::kCombined[1], k, 0, T(lhs2 - rhs2)});
  return out;
}

/// Derivative rules for delta(k, l) over polynomial moments:
///   l = 0:  d/dt delta(k,0) = (r+2s) gee(k,-1) + (2r+2s) gee(k-1,1)
///   l = 1:  d/dt delta(k,1) = (2r+2s) gee(k,0) - (r+s) delta(k-1,3)
///   l >= 2: d/dt delta(k,l) = [r(l+1)+2s] gee(k,l-1)
/// Residuals are polynomials in t; all must be the zero polynomial.
ResidualReport<Polynomial<Rational>> check_delta_derivatives(const ExactMomentSystem& sys, int k, int l);

/// Same rules at one time in float mode, with d/dt delta obtained column by
/// column from the analytic moment derivatives.
ResidualReport<double> check_delta_derivatives(const MomentSystem& sys, int k, int l, double t);

struct BatteryOptions {
  std::size_t trials = 200;
  std::size_t max_n = 5;
  int max_k = 4;
  std::uint64_t seed = 7;
  bool inject_fault = false;  // negative control: corrupts one element of the first trial
};

struct IdentityTally {
  std::string identity;
  std::size_t checked = 0;
  std::size_t passed = 0;
};

struct BatteryFailure {
  std::string identity;
  std::size_t trial = 0;
  int k = 0;
  int l = 0;
  int element_kmin = 0;
  std::vector<std::string> elements;  // exact "p/q" strings
  std::string residual;
};

struct BatteryReport {
  std::vector<IdentityTally> tallies;
  std::optional<BatteryFailure> first_failure;
  std::size_t trials = 0;
  bool all_zero() const { return !first_failure.has_value(); }
};

/// Randomized exact-rational battery over every identity family above.
/// Deterministic for a given seed.
BatteryReport run_identity_battery(const BatteryOptions& opts);

}  // namespace gnch
