#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "netforge/errors.hpp"

namespace netforge::theory {

// Expected in-degree indexed by rank; values[0] is rank 1.
struct Curve {
  std::size_t n = 0;
  std::size_t m_cap = 0;
  std::vector<double> values;

  double at(std::size_t rank) const { return values.at(rank - 1); }
};

// P(m, i) for 1 <= m <= m_cap, 1 <= i <= n: summed probability over all
// other nodes of linking to i within their first m out-links.
class TheoryTable {
 public:
  TheoryTable(std::size_t n, std::size_t m_cap)
      : n_(n), m_cap_(m_cap), cells_(n * m_cap, 0.0) {}

  std::size_t n() const { return n_; }
  std::size_t m_cap() const { return m_cap_; }

  double operator()(std::size_t m, std::size_t i) const { return cells_[index(m, i)]; }
  double& operator()(std::size_t m, std::size_t i) { return cells_[index(m, i)]; }

  Curve row(std::size_t m) const {
    Curve c{n_, m_cap_, std::vector<double>(n_)};
    for (std::size_t i = 1; i <= n_; ++i) c.values[i - 1] = (*this)(m, i);
    return c;
  }

 private:
  std::size_t index(std::size_t m, std::size_t i) const { return (m - 1) * n_ + (i - 1); }

  std::size_t n_;
  std::size_t m_cap_;
  std::vector<double> cells_;
};

inline void validate(std::size_t n, std::size_t m_cap) {
  if (n < 2) throw ValidationError("n must be at least 2");
  if (m_cap < 1 || m_cap > n - 1) throw ValidationError("m_cap must lie in [1, n-1]");
}

// Fills P(m, i-1) = P(m, i) + P(m-1, i) / (i-1), sweeping i downward from n,
// with P(1, i) = P(m, n) = 1.
inline TheoryTable recursion_table(std::size_t n, std::size_t m_cap) {
  validate(n, m_cap);
  TheoryTable t(n, m_cap);
  for (std::size_t i = 1; i <= n; ++i) t(1, i) = 1.0;
  for (std::size_t m = 2; m <= m_cap; ++m) {
    t(m, n) = 1.0;
    for (std::size_t i = n; i >= 2; --i) {
      t(m, i - 1) = t(m, i) + t(m - 1, i) / static_cast<double>(i - 1);
    }
  }
  return t;
}

// Explicit form: sum over k < m_cap of the elementary symmetric polynomial
// e_k(1/i, ..., 1/(n-1)), accumulated in one downward sweep in O(n m_cap).
inline Curve exact_expected_indegree(std::size_t n, std::size_t m_cap) {
  validate(n, m_cap);
  Curve c{n, m_cap, std::vector<double>(n)};
  std::vector<double> e(m_cap, 0.0);
  e[0] = 1.0;
  c.values[n - 1] = 1.0;
  for (std::size_t i = n - 1; i >= 1; --i) {
    const double x = 1.0 / static_cast<double>(i);
    for (std::size_t k = m_cap - 1; k >= 1; --k) e[k] += e[k - 1] * x;
    c.values[i - 1] = std::accumulate(e.begin(), e.end(), 0.0);
  }
  return c;
}

// Large-n approximation: sum_{m < m_cap} log(n/i)^m / m!.
inline Curve merit_approx_curve(std::size_t n, std::size_t m_cap) {
  validate(n, m_cap);
  Curve c{n, m_cap, std::vector<double>(n)};
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = std::log(static_cast<double>(n) / static_cast<double>(i));
    double term = 1.0;
    double sum = 1.0;
    for (std::size_t m = 1; m < m_cap; ++m) {
      term *= x / static_cast<double>(m);
      sum += term;
    }
    c.values[i - 1] = sum;
  }
  return c;
}

// Mean-field in-degree of the i-th ranked node at the start of the
// Matthew process' second phase (t = n): 4n^2 / ((n+i-1)(n+i)) - 1.
inline double matthew_initial(std::size_t n, std::size_t rank) {
  const double nn = static_cast<double>(n);
  const double i = static_cast<double>(rank);
  return 4.0 * nn * nn / ((nn + i - 1.0) * (nn + i)) - 1.0;
}

// Mean-field Matthew curve at t = m_cap * n: 2(m_cap+1) n^2 / ((n+i-1)(n+i)) - 1.
inline Curve matthew_approx_curve(std::size_t n, std::size_t m_cap) {
  if (n < 2) throw ValidationError("n must be at least 2");
  if (m_cap < 1) throw ValidationError("m_cap must be at least 1");
  Curve c{n, m_cap, std::vector<double>(n)};
  const double nn = static_cast<double>(n);
  const double coeff = 2.0 * (static_cast<double>(m_cap) + 1.0) * nn * nn;
  for (std::size_t i = 1; i <= n; ++i) {
    const double r = static_cast<double>(i);
    c.values[i - 1] = coeff / ((nn + r - 1.0) * (nn + r)) - 1.0;
  }
  return c;
}

// Predicted Matthew in-degree density ((m_cap+1)/2) (d+1)^(-3/2).
inline double matthew_pdf_prediction(double d, std::size_t m_cap) {
  if (d < 0.0) throw ValidationError("in-degree must be non-negative");
  return (static_cast<double>(m_cap) + 1.0) / 2.0 * std::pow(d + 1.0, -1.5);
}

// Lower bound on the probability that the meritocracy process has reached
// equilibrium within t uniform pair draws: (1 - ((n-2)/(n-1))^t)^n.
inline double convergence_lower_bound(std::size_t n, std::uint64_t t) {
  if (n < 2) throw ValidationError("n must be at least 2");
  if (t == 0) return 0.0;
  const double miss =
      std::pow(static_cast<double>(n - 2) / static_cast<double>(n - 1), static_cast<double>(t));
  return std::pow(1.0 - miss, static_cast<double>(n));
}

struct CrossingReport {
  std::size_t sign_changes = 0;
  // First rank whose sign departs from the leading sign (a tie counts as a
  // departure). Empty when there is no sign change.
  std::optional<std::size_t> rank;

  bool single() const { return sign_changes == 1; }
};

// Counts sign changes of a - b over ranks 1..n, skipping exact ties.
inline CrossingReport single_crossing_index(const std::vector<double>& a,
                                            const std::vector<double>& b) {
  if (a.size() != b.size()) throw ValidationError("curves differ in length");
  CrossingReport report;
  int leading = 0;
  int previous = 0;
  std::optional<std::size_t> departure;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    const int sign = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
    if (leading == 0) {
      leading = sign;
      previous = sign;
      continue;
    }
    if (sign != leading && !departure) departure = k + 1;
    if (sign == 0) continue;
    if (sign != previous) ++report.sign_changes;
    previous = sign;
  }
  if (report.sign_changes > 0) report.rank = departure;
  return report;
}

inline constexpr std::size_t kOracleMaxNodes = 8;

// Exact meritocracy expectation by enumeration. Each source's candidate
// orderings are enumerated; the record rule stops at m_cap links or at the
// best other node. Link counts are integers, so the only rounding is the
// final division by (n-1)!.
inline Curve brute_force_oracle(std::size_t n, std::size_t m_cap) {
  validate(n, m_cap);
  if (n > kOracleMaxNodes) {
    throw ValidationError("brute-force oracle limited to n <= " + std::to_string(kOracleMaxNodes));
  }
  std::vector<std::uint64_t> counts(n + 1, 0);
  std::uint64_t orderings = 1;
  for (std::size_t k = 2; k <= n - 1; ++k) orderings *= k;

  for (std::size_t source = 1; source <= n; ++source) {
    const std::size_t target = source == 1 ? 2 : 1;
    std::vector<std::size_t> candidates;
    for (std::size_t j = 1; j <= n; ++j) {
      if (j != source) candidates.push_back(j);
    }
    do {
      std::size_t links = 0;
      std::size_t best = n + 1;
      for (std::size_t j : candidates) {
        if (links == m_cap || best == target) break;
        if (j < best) {
          best = j;
          ++links;
          ++counts[j];
        }
      }
    } while (std::next_permutation(candidates.begin(), candidates.end()));
  }

  Curve c{n, m_cap, std::vector<double>(n)};
  for (std::size_t i = 1; i <= n; ++i) {
    c.values[i - 1] = static_cast<double>(counts[i]) / static_cast<double>(orderings);
  }
  return c;
}

enum class Formula { recursion, exact, merit_approx, matthew_approx, oracle };

inline Formula parse_formula(std::string_view name) {
  if (name == "recursion") return Formula::recursion;
  if (name == "exact") return Formula::exact;
  if (name == "merit-approx") return Formula::merit_approx;
  if (name == "matthew-approx") return Formula::matthew_approx;
  if (name == "oracle") return Formula::oracle;
  throw ValidationError("unknown formula \"" + std::string(name) + "\"");
}

inline std::string_view describe(Formula f) {
  switch (f) {
    case Formula::recursion: return "recursion P(m,i-1)=P(m,i)+P(m-1,i)/(i-1)";
    case Formula::exact: return "exact sum_k e_k(1/i..1/(N-1))";
    case Formula::merit_approx: return "merit-approx sum_m log(N/i)^m/m!";
    case Formula::matthew_approx: return "matthew-approx 2(M+1)N^2/((N+i-1)(N+i))-1";
    case Formula::oracle: return "oracle exhaustive enumeration";
  }
  return "unknown";
}

inline Curve evaluate(Formula f, std::size_t n, std::size_t m_cap) {
  switch (f) {
    case Formula::recursion: return recursion_table(n, m_cap).row(m_cap);
    case Formula::exact: return exact_expected_indegree(n, m_cap);
    case Formula::merit_approx: return merit_approx_curve(n, m_cap);
    case Formula::matthew_approx:
      validate(n, m_cap);
      return matthew_approx_curve(n, m_cap);
    case Formula::oracle: return brute_force_oracle(n, m_cap);
  }
  throw ValidationError("unknown formula");
}

// "# <formula> n=.. m=.." then "rank,expected_indegree" rows.
inline void write_curve_csv(const Curve& c, Formula f, std::ostream& out) {
  out << "# " << describe(f) << " n=" << c.n << " m=" << c.m_cap << '\n';
  out << "rank,expected_indegree\n";
  out.precision(17);
  for (std::size_t i = 0; i < c.values.size(); ++i) out << (i + 1) << ',' << c.values[i] << '\n';
}

}  // namespace netforge::theory
