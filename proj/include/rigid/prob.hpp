#pragma once

// Multinomial point probabilities, the distribution's mode, and binomial
// probability vectors. The default arithmetic is log-space floating
// point; an exact rational path exists for the small sizes where the
// statements being checked are about exact maximizers and rounding must
// not manufacture or hide a counterexample.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rigid/undecided.hpp"

namespace rigid {

using ProbVector = std::vector<double>;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kProbSumTol = 1e-12;

inline void validate_prob_vector(const ProbVector& p) {
  if (p.empty()) throw std::domain_error("probability vector is empty");
  double sum = 0.0;
  for (double x : p) {
    if (x < 0.0 || !std::isfinite(x))
      throw std::domain_error("probability vector entry out of range");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kProbSumTol)
    throw std::domain_error("probability vector does not sum to 1");
}

namespace detail {

inline BigInt factorial_big(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// floor(m * p) for an exact non-negative rational p.
inline long long floor_times(int m, const Rational& p) {
  BigInt num = numerator(p) * m;
  BigInt den = denominator(p);
  return static_cast<long long>(num / den);
}

/// Number of ways to write r as an ordered sum of k non-negative parts,
/// saturating at `cap` to keep the estimate overflow-free.
inline long long composition_count(long long r, int k, long long cap) {
  long long c = 1;
  for (long long i = 1; i < k; ++i) {
    c = c * (r + i) / i;  // exact: running product of binomials
    if (c > cap) return cap + 1;
  }
  return c;
}

template <typename Fn>
inline void for_each_composition(int total, int parts, std::vector<int>& a,
                                 int idx, Fn&& fn) {
  if (idx == parts - 1) {
    a[idx] = total;
    fn(a);
    return;
  }
  for (int take = 0; take <= total; ++take) {
    a[idx] = take;
    for_each_composition(total - take, parts, a, idx + 1, fn);
  }
}

}  // namespace detail

/// Multinomial point probability, log-space. Zero-probability categories
/// with zero count contribute nothing; with a positive count they zero
/// the result.
inline double multinomial_pmf(int m, const ProbVector& p,
                              const std::vector<int>& a) {
  validate_prob_vector(p);
  if (a.size() != p.size())
    throw std::domain_error("multinomial_pmf: count/probability size mismatch");
  long long total = 0;
  for (int x : a) {
    if (x < 0) throw std::domain_error("multinomial_pmf: negative count");
    total += x;
  }
  if (total != m) throw std::domain_error("multinomial_pmf: counts do not sum to m");

  double log_pmf = std::lgamma(static_cast<double>(m) + 1.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    log_pmf -= std::lgamma(static_cast<double>(a[i]) + 1.0);
    if (a[i] > 0) {
      if (p[i] == 0.0) return 0.0;
      log_pmf += a[i] * std::log(p[i]);
    }
  }
  return std::exp(log_pmf);
}

/// Exact rational multinomial point probability.
inline Rational multinomial_pmf_exact(int m, const std::vector<Rational>& p,
                                      const std::vector<int>& a) {
  if (a.size() != p.size())
    throw std::domain_error("multinomial_pmf_exact: size mismatch");
  long long total = 0;
  for (int x : a) {
    if (x < 0) throw std::domain_error("multinomial_pmf_exact: negative count");
    total += x;
  }
  if (total != m)
    throw std::domain_error("multinomial_pmf_exact: counts do not sum to m");
  BigInt den = 1;
  for (int x : a) den *= detail::factorial_big(x);
  Rational out(detail::factorial_big(m) / den);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j < a[i]; ++j) out *= p[i];
  return out;
}

struct MultinomialMode {
  std::vector<int> counts;
  double pmax = 0.0;
};

/// A maximizer of the multinomial pmf. Every maximizer keeps each count
/// at or above floor(m * p_t), so the search only distributes the
/// leftover m - sum(floors) units; the floors are taken through the
/// exact normalized rational image of p so this containment is not at
/// the mercy of rounding (verify_mode_floors re-checks the claim itself
/// without any pruning). Throws UndecidedError when the candidate space
/// exceeds the budget.
inline MultinomialMode multinomial_mode(int m, const ProbVector& p,
                                        long long budget = 5'000'000) {
  validate_prob_vector(p);
  if (m < 0) throw std::domain_error("multinomial_mode: negative m");
  const int k = static_cast<int>(p.size());

  std::vector<Rational> pr;
  pr.reserve(k);
  Rational sum = 0;
  for (double x : p) {
    pr.emplace_back(x);
    sum += pr.back();
  }
  std::vector<int> base(k);
  long long spare = m;
  for (int i = 0; i < k; ++i) {
    base[i] = static_cast<int>(detail::floor_times(m, pr[i] / sum));
    spare -= base[i];
  }
  if (spare < 0)
    throw std::logic_error("multinomial_mode: floor counts exceed m");
  if (detail::composition_count(spare, k, budget) > budget)
    throw UndecidedError("multinomial_mode: candidate space over budget");

  MultinomialMode best;
  best.pmax = -1.0;
  std::vector<int> extra(k, 0), a(k);
  detail::for_each_composition(
      static_cast<int>(spare), k, extra, 0, [&](const std::vector<int>& e) {
        for (int i = 0; i < k; ++i) a[i] = base[i] + e[i];
        double v = multinomial_pmf(m, p, a);
        if (v > best.pmax) {
          best.pmax = v;
          best.counts = a;
        }
      });
  return best;
}

/// Binomial point probabilities (i successes out of k at rate p), the
/// probability vector the decay profile feeds to the mode search.
inline ProbVector binomial_prob_vector(int k, double p) {
  if (k < 0) throw std::domain_error("binomial_prob_vector: negative k");
  if (!(p > 0.0) || p > 0.5)
    throw std::domain_error("binomial_prob_vector: need 0 < p <= 1/2");
  const double q = 1.0 - p;
  ProbVector out(k + 1);
  for (int i = 0; i <= k; ++i) {
    double lg = std::lgamma(k + 1.0) - std::lgamma(i + 1.0) -
                std::lgamma(k - i + 1.0) + i * std::log(p) +
                (k - i) * std::log(q);
    out[i] = std::exp(lg);
  }
  return out;
}

/// Exhaustively checks that every global maximizer a of the multinomial
/// pmf satisfies a_t >= floor(m * p_t) for all t. All arithmetic is
/// exact; p must sum to exactly 1.
inline bool verify_mode_floors(int m, const std::vector<Rational>& p) {
  if (m < 0) throw std::domain_error("verify_mode_floors: negative m");
  if (p.empty()) throw std::domain_error("verify_mode_floors: empty vector");
  Rational sum = 0;
  for (const Rational& x : p) {
    if (x < 0) throw std::domain_error("verify_mode_floors: negative entry");
    sum += x;
  }
  if (sum != 1) throw std::domain_error("verify_mode_floors: entries must sum to 1");
  const int k = static_cast<int>(p.size());

  std::vector<long long> floors(k);
  for (int i = 0; i < k; ++i) floors[i] = detail::floor_times(m, p[i]);

  Rational best = -1;
  std::vector<std::vector<int>> argmax;
  std::vector<int> a(k);
  detail::for_each_composition(m, k, a, 0, [&](const std::vector<int>& cand) {
    Rational v = multinomial_pmf_exact(m, p, cand);
    if (v > best) {
      best = v;
      argmax.assign(1, cand);
    } else if (v == best) {
      argmax.push_back(cand);
    }
  });
  for (const auto& cand : argmax)
    for (int i = 0; i < k; ++i)
      if (cand[i] < floors[i]) return false;
  return true;
}

/// Convenience overload: each double is taken at its exact binary value
/// and the vector is normalized by its exact sum, so the check still
/// concerns a genuine probability vector.
inline bool verify_mode_floors(int m, const ProbVector& p) {
  validate_prob_vector(p);
  std::vector<Rational> pr;
  pr.reserve(p.size());
  Rational sum = 0;
  for (double x : p) {
    pr.emplace_back(x);
    sum += pr.back();
  }
  for (Rational& x : pr) x /= sum;
  return verify_mode_floors(m, pr);
}

/// Exact rational from decimal text like "0.05" or "3" or "1/20".
inline Rational parse_decimal_rational(const std::string& text) {
  if (text.find('/') != std::string::npos) return Rational(text);
  bool negative = false;
  std::size_t start = 0;
  if (start < text.size() && (text[start] == '+' || text[start] == '-')) {
    negative = text[start] == '-';
    ++start;
  }
  BigInt num = 0;
  BigInt den = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot)
        throw std::domain_error("parse_decimal_rational: bad text " + text);
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9')
      throw std::domain_error("parse_decimal_rational: bad text " + text);
    num = num * 10 + (c - '0');
    if (seen_dot) den *= 10;
    seen_digit = true;
  }
  if (!seen_digit)
    throw std::domain_error("parse_decimal_rational: no digits in " + text);
  if (negative) num = -num;
  return Rational(num, den);
}

struct ModeFloorsGridResult {
  long long cases = 0;
  long long failures = 0;

  bool all_hold() const { return failures == 0; }
};

/// verify_mode_floors over the whole grid: every (m <= max_m, k <= max_k,
/// probability vector with entries positive multiples of step summing to
/// 1). step must divide 1 exactly.
inline ModeFloorsGridResult verify_mode_floors_grid(int max_m, int max_k,
                                           const Rational& step) {
  if (max_m < 0 || max_k < 1)
    throw std::domain_error("verify_mode_floors_grid: bad bounds");
  Rational inv = 1 / step;
  if (step <= 0 || boost::multiprecision::denominator(inv) != 1)
    throw std::domain_error("verify_mode_floors_grid: step must divide 1");
  const long long units =
      static_cast<long long>(boost::multiprecision::numerator(inv));

  ModeFloorsGridResult out;
  std::vector<Rational> p;
  for (int k = 1; k <= max_k; ++k) {
    // Compositions of `units` into k positive parts.
    std::vector<int> parts(k);
    auto walk = [&](auto&& self, int idx, long long left) -> void {
      if (idx == k - 1) {
        if (left < 1) return;
        parts[idx] = static_cast<int>(left);
        p.clear();
        for (int x : parts) p.push_back(x * step);
        for (int m = 0; m <= max_m; ++m) {
          ++out.cases;
          if (!verify_mode_floors(m, p)) ++out.failures;
        }
        return;
      }
      for (long long v = 1; v + (k - 1 - idx) <= left; ++v) {
        parts[idx] = static_cast<int>(v);
        self(self, idx + 1, left - v);
      }
    };
    walk(walk, 0, units);
  }
  return out;
}

struct PiProfileRow {
  int m = 0;
  double pi = 0.0;
  double normalized = std::numeric_limits<double>::quiet_NaN();
  double truncated_mass = 0.0;
  bool undecided = false;
};

/// Mode probability of m draws over the binomial(k, p) category vector,
/// for each requested m, together with log(pi) / (sqrt(m) * log(m)) for
/// decay inspection (reported, not asserted; left NaN for m < 2). When
/// the category vector is longer than max_categories, the contiguous
/// window of maximal mass is kept and the two tails are folded into the
/// window's edge categories; the folded mass is reported per row.
inline std::vector<PiProfileRow> pi_decay_profile(
    int k, double p, const std::vector<int>& m_values, int max_categories = 12,
    long long budget = 5'000'000) {
  if (max_categories < 2)
    throw std::domain_error("pi_decay_profile: need at least two categories");
  ProbVector full = binomial_prob_vector(k, p);
  ProbVector vec;
  double folded = 0.0;
  if (static_cast<int>(full.size()) > max_categories) {
    std::size_t lo = 0;
    double window = 0.0, best = -1.0;
    for (std::size_t i = 0; i < full.size(); ++i) {
      window += full[i];
      if (i >= static_cast<std::size_t>(max_categories))
        window -= full[i - max_categories];
      if (i + 1 >= static_cast<std::size_t>(max_categories) && window > best) {
        best = window;
        lo = i + 1 - max_categories;
      }
    }
    vec.assign(full.begin() + lo, full.begin() + lo + max_categories);
    double left = 0.0, right = 0.0;
    for (std::size_t i = 0; i < lo; ++i) left += full[i];
    for (std::size_t i = lo + max_categories; i < full.size(); ++i)
      right += full[i];
    vec.front() += left;
    vec.back() += right;
    folded = left + right;
  } else {
    vec = full;
  }

  std::vector<PiProfileRow> rows;
  rows.reserve(m_values.size());
  for (int m : m_values) {
    PiProfileRow row;
    row.m = m;
    row.truncated_mass = folded;
    try {
      MultinomialMode mode = multinomial_mode(m, vec, budget);
      row.pi = mode.pmax;
      if (m >= 2)
        row.normalized =
            std::log(row.pi) / (std::sqrt(static_cast<double>(m)) *
                                std::log(static_cast<double>(m)));
    } catch (const UndecidedError&) {
      row.undecided = true;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rigid
