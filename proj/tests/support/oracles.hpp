// Brute-force reference implementations used by the unit and acceptance
// tests. Deliberately naive: no shared code with the library algorithms.
#ifndef REPLYWATCH_TESTS_ORACLES_HPP
#define REPLYWATCH_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

struct Focus {
  std::size_t start = 0, end = 0;
  double focus = 1.0, normalized = 1.0;
};

// O(D^2) window enumeration on integer counts. Longest qualifying window,
// earliest start; nullopt when the total is zero.
inline std::optional<Focus> focus(const std::vector<std::int64_t>& v) {
  const std::int64_t d = static_cast<std::int64_t>(v.size());
  std::int64_t total = 0;
  for (auto x : v) total += x;
  if (total == 0) return std::nullopt;
  for (std::int64_t len = d; len >= 1; --len) {
    for (std::int64_t s = 0; s + len <= d; ++s) {
      std::int64_t sum = 0;
      for (std::int64_t k = s; k < s + len; ++k) sum += v[k];
      if (sum * d > total * len) {
        Focus f;
        f.start = static_cast<std::size_t>(s);
        f.end = static_cast<std::size_t>(s + len - 1);
        f.focus = static_cast<double>(sum) / static_cast<double>(total);
        f.normalized = f.focus * static_cast<double>(d) / static_cast<double>(len);
        return f;
      }
    }
  }
  Focus f;
  f.start = 0;
  f.end = v.size() - 1;
  return f;
}

inline double gini(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double sum = 0, mad = 0;
  for (double a : x) sum += a;
  if (sum == 0) return 0.0;
  for (double a : x) {
    for (double b : x) mad += std::fabs(a - b);
  }
  return mad / (2.0 * n * n * (sum / n));
}

inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Exact two-sided Fisher p on [[a,b],[c,d]] by integer enumeration of all
// tables with the same margins.
inline double fisher(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const std::int64_t r1 = a + b, r2 = c + d, c1 = a + c, n = a + b + c + d;
  auto weight = [&](std::int64_t x) { return choose(r1, x) * choose(r2, c1 - x); };
  const std::uint64_t obs = weight(a);
  std::uint64_t hit = 0, all = 0;
  for (std::int64_t x = std::max<std::int64_t>(0, c1 - r2); x <= std::min(r1, c1); ++x) {
    const std::uint64_t w = weight(x);
    all += w;
    if (w <= obs) hit += w;
  }
  (void)n;
  return static_cast<double>(hit) / static_cast<double>(all);
}

// Twice the Mann-Whitney U of `a`: pairs a>b count 2, ties count 1.
inline std::int64_t doubled_u(const std::vector<double>& a, const std::vector<double>& b) {
  std::int64_t u = 0;
  for (double x : a) {
    for (double y : b) u += x > y ? 2 : (x == y ? 1 : 0);
  }
  return u;
}

// Enumerates every assignment of |a| of the pooled values to the first
// group; p = share with |U - mn/2| at least as large as observed.
inline double mann_whitney(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size(), m = a.size();
  const std::int64_t mn = static_cast<std::int64_t>(a.size() * b.size());
  const std::int64_t obs = std::llabs(doubled_u(a, b) - mn);
  std::uint64_t hit = 0, all = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != m) continue;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? x : y).push_back(pooled[i]);
    ++all;
    if (std::llabs(doubled_u(x, y) - mn) >= obs) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(all);
}

// Every split of `s` into vocabulary words; fewest pieces, then the
// lexicographically largest list of piece lengths. nullopt if none.
inline std::optional<std::vector<std::string>> segment(const std::string& s,
                                                       const std::vector<std::string>& vocab) {
  std::optional<std::vector<std::string>> best;
  std::vector<std::string> cur;
  auto better = [](const std::vector<std::string>& x, const std::vector<std::string>& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].size() != y[i].size()) return x[i].size() > y[i].size();
    }
    return false;
  };
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == s.size()) {
      if (!best || better(cur, *best)) best = cur;
      return;
    }
    for (const auto& w : vocab) {
      if (s.compare(pos, w.size(), w) == 0 && !w.empty()) {
        cur.push_back(w);
        self(self, pos + w.size());
        cur.pop_back();
      }
    }
  };
  rec(rec, 0);
  return best;
}

// All (begin, end, pattern) occurrences of each pattern in `text`.
inline std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> scan(
    const std::vector<std::vector<std::string>>& patterns, const std::vector<std::string>& text) {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    const auto& pat = patterns[p];
    for (std::size_t i = 0; i + pat.size() <= text.size(); ++i) {
      if (std::equal(pat.begin(), pat.end(), text.begin() + static_cast<std::ptrdiff_t>(i))) {
        out.emplace_back(i, i + pat.size(), p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle

#endif
