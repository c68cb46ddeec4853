#pragma once

// Shared helpers for the test suites: terse constructors for tropical
// values from string literals, the two worked instances used throughout,
// and a small deterministic generator for randomized property tests.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "tropt/oracle.hpp"

namespace tt {

using namespace tropt;

inline TropicalValue v(const char* text) { return TropicalValue::parse(text); }
inline TropicalValue v(std::int64_t x) { return TropicalValue(Rat(x)); }
inline TropicalValue v(int x) { return TropicalValue(Rat(x)); }
inline TropicalValue zz() { return TropicalValue::zero(); }

inline Rat q(const char* text) { return Rat::parse(text); }

/// Matrix from a semicolon/space separated literal: "1 2 2; 1 1 2; -inf 0 1".
inline TropicalMatrix mat(const std::string& text) {
  std::vector<std::vector<TropicalValue>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<TropicalValue> r;
    std::stringstream rs(row);
    std::string tok;
    while (rs >> tok) r.push_back(TropicalValue::parse(tok));
    rows.push_back(std::move(r));
  }
  std::vector<TropicalValue> entries;
  for (const auto& r : rows) entries.insert(entries.end(), r.begin(), r.end());
  return TropicalMatrix(rows.size(), rows.empty() ? 0 : rows[0].size(), std::move(entries));
}

/// Vector from a space separated literal: "0 0 0".
inline TropicalVector vec(const std::string& text) {
  std::vector<TropicalValue> r;
  std::stringstream rs(text);
  std::string tok;
  while (rs >> tok) r.push_back(TropicalValue::parse(tok));
  return TropicalVector(std::move(r));
}

// The two worked instances: a release-deadline project and a finish-deadline
// project, both of order 3.

inline ProjectInstance example1() {
  ProjectInstance p;
  p.name = "ex1";
  p.lags = mat("1 2 2; 1 1 2; -inf 0 1");
  p.release = vec("0 0 0");
  p.release_deadline = vec("1 2 2");
  return p;
}

inline ProjectInstance example2() {
  ProjectInstance p;
  p.name = "ex2";
  p.lags = mat("1 1 2; 2 1 -inf; -inf 1 1");
  p.release = vec("0 0 0");
  p.deadline = vec("3 3 2");
  return p;
}

/// splitmix64: deterministic across platforms, unlike <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t x = (state_ += 0x9e3779b97f4a7c15ULL);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  /// Uniform integer in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool chance(double p) { return static_cast<double>(next() >> 11) / 9007199254740992.0 < p; }

  /// Random finite value: integer in [lo, hi], sometimes with denominator 2.
  TropicalValue value(std::int64_t lo, std::int64_t hi, bool halves = false) {
    if (halves && chance(0.3)) return TropicalValue(Rat(range(2 * lo, 2 * hi), 2));
    return TropicalValue(Rat(range(lo, hi)));
  }

  /// Random matrix with the given zero-entry probability.
  TropicalMatrix matrix(std::size_t rows, std::size_t cols, std::int64_t lo, std::int64_t hi,
                        double zero_prob = 0.3) {
    std::vector<TropicalValue> e;
    e.reserve(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
      e.push_back(chance(zero_prob) ? TropicalValue::zero() : value(lo, hi));
    }
    return TropicalMatrix(rows, cols, std::move(e));
  }

  TropicalVector vector(std::size_t dim, std::int64_t lo, std::int64_t hi,
                        double zero_prob = 0.0) {
    std::vector<TropicalValue> e;
    e.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      e.push_back(chance(zero_prob) ? TropicalValue::zero() : value(lo, hi));
    }
    return TropicalVector(std::move(e));
  }

  /// Random project with integer data, guaranteed to validate: finite
  /// diagonal lags, release window of non-negative width or a deadline at
  /// least the earliest finish.
  ProjectInstance project(std::size_t n, bool finish_deadline, std::int64_t lo = -3,
                          std::int64_t hi = 5) {
    ProjectInstance p;
    std::vector<TropicalValue> lags(n * n, TropicalValue::zero());
    for (std::size_t i = 0; i < n; ++i) {
      lags[i * n + i] = TropicalValue(Rat(range(0, hi)));  // duration
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && chance(0.5)) lags[i * n + j] = value(lo, hi);
      }
    }
    return finish_touches(std::move(p), std::move(lags), n, finish_deadline, lo, hi);
  }

  /// Like project(), but with short durations, heavy lags above the diagonal
  /// and light negative ones below. Cycle weights stay low while path weights
  /// grow, which is the regime where the frontier is a real segment rather
  /// than a point.
  ProjectInstance project_layered(std::size_t n, bool finish_deadline, std::int64_t lo = -3,
                                  std::int64_t hi = 5) {
    ProjectInstance p;
    std::vector<TropicalValue> lags(n * n, TropicalValue::zero());
    for (std::size_t i = 0; i < n; ++i) {
      lags[i * n + i] = TropicalValue(Rat(range(0, 1)));
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (i < j && chance(0.8)) lags[i * n + j] = TropicalValue(Rat(range(1, hi)));
        if (i > j && chance(0.3)) lags[i * n + j] = TropicalValue(Rat(range(lo, 0)));
      }
    }
    return finish_touches(std::move(p), std::move(lags), n, finish_deadline, lo, hi);
  }

  ProjectInstance project_mixed(std::size_t n, bool finish_deadline, std::int64_t lo = -3,
                                std::int64_t hi = 5) {
    return chance(0.5) ? project(n, finish_deadline, lo, hi)
                       : project_layered(n, finish_deadline, lo, hi);
  }

 private:
  ProjectInstance finish_touches(ProjectInstance p, std::vector<TropicalValue> lags,
                                 std::size_t n, bool finish_deadline, std::int64_t lo,
                                 std::int64_t hi) {
    if (finish_deadline) {
      // keep every column regular so the deadline bound exists
      for (std::size_t j = 0; j < n; ++j) {
        bool has = false;
        for (std::size_t i = 0; i < n; ++i) has = has || !lags[i * n + j].is_zero();
        if (!has) lags[range(0, static_cast<std::int64_t>(n) - 1) * n + j] = value(lo, hi);
      }
    }
    p.lags = TropicalMatrix(n, n, std::move(lags));
    p.release = vector(n, lo, hi);
    if (finish_deadline) {
      const TropicalVector earliest = mat_vec(p.lags, p.release);
      std::vector<TropicalValue> f(n);
      for (std::size_t i = 0; i < n; ++i) {
        f[i] = TropicalValue(earliest[i].rat() + Rat(range(0, 4)));
      }
      p.deadline = TropicalVector(std::move(f));
    } else {
      std::vector<TropicalValue> h(n);
      for (std::size_t i = 0; i < n; ++i) {
        h[i] = TropicalValue(p.release[i].rat() + Rat(range(0, 4)));
      }
      p.release_deadline = TropicalVector(std::move(h));
    }
    return p;
  }

  std::uint64_t state_;
};

inline std::string fixture(const std::string& name) {
  return std::string(TROPT_EXAMPLES_DIR) + "/" + name;
}

}  // namespace tt
