#pragma once

/**
 * @file oracle.hpp
 * @brief Independent verification of the analytic frontier.
 *
 * The grid oracle enumerates start vectors on a rational grid inside the
 * feasible box, evaluates both objectives directly, and keeps the
 * non-dominated image. A correct frontier admits no grid point that strictly
 * improves on it, and every frontier point is approached within one grid
 * step. Two identity checkers replay the trace and Kleene-star expansions of
 * a rank-one update by explicit enumeration of index compositions; both
 * sides must agree exactly.
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropt/errors.hpp"
#include "tropt/scheduling.hpp"

namespace tropt {

struct SampledPoint {
  Rat flow_time;
  Rat makespan;
  TropicalVector start;
};

/// Non-dominated image of the grid in the objective plane.
struct SampledFront {
  std::vector<SampledPoint> points;  // sorted by increasing flow time
  Rat step;
};

/// Step fine enough that every instance datum lies on the grid: one over
/// twice the least common multiple of the data denominators.
inline Rat default_grid_step(const ValidatedInstance& vi) {
  BigInt l = 1;
  auto fold = [&l](const TropicalValue& v) {
    if (v.is_zero()) return;
    const BigInt d = v.rat().den();
    l = l / boost::multiprecision::gcd(l, d) * d;
  };
  for (const auto& e : vi.inst.lags.entries()) fold(e);
  for (const auto& e : vi.inst.release.entries()) fold(e);
  if (vi.inst.release_deadline) {
    for (const auto& e : vi.inst.release_deadline->entries()) fold(e);
  }
  if (vi.inst.deadline) {
    for (const auto& e : vi.inst.deadline->entries()) fold(e);
  }
  return Rat::from_big(1, 2 * l);
}

inline SampledFront grid_pareto(const ValidatedInstance& vi, const Rat& step,
                                std::uint64_t cap = 10'000'000) {
  if (step.sign() <= 0) throw Error(ErrorCode::ZeroArgument, "grid step must be positive");
  const std::size_t n = vi.n();
  const TropicalVector lo = vi.inst.release;
  const TropicalVector hi = start_upper_bound(vi);

  std::vector<std::uint64_t> counts(n);
  BigInt total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Rat width = hi[i].rat() - lo[i].rat();
    const BigInt steps = (width / step).floor();
    counts[i] = (steps + 1).convert_to<std::uint64_t>();
    total *= steps + 1;
    if (total > cap) {
      throw Error(ErrorCode::GridTooLarge,
                  "grid needs " + total.str() + " points, cap is " + std::to_string(cap));
    }
  }

  std::vector<SampledPoint> raw;
  raw.reserve(total.convert_to<std::size_t>());
  std::vector<std::uint64_t> idx(n, 0);
  while (true) {
    std::vector<TropicalValue> coords(n);
    for (std::size_t i = 0; i < n; ++i) {
      coords[i] = TropicalValue(lo[i].rat() + Rat(static_cast<std::int64_t>(idx[i])) * step);
    }
    const Schedule s = evaluate_schedule(vi, TropicalVector(std::move(coords)));
    raw.push_back(SampledPoint{s.max_flow_time, s.makespan, s.start});

    std::size_t d = 0;
    while (d < n && ++idx[d] == counts[d]) idx[d++] = 0;
    if (d == n) break;
  }

  std::sort(raw.begin(), raw.end(), [](const SampledPoint& a, const SampledPoint& b) {
    if (a.flow_time != b.flow_time) return a.flow_time < b.flow_time;
    return a.makespan < b.makespan;
  });
  std::vector<SampledPoint> front;
  for (auto& pt : raw) {
    if (!front.empty()) {
      if (pt.makespan >= front.back().makespan) continue;  // dominated or duplicate
    }
    front.push_back(std::move(pt));
  }
  return SampledFront{std::move(front), step};
}

struct VerificationReport {
  std::string instance_id;
  Rat max_violation;  // 0 whenever the dominance check passes
  bool dominance_pass = false;
  bool attainment_pass = false;
  std::optional<bool> trace_identity_pass;
  std::optional<bool> star_identity_pass;

  bool pass() const {
    return dominance_pass && attainment_pass && trace_identity_pass.value_or(true) &&
           star_identity_pass.value_or(true);
  }
};

/// Dominance: no grid point strictly improves on any analytic frontier
/// point. Attainment: the frontier endpoints and midpoint are reached by the
/// grid within one step per coordinate.
inline VerificationReport check_frontier(const ParetoFrontier& front, const SampledFront& sampled) {
  std::vector<std::pair<Rat, Rat>> anchors;   // attainment targets
  std::vector<std::pair<Rat, Rat>> analytic;  // dominance targets
  auto push = [&front](std::vector<std::pair<Rat, Rat>>& into, const TropicalValue& alpha) {
    into.emplace_back(alpha.rat(), front.beta_at(alpha).rat());
  };
  push(anchors, front.alpha_lo);
  if (!front.single_point()) {
    push(anchors, TropicalValue((front.alpha_lo.rat() + front.alpha_hi.rat()) * Rat(1, 2)));
    push(anchors, front.alpha_hi);
  }
  for (const auto& alpha : sample_alphas(front, 21)) push(analytic, alpha);

  VerificationReport report;
  report.max_violation = Rat(0);
  report.dominance_pass = true;
  for (const auto& pt : sampled.points) {
    for (const auto& [alpha, beta] : analytic) {
      const bool weakly_below = pt.flow_time <= alpha && pt.makespan <= beta;
      if (weakly_below && (pt.flow_time < alpha || pt.makespan < beta)) {
        report.dominance_pass = false;
        const Rat gain = std::max(alpha - pt.flow_time, beta - pt.makespan);
        if (gain > report.max_violation) report.max_violation = gain;
      }
    }
  }

  report.attainment_pass = true;
  for (const auto& [alpha, beta] : anchors) {
    bool reached = false;
    for (const auto& pt : sampled.points) {
      if (pt.flow_time <= alpha + sampled.step && pt.makespan <= beta + sampled.step) {
        reached = true;
        break;
      }
    }
    report.attainment_pass = report.attainment_pass && reached;
  }
  return report;
}

namespace detail {

/// Calls fn for every way of writing `total` as an ordered sum of `parts`
/// non-negative integers.
inline void for_each_composition(std::size_t total, std::size_t parts,
                                 std::vector<std::size_t>& scratch,
                                 const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (parts == 0) {
    if (total == 0) fn(scratch);
    return;
  }
  for (std::size_t head = 0; head <= total; ++head) {
    scratch.push_back(head);
    for_each_composition(total - head, parts - 1, scratch, fn);
    scratch.pop_back();
  }
}

inline void check_identity_shapes(const TropicalMatrix& a, const TropicalVector& p,
                                  const TropicalVector& q, std::size_t max_order) {
  if (!a.square()) throw Error(ErrorCode::NotSquare, "identity check needs a square matrix");
  if (p.dim() != a.rows() || q.dim() != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "identity check vectors must match the matrix order");
  }
  if (a.rows() > max_order) {
    throw Error(ErrorCode::OrderTooLarge,
                "identity enumeration is limited to order " + std::to_string(max_order));
  }
}

}  // namespace detail

/// Replays Tr(A + p q_conj) through the composition expansion
///   Tr = max_k tr A^k  +  max over k, (i_1..i_k) of prod_j q_conj A^{i_j} p
/// and compares with the direct evaluation. Exact; any mismatch is a bug.
inline bool check_trace_identity(const TropicalMatrix& a, const TropicalVector& p,
                                 const TropicalVector& q) {
  detail::check_identity_shapes(a, p, q, 5);
  const std::size_t n = a.rows();
  const TropicalVector qc = conjugate(q);
  const TropicalMatrix b = mat_add(a, outer(p, qc));
  const TropicalValue lhs = big_trace(b);

  PowerTable powers(a, n);
  std::vector<TropicalValue> s(n);  // s[i] = q_conj A^i p
  for (std::size_t i = 0; i < n; ++i) s[i] = dot(vec_mat(qc, powers[i]), p);

  TropicalValue rhs;
  for (std::size_t k = 1; k <= n; ++k) rhs = oplus(rhs, trace(powers[k]));
  std::vector<std::size_t> scratch;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t m = 0; m + k <= n; ++m) {
      detail::for_each_composition(m, k, scratch, [&](const std::vector<std::size_t>& parts) {
        TropicalValue prod = TropicalValue::one();
        for (std::size_t idx : parts) prod = otimes(prod, s[idx]);
        rhs = oplus(rhs, prod);
      });
    }
  }
  return lhs == rhs;
}

/// Replays (A + p q_conj)* through the composition expansion
///   A* + max over k, (i_0..i_k) of (prod of inner factors) A^{i_0} p q_conj A^{i_k}
/// and compares with the direct Kleene star. Requires Tr(A + p q_conj) <= 1.
inline bool check_star_identity(const TropicalMatrix& a, const TropicalVector& p,
                                const TropicalVector& q) {
  detail::check_identity_shapes(a, p, q, 5);
  const std::size_t n = a.rows();
  const TropicalVector qc = conjugate(q);
  const TropicalMatrix b = mat_add(a, outer(p, qc));
  const TropicalMatrix lhs = kleene_star(b);  // throws StarDiverges when Tr(B) > 1

  PowerTable powers(a, n);
  std::vector<TropicalValue> s(n);
  std::vector<TropicalVector> a_pow_p;  // A^i p
  std::vector<TropicalVector> q_pow_a;  // q_conj A^i
  for (std::size_t i = 0; i < n; ++i) {
    a_pow_p.push_back(mat_vec(powers[i], p));
    q_pow_a.push_back(vec_mat(qc, powers[i]));
    s[i] = dot(q_pow_a[i], p);
  }

  TropicalMatrix rhs = TropicalMatrix::identity(n);
  for (std::size_t k = 1; k < n; ++k) rhs = mat_add(rhs, powers[k]);  // A*
  std::vector<std::size_t> scratch;
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    for (std::size_t m = 0; m + k + 1 <= n; ++m) {
      detail::for_each_composition(m, k + 1, scratch, [&](const std::vector<std::size_t>& parts) {
        // parts = (i_0, i_1, ..., i_k); the inner factors use i_1..i_{k-1}.
        TropicalValue scale = TropicalValue::one();
        for (std::size_t j = 1; j + 1 <= k; ++j) scale = otimes(scale, s[parts[j]]);
        if (scale.is_zero()) return;
        const TropicalMatrix term =
            scalar_mul(scale, outer(a_pow_p[parts.front()], q_pow_a[parts.back()]));
        rhs = mat_add(rhs, term);
      });
    }
  }
  return lhs == rhs;
}

}  // namespace tropt
