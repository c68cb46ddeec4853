#pragma once

/**
 * @file pareto.hpp
 * @brief Complete Pareto-optimal solution of the bi-objective tropical problem
 *
 *     minimize { x_conj A x,  x_conj p q_conj x }   subject to  g <= x <= h.
 *
 * The frontier is described in closed form by three constants (lambda, mu,
 * nu) and a decreasing curve beta = G(alpha) with companion inverse H. It is
 * either the single point (lambda + mu, nu) or the segment of the curve with
 * alpha between lambda + mu and H(nu). At every frontier alpha the full
 * solution set is the image of a parameter box under a Kleene star matrix.
 *
 * All quantities are exact rationals; everything here is pure and safe for
 * concurrent evaluation at many alpha values.
 */

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "tropt/errors.hpp"
#include "tropt/linalg.hpp"

namespace tropt {

/// Validated problem data: square nonzero A and nonzero p, q, g, h of
/// matching dimension with g below h in the conjugate sense.
class BiObjectiveProblem {
 public:
  BiObjectiveProblem(TropicalMatrix a, TropicalVector p, TropicalVector q,
                     TropicalVector g, TropicalVector h)
      : a_(std::move(a)), p_(std::move(p)), q_(std::move(q)),
        g_(std::move(g)), h_(std::move(h)) {
    if (!a_.square()) throw Error(ErrorCode::NotSquare, "problem matrix must be square");
    const std::size_t n = a_.rows();
    if (p_.dim() != n || q_.dim() != n || g_.dim() != n || h_.dim() != n) {
      throw Error(ErrorCode::ShapeMismatch, "problem vectors must have the matrix order");
    }
    if (!a_.nonzero()) throw Error(ErrorCode::AllZeroMatrix, "problem matrix is all zero");
    if (!p_.nonzero()) throw Error(ErrorCode::ZeroVector, "vector p is all zero");
    if (!q_.nonzero()) throw Error(ErrorCode::ZeroVector, "vector q is all zero");
    if (!g_.nonzero()) throw Error(ErrorCode::ZeroVector, "vector g is all zero");
    if (!h_.nonzero()) throw Error(ErrorCode::ZeroVector, "vector h is all zero");
    if (dot(conjugate(h_), g_) > TropicalValue::one()) {
      throw Error(ErrorCode::InfeasibleBox, "lower bound g exceeds upper bound h");
    }
    // The second objective must have a positive floor, otherwise the curve
    // inverse H is unbounded and no finite frontier exists.
    const TropicalVector qc = conjugate(q_);
    const TropicalValue nu =
        oplus(dot(qc, p_), otimes(dot(conjugate(h_), p_), dot(qc, g_)));
    if (nu.is_zero()) {
      throw Error(ErrorCode::DegenerateObjective,
                  "q_conj p and h_conj p q_conj g are both zero");
    }
  }

  const TropicalMatrix& a() const { return a_; }
  const TropicalVector& p() const { return p_; }
  const TropicalVector& q() const { return q_; }
  const TropicalVector& g() const { return g_; }
  const TropicalVector& h() const { return h_; }
  std::size_t n() const { return a_.rows(); }

 private:
  TropicalMatrix a_;
  TropicalVector p_, q_, g_, h_;
};

/// Frontier constants and curve coefficients, all read off one power table:
///   lambda = max_k tr^{1/k}(A^k)            (spectral radius)
///   mu     = max_{k<n} (h_conj A^k g)^{1/k}
///   nu     = q_conj p + h_conj p q_conj g
///   curve_coeffs[k-1] = c_k where G(s) = max_k c_k s^{-k}, k = 1..n-1.
struct FrontierConstants {
  std::size_t n = 0;
  TropicalValue lambda;
  TropicalValue mu;
  TropicalValue nu;
  std::vector<TropicalValue> curve_coeffs;
  std::shared_ptr<const PowerTable> powers;
};

inline FrontierConstants constants(const BiObjectiveProblem& prob) {
  const std::size_t n = prob.n();
  FrontierConstants c;
  c.n = n;
  c.powers = std::make_shared<const PowerTable>(prob.a(), n);
  const PowerTable& pw = *c.powers;

  c.lambda = spectral_radius(pw, n);

  const TropicalVector hc = conjugate(prob.h());
  const TropicalVector qc = conjugate(prob.q());

  // Rows h_conj A^k and q_conj A^k for k = 0..n-1, read from the table.
  std::vector<TropicalValue> h_row_p(n), q_row_g(n), q_row_p(n), h_row_g(n);
  for (std::size_t k = 0; k < n; ++k) {
    const TropicalVector h_row = vec_mat(hc, pw[k]);
    const TropicalVector q_row = vec_mat(qc, pw[k]);
    h_row_p[k] = dot(h_row, prob.p());
    h_row_g[k] = dot(h_row, prob.g());
    q_row_p[k] = dot(q_row, prob.p());
    q_row_g[k] = dot(q_row, prob.g());
  }

  c.mu = TropicalValue::zero();
  for (std::size_t k = 1; k <= n - 1; ++k) {
    c.mu = oplus(c.mu, rpow(h_row_g[k], Rat(1, static_cast<std::int64_t>(k))));
  }

  c.nu = oplus(q_row_p[0], otimes(h_row_p[0], q_row_g[0]));

  c.curve_coeffs.assign(n >= 1 ? n - 1 : 0, TropicalValue::zero());
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    TropicalValue ck = q_row_p[k];
    if (k + 2 <= n) {  // the cross terms run over k = 1..n-2
      for (std::size_t i = 0; i <= k; ++i) {
        ck = oplus(ck, otimes(h_row_p[i], q_row_g[k - i]));
      }
    }
    c.curve_coeffs[k - 1] = ck;
  }
  return c;
}

/// G(s) = max_k c_k s^{-k}; decreasing in s, the tropical zero when the
/// coefficient list is empty (order-1 problems).
inline TropicalValue eval_G(const TropicalValue& s, const FrontierConstants& c) {
  if (s.is_zero()) throw Error(ErrorCode::ZeroArgument, "G evaluated at the zero element");
  TropicalValue acc;
  for (std::size_t k = 1; k <= c.curve_coeffs.size(); ++k) {
    const TropicalValue& ck = c.curve_coeffs[k - 1];
    if (ck.is_zero()) continue;
    acc = oplus(acc, otimes(ck, rpow(s, Rat(-static_cast<std::int64_t>(k)))));
  }
  return acc;
}

/// H(t) = max_k (c_k t^{-1})^{1/k}; the inverse of G in the sense that
/// G(s) <= t exactly when H(t) <= s.
inline TropicalValue eval_H(const TropicalValue& t, const FrontierConstants& c) {
  if (t.is_zero()) throw Error(ErrorCode::ZeroArgument, "H evaluated at the zero element");
  TropicalValue acc;
  const TropicalValue t_inv = inverse(t);
  for (std::size_t k = 1; k <= c.curve_coeffs.size(); ++k) {
    const TropicalValue& ck = c.curve_coeffs[k - 1];
    if (ck.is_zero()) continue;
    acc = oplus(acc, rpow(otimes(ck, t_inv), Rat(1, static_cast<std::int64_t>(k))));
  }
  return acc;
}

/// The frontier in the (alpha, beta) plane: a single point when the curve
/// already lies below nu at alpha = lambda + mu, otherwise the curve segment
/// between that alpha and H(nu).
struct ParetoFrontier {
  enum class Kind { SinglePoint, Segment };

  Kind kind = Kind::SinglePoint;
  TropicalValue alpha_lo;  // equals alpha_hi for a single point
  TropicalValue alpha_hi;
  TropicalValue nu;        // beta of the single point; curve floor otherwise
  std::vector<TropicalValue> curve_coeffs;

  bool single_point() const { return kind == Kind::SinglePoint; }

  bool contains(const TropicalValue& alpha) const {
    if (kind == Kind::SinglePoint) return alpha == alpha_lo;
    return alpha_lo <= alpha && alpha <= alpha_hi;
  }

  /// beta = nu + G(alpha); on a segment the curve dominates, at the single
  /// point G has already dropped below nu.
  TropicalValue beta_at(const TropicalValue& alpha) const {
    if (alpha.is_zero()) throw Error(ErrorCode::ZeroArgument, "beta at the zero element");
    TropicalValue acc = nu;
    for (std::size_t k = 1; k <= curve_coeffs.size(); ++k) {
      const TropicalValue& ck = curve_coeffs[k - 1];
      if (ck.is_zero()) continue;
      acc = oplus(acc, otimes(ck, rpow(alpha, Rat(-static_cast<std::int64_t>(k)))));
    }
    return acc;
  }
};

inline ParetoFrontier frontier(const FrontierConstants& c) {
  ParetoFrontier f;
  f.nu = c.nu;
  f.curve_coeffs = c.curve_coeffs;
  const TropicalValue lm = oplus(c.lambda, c.mu);

  bool curve_trivial = true;
  for (const auto& ck : c.curve_coeffs) curve_trivial = curve_trivial && ck.is_zero();
  const TropicalValue hv = curve_trivial ? TropicalValue::zero() : eval_H(c.nu, c);

  if (lm >= hv) {
    f.kind = ParetoFrontier::Kind::SinglePoint;
    f.alpha_lo = lm;
    f.alpha_hi = lm;
  } else {
    f.kind = ParetoFrontier::Kind::Segment;
    f.alpha_lo = lm;
    f.alpha_hi = hv;
  }
  return f;
}

inline ParetoFrontier frontier(const BiObjectiveProblem& prob) {
  return frontier(constants(prob));
}

/// Solution family at one frontier alpha: x = star u for any parameter u in
/// the box [u_lo, u_hi].
struct ParametricSolution {
  TropicalValue alpha;
  TropicalValue beta;
  TropicalMatrix star;
  TropicalVector u_lo;
  TropicalVector u_hi;
};

inline ParametricSolution solution_at(const BiObjectiveProblem& prob,
                                      const ParetoFrontier& f,
                                      const TropicalValue& alpha) {
  if (alpha.is_zero() || !f.contains(alpha)) {
    throw Error(ErrorCode::AlphaOutOfRange,
                "alpha = " + alpha.str() + " is outside the frontier range [" +
                    f.alpha_lo.str() + ", " + f.alpha_hi.str() + "]");
  }
  const TropicalValue beta = f.beta_at(alpha);

  const TropicalMatrix combined =
      mat_add(scalar_mul(inverse(alpha), prob.a()),
              scalar_mul(inverse(beta), outer(prob.p(), conjugate(prob.q()))));
  TropicalMatrix star = kleene_star(combined);

  TropicalVector u_lo = prob.g();
  TropicalVector u_hi = conjugate(vec_mat(conjugate(prob.h()), star));
  if (!leq(u_lo, u_hi)) {
    // Cannot happen for alpha on the frontier; guards corrupted inputs.
    throw Error(ErrorCode::InfeasibleBox, "empty parameter box at alpha = " + alpha.str());
  }
  return ParametricSolution{alpha, beta, std::move(star), std::move(u_lo), std::move(u_hi)};
}

inline ParametricSolution solution_at(const BiObjectiveProblem& prob,
                                      const TropicalValue& alpha) {
  return solution_at(prob, frontier(prob), alpha);
}

/// x = star u for a parameter u inside the box.
inline TropicalVector materialize(const ParametricSolution& sol, const TropicalVector& u) {
  if (u.dim() != sol.u_lo.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "parameter dimension mismatch");
  }
  if (!leq(sol.u_lo, u) || !leq(u, sol.u_hi)) {
    throw Error(ErrorCode::ParameterOutOfBox, "parameter u outside [u_lo, u_hi]");
  }
  return mat_vec(sol.star, u);
}

/// Objective values (x_conj A x, x_conj p q_conj x) of a regular vector.
inline std::pair<TropicalValue, TropicalValue> objectives(const BiObjectiveProblem& prob,
                                                          const TropicalVector& x) {
  if (x.dim() != prob.n()) {
    throw Error(ErrorCode::ShapeMismatch, "solution dimension mismatch");
  }
  if (!x.regular()) {
    throw Error(ErrorCode::IrregularVector, "objectives of a vector with zero components");
  }
  const TropicalVector xc = conjugate(x);
  const TropicalValue first = dot(xc, mat_vec(prob.a(), x));
  const TropicalValue second = otimes(dot(xc, prob.p()), dot(conjugate(prob.q()), x));
  return {first, second};
}

/// Evenly spaced alpha values across the frontier, endpoints included.
/// A single point yields one value.
inline std::vector<TropicalValue> sample_alphas(const ParetoFrontier& f, std::size_t points) {
  if (f.alpha_lo.is_zero()) {
    throw Error(ErrorCode::ZeroArgument, "frontier alpha range is unbounded below");
  }
  std::vector<TropicalValue> out;
  if (f.single_point() || points <= 1 || f.alpha_lo == f.alpha_hi) {
    out.push_back(f.alpha_lo);
    return out;
  }
  const Rat lo = f.alpha_lo.rat();
  const Rat width = f.alpha_hi.rat() - lo;
  const Rat denom(static_cast<std::int64_t>(points - 1));
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const Rat step = width * Rat(static_cast<std::int64_t>(i)) / denom;
    out.push_back(TropicalValue(lo + step));
  }
  return out;
}

}  // namespace tropt
