#include <doctest.h>

#include <algorithm>

#include "testutil.hpp"
#include "tropt/oracle.hpp"

using namespace tropt;
using tt::mat;
using tt::q;
using tt::v;
using tt::vec;
using tt::zz;

namespace {

bool front_contains(const SampledFront& front, const Rat& flow, const Rat& makespan) {
  return std::any_of(front.points.begin(), front.points.end(), [&](const SampledPoint& p) {
    return p.flow_time == flow && p.makespan == makespan;
  });
}

}  // namespace

TEST_CASE("grid enumeration finds the frontier endpoints of the first example") {
  const ValidatedInstance vi = validate(tt::example1());
  CHECK(default_grid_step(vi) == q("1/2"));
  const SampledFront front = grid_pareto(vi, q("1/2"));
  CHECK(front_contains(front, q("3/2"), q("5/2")));
  CHECK(front_contains(front, q("2"), q("2")));
  for (const auto& p : front.points) {
    CHECK(leq(vi.inst.release, p.start));
    CHECK(leq(p.start, *vi.inst.release_deadline));
  }
  // mutually non-dominated: strictly increasing flow, strictly decreasing makespan
  for (std::size_t i = 1; i < front.points.size(); ++i) {
    CHECK(front.points[i - 1].flow_time < front.points[i].flow_time);
    CHECK(front.points[i - 1].makespan > front.points[i].makespan);
  }
}

TEST_CASE("grid enumeration of an order-1 instance") {
  ProjectInstance p;
  p.lags = mat("2");
  p.release = vec("0");
  p.release_deadline = vec("0");
  const SampledFront front = grid_pareto(validate(p), q("1/2"));
  REQUIRE(front.points.size() == 1);
  CHECK(front.points[0].flow_time == q("2"));
  CHECK(front.points[0].makespan == q("2"));
}

TEST_CASE("grid caps are enforced") {
  const ValidatedInstance vi = validate(tt::example1());
  CHECK_THROWS_WITH_AS(grid_pareto(vi, q("1/2"), 10), doctest::Contains("GridTooLarge"), Error);
  CHECK_THROWS_AS(grid_pareto(vi, q("0")), Error);
}

TEST_CASE("frontier check passes on both worked examples") {
  {
    const ValidatedInstance vi = validate(tt::example1());
    const ParetoFrontier f = frontier(to_tropical(vi));
    const VerificationReport r = check_frontier(f, grid_pareto(vi, q("1/2")));
    CHECK(r.dominance_pass);
    CHECK(r.attainment_pass);
    CHECK(r.max_violation == q("0"));
    CHECK(r.pass());
  }
  {
    const ValidatedInstance vi = validate(tt::example2());
    const ParetoFrontier f = frontier(to_tropical(vi));
    const VerificationReport r = check_frontier(f, grid_pareto(vi, q("1/3")));
    CHECK(r.dominance_pass);
    CHECK(r.attainment_pass);
    CHECK(r.max_violation == q("0"));
  }
}

TEST_CASE("an injected frontier fault is detected") {
  const ValidatedInstance vi = validate(tt::example1());

  SUBCASE("curve lowered by 1/10: unattainable once the grid resolves it") {
    // a shift of delta is visible once step < delta / 2 on this instance
    ParetoFrontier f = frontier(to_tropical(vi));
    const TropicalValue shift = v("-1/10");
    f.nu = otimes(f.nu, shift);
    for (auto& c : f.curve_coeffs) c = otimes(c, shift);
    const VerificationReport r = check_frontier(f, grid_pareto(vi, q("1/32")));
    CHECK_FALSE(r.attainment_pass);
    CHECK_FALSE(r.pass());
  }

  SUBCASE("curve raised by 1/10: dominated by true frontier points") {
    ParetoFrontier f = frontier(to_tropical(vi));
    const TropicalValue shift = v("1/10");
    f.nu = otimes(f.nu, shift);
    for (auto& c : f.curve_coeffs) c = otimes(c, shift);
    const VerificationReport r = check_frontier(f, grid_pareto(vi, q("1/2")));
    CHECK_FALSE(r.dominance_pass);
    CHECK(r.max_violation == q("1/10"));
    CHECK_FALSE(r.pass());
  }
}

TEST_CASE("trace expansion identity on the worked data") {
  const TropicalMatrix a = tt::example1().lags;
  const TropicalVector p = TropicalVector::ones(3);
  const TropicalVector q_vec = conjugate(vec("1 2 2"));  // q_conj = 1^T A
  CHECK(check_trace_identity(a, p, q_vec));

  // all-zero matrix: only the k-fold products of q_conj p survive
  CHECK(check_trace_identity(TropicalMatrix::zeros(3, 3), p, q_vec));

  CHECK_THROWS_WITH_AS(
      check_trace_identity(TropicalMatrix::zeros(6, 6), TropicalVector::ones(6),
                           TropicalVector::ones(6)),
      doctest::Contains("OrderTooLarge"), Error);
}

TEST_CASE("trace expansion identity on random data") {
  tt::Rng rng(67);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(rng.range(1, 4));
    const TropicalMatrix a = rng.matrix(n, n, -3, 3, 0.3);
    const TropicalVector p = rng.vector(n, -3, 3, 0.2);
    const TropicalVector q_vec = rng.vector(n, -3, 3, 0.2);
    if (!p.nonzero() || !q_vec.nonzero()) continue;
    CHECK(check_trace_identity(a, p, q_vec));
  }
}

TEST_CASE("star expansion identity on the worked data") {
  // combined matrix of the first example at alpha = 3/2, beta = 5/2,
  // split as (alpha^-1 A) + (beta^-1 1)(1^T A)
  const TropicalMatrix a = scalar_mul(inverse(v("3/2")), tt::example1().lags);
  const TropicalVector p = scalar_mul(inverse(v("5/2")), TropicalVector::ones(3));
  const TropicalVector q_vec = conjugate(vec("1 2 2"));
  CHECK(check_star_identity(a, p, q_vec));

  // zero matrix with a contracting rank-one update
  const TropicalVector small_p = scalar_mul(v(-1), TropicalVector::ones(2));
  CHECK(check_star_identity(TropicalMatrix::zeros(2, 2), small_p, TropicalVector::ones(2)));

  // diverging combination is rejected
  CHECK_THROWS_WITH_AS(
      check_star_identity(mat("1 0; 0 1"), TropicalVector::ones(2), TropicalVector::ones(2)),
      doctest::Contains("StarDiverges"), Error);
}

TEST_CASE("star expansion identity on random scaled data") {
  tt::Rng rng(73);
  int done = 0;
  while (done < 200) {
    const auto n = static_cast<std::size_t>(rng.range(1, 4));
    TropicalMatrix a = rng.matrix(n, n, -3, 3, 0.3);
    TropicalVector p = rng.vector(n, -3, 3, 0.2);
    const TropicalVector q_vec = rng.vector(n, -3, 3, 0.2);
    if (!p.nonzero() || !q_vec.nonzero()) continue;
    // scale the combined matrix down to meet the star precondition
    const TropicalMatrix b = mat_add(a, outer(p, conjugate(q_vec)));
    const TropicalValue rho = spectral_radius(b);
    if (!rho.is_zero() && rho > TropicalValue::one()) {
      a = scalar_mul(inverse(rho), a);
      p = scalar_mul(inverse(rho), p);
    }
    CHECK(check_star_identity(a, p, q_vec));
    ++done;
  }
}

TEST_CASE("oracle and analytic frontier agree on random instances") {
  tt::Rng rng(79);
  int done = 0;
  while (done < 30) {
    const auto n = static_cast<std::size_t>(rng.range(1, 3));
    const ValidatedInstance vi = validate(rng.project_mixed(n, rng.chance(0.5)));
    const ParetoFrontier f = frontier(to_tropical(vi));
    const VerificationReport r = check_frontier(f, grid_pareto(vi, q("1/2")));
    CHECK(r.dominance_pass);
    CHECK(r.attainment_pass);
    CHECK(r.max_violation == q("0"));
    ++done;
  }
}

TEST_CASE("default step divides rational instance data") {
  ProjectInstance p;
  p.lags = mat("3/2 7/3 2; 1 1/2 2; -inf 1/6 1");
  p.release = vec("0 1/2 0");
  p.release_deadline = vec("3/2 2 5/2");
  const ValidatedInstance vi = validate(p);
  // denominators 2, 3, 6 -> lcm 6 -> step 1/12
  CHECK(default_grid_step(vi) == q("1/12"));
  const ParetoFrontier f = frontier(to_tropical(vi));
  const VerificationReport r = check_frontier(f, grid_pareto(vi, default_grid_step(vi)));
  CHECK(r.dominance_pass);
  CHECK(r.attainment_pass);
  CHECK(r.max_violation == q("0"));
}
