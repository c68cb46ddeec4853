// tropt: tropical bi-objective project scheduling from the command line.
//
//   tropt frontier project.json [--points N] [--csv out.csv]
//   tropt solve    project.json --alpha 3/2 [--u lo|hi|random] [--seed S]
//   tropt sample   project.json --alpha 3/2 [--seed S]
//   tropt verify   project.json [--step 1/2] [--max-n 4] [--cap N]
//
// Exit codes: 0 ok, 1 failure, 2 invalid instance, 3 alpha out of range,
// 4 oracle limit exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tropt/oracle.hpp"

namespace {

using nlohmann::json;
using namespace tropt;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::AlphaOutOfRange:
      return 3;
    case ErrorCode::GridTooLarge:
    case ErrorCode::OrderTooLarge:
      return 4;
    case ErrorCode::ParseError:
    case ErrorCode::ZeroDenominator:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::NonFiniteEntry:
    case ErrorCode::InfeasibleReleaseWindow:
    case ErrorCode::InfeasibleDeadline:
    case ErrorCode::DanglingActivity:
    case ErrorCode::BothOrNeitherDeadlineKind:
    case ErrorCode::WrongDeadlineKind:
    case ErrorCode::IrregularDeadline:
    case ErrorCode::NotColumnRegular:
    case ErrorCode::InfeasibleBox:
    case ErrorCode::DegenerateObjective:
    case ErrorCode::AllZeroMatrix:
    case ErrorCode::ZeroVector:
      return 2;
    default:
      return 1;
  }
}

std::string curve_text(const ParetoFrontier& f) {
  std::vector<std::string> terms;
  for (std::size_t k = 1; k <= f.curve_coeffs.size(); ++k) {
    const TropicalValue& c = f.curve_coeffs[k - 1];
    if (c.is_zero()) continue;
    std::string t = c.rat().str() + " - ";
    if (k > 1) t += std::to_string(k) + "*";
    t += "alpha";
    terms.push_back(std::move(t));
  }
  if (terms.empty()) return f.nu.str();
  if (terms.size() == 1) return terms.front();
  std::string out = "max(";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ", ";
    out += terms[i];
  }
  out += ")";
  return out;
}

json curve_json(const ParetoFrontier& f) {
  json terms = json::array();
  for (std::size_t k = 1; k <= f.curve_coeffs.size(); ++k) {
    const TropicalValue& c = f.curve_coeffs[k - 1];
    if (c.is_zero()) continue;
    terms.push_back({{"power", k}, {"coeff", c.rat().str()}});
  }
  return terms;
}

json vector_json(const TropicalVector& v) {
  json out = json::array();
  for (const auto& e : v.entries()) out.push_back(e.str());
  return out;
}

std::string vector_text(const TropicalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ", ";
    out += v[i].str();
  }
  out += ")";
  return out;
}

void write_csv(const std::string& path, const ParetoFrontier& f, std::size_t points) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << "alpha,beta,flow_time,makespan\n";
  for (const auto& alpha : sample_alphas(f, points)) {
    const Rat a = alpha.rat();
    const Rat b = f.beta_at(alpha).rat();
    out << a.decimal() << "," << b.decimal() << "," << a.decimal() << "," << b.decimal() << "\n";
  }
}

// Deterministic per-component parameter draw, independent of the platform's
// distribution implementations.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

TropicalVector draw_u(const ParametricSolution& sol, const std::string& mode, std::uint64_t seed) {
  if (mode == "lo") return sol.u_lo;
  if (mode == "hi") return sol.u_hi;
  std::vector<TropicalValue> u(sol.u_lo.dim());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Rat lo = sol.u_lo[i].rat();
    const Rat hi = sol.u_hi[i].rat();
    const auto ticks = static_cast<std::int64_t>(splitmix64(seed + i) & 0xFFFF);
    u[i] = TropicalValue(lo + (hi - lo) * Rat(ticks, 65536));
  }
  return TropicalVector(std::move(u));
}

struct Options {
  std::string file;
  std::string format;  // "", "text" or "json"
  std::size_t points = 100;
  std::string csv;
  std::string alpha;
  std::string u_mode = "lo";
  std::uint64_t seed = 0;
  std::string step;
  std::size_t max_n = 4;
  std::uint64_t cap = 10'000'000;
  std::string corrupt_beta;
};

int run_frontier(const Options& opt) {
  const ValidatedInstance vi = validate(load_project_file(opt.file));
  const ParetoFrontier f = frontier(to_tropical(vi));
  const bool as_json = opt.format == "json";

  if (as_json) {
    json doc;
    doc["kind"] = f.single_point() ? "point" : "segment";
    if (f.single_point()) {
      doc["alpha"] = f.alpha_lo.str();
      doc["beta"] = f.nu.str();
    } else {
      doc["alpha_lo"] = f.alpha_lo.str();
      doc["alpha_hi"] = f.alpha_hi.str();
    }
    doc["nu"] = f.nu.str();
    doc["beta_terms"] = curve_json(f);
    std::cout << doc.dump() << "\n";
  } else if (f.single_point()) {
    std::cout << "point: (" << f.alpha_lo.str() << ", " << f.nu.str() << ")\n";
  } else {
    std::cout << "segment: alpha in [" << f.alpha_lo.str() << ", " << f.alpha_hi.str()
              << "], beta = " << curve_text(f) << "\n";
  }

  if (!opt.csv.empty()) write_csv(opt.csv, f, opt.points);
  return 0;
}

int run_solve(const Options& opt, bool force_random) {
  const ValidatedInstance vi = validate(load_project_file(opt.file));
  const BiObjectiveProblem prob = to_tropical(vi);
  const ParetoFrontier f = frontier(prob);
  const TropicalValue alpha = TropicalValue(Rat::parse(opt.alpha));
  const ParametricSolution sol = solution_at(prob, f, alpha);

  const std::string mode = force_random ? "random" : opt.u_mode;
  const TropicalVector u = draw_u(sol, mode, opt.seed);
  const TropicalVector x = materialize(sol, u);
  const Schedule sched = evaluate_schedule(vi, x);

  if (opt.format == "json") {
    json doc;
    doc["alpha"] = sol.alpha.str();
    doc["beta"] = sol.beta.str();
    doc["u"] = vector_json(u);
    doc["x"] = vector_json(x);
    doc["y"] = vector_json(sched.finish);
    doc["flow_time"] = sched.max_flow_time.str();
    doc["makespan"] = sched.makespan.str();
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << "alpha = " << sol.alpha.str() << "\n"
              << "beta = " << sol.beta.str() << "\n"
              << "x = " << vector_text(x) << "\n"
              << "y = " << vector_text(sched.finish) << "\n"
              << "flow_time = " << sched.max_flow_time.str() << "\n"
              << "makespan = " << sched.makespan.str() << "\n";
  }
  return 0;
}

int run_verify(const Options& opt) {
  const ValidatedInstance vi = validate(load_project_file(opt.file));
  if (vi.n() > opt.max_n) {
    throw Error(ErrorCode::OrderTooLarge,
                "instance order " + std::to_string(vi.n()) + " exceeds the oracle cap " +
                    std::to_string(opt.max_n));
  }
  const BiObjectiveProblem prob = to_tropical(vi);
  const ParetoFrontier f = frontier(prob);

  ParetoFrontier checked = f;
  if (!opt.corrupt_beta.empty()) {
    // Test hook: shift the analytic curve down to prove the oracle notices.
    const TropicalValue shift = TropicalValue(-Rat::parse(opt.corrupt_beta));
    checked.nu = otimes(checked.nu, shift);
    for (auto& c : checked.curve_coeffs) c = otimes(c, shift);
  }

  const Rat step = opt.step.empty() ? default_grid_step(vi) : Rat::parse(opt.step);
  const SampledFront sampled = grid_pareto(vi, step, opt.cap);
  VerificationReport report = check_frontier(checked, sampled);
  report.instance_id = vi.inst.name;

  report.trace_identity_pass = check_trace_identity(prob.a(), prob.p(), prob.q());
  // The star identity needs Tr(A + p q_conj) <= 1; the frontier scaling at
  // alpha_lo provides exactly that.
  const TropicalValue alpha0 = f.alpha_lo;
  const TropicalValue beta0 = f.beta_at(alpha0);
  report.star_identity_pass =
      check_star_identity(scalar_mul(inverse(alpha0), prob.a()),
                          scalar_mul(inverse(beta0), prob.p()), prob.q());

  if (opt.format == "text") {
    std::cout << "dominance: " << (report.dominance_pass ? "pass" : "fail") << "\n"
              << "attainment: " << (report.attainment_pass ? "pass" : "fail") << "\n"
              << "trace_identity: " << (*report.trace_identity_pass ? "pass" : "fail") << "\n"
              << "star_identity: " << (*report.star_identity_pass ? "pass" : "fail") << "\n"
              << "max_violation = " << report.max_violation.str() << "\n"
              << "verdict: " << (report.pass() ? "pass" : "fail") << "\n";
  } else {
    json doc;
    doc["instance"] = report.instance_id;
    doc["step"] = step.str();
    doc["non_dominated_points"] = sampled.points.size();
    doc["max_dominance_violation"] = report.max_violation.str();
    doc["checks"] = {{"dominance", report.dominance_pass},
                     {"attainment", report.attainment_pass},
                     {"trace_identity", *report.trace_identity_pass},
                     {"star_identity", *report.star_identity_pass}};
    doc["pass"] = report.pass();
    std::cout << doc.dump() << "\n";
  }
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Pareto frontiers for bi-objective time-constrained project scheduling"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* cmd_frontier = app.add_subcommand("frontier", "Compute the Pareto frontier");
  cmd_frontier->add_option("file", opt.file, "Project JSON file")->required();
  cmd_frontier->add_option("--points", opt.points, "Number of sampled alpha values for CSV");
  cmd_frontier->add_option("--csv", opt.csv, "Write sampled frontier points to this CSV file");

  auto* cmd_solve = app.add_subcommand("solve", "Materialize a schedule at a frontier alpha");
  cmd_solve->add_option("file", opt.file, "Project JSON file")->required();
  cmd_solve->add_option("--alpha", opt.alpha, "Frontier alpha (max flow-time)")->required();
  cmd_solve->add_option("--u", opt.u_mode, "Parameter choice: lo, hi or random")
      ->check(CLI::IsMember({"lo", "hi", "random"}));
  cmd_solve->add_option("--seed", opt.seed, "Seed for --u random");

  auto* cmd_sample = app.add_subcommand("sample", "Solve with a seeded random parameter");
  cmd_sample->add_option("file", opt.file, "Project JSON file")->required();
  cmd_sample->add_option("--alpha", opt.alpha, "Frontier alpha (max flow-time)")->required();
  cmd_sample->add_option("--seed", opt.seed, "Random seed");

  auto* cmd_verify = app.add_subcommand("verify", "Check the frontier against the grid oracle");
  cmd_verify->add_option("file", opt.file, "Project JSON file")->required();
  cmd_verify->add_option("--step", opt.step, "Grid step (default: half the data resolution)");
  cmd_verify->add_option("--max-n", opt.max_n, "Largest instance order the oracle accepts");
  cmd_verify->add_option("--cap", opt.cap, "Grid point budget");
  cmd_verify->add_option("--corrupt-beta", opt.corrupt_beta, "Fault-injection test hook")
      ->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_frontier->parsed()) {
      if (opt.format.empty()) opt.format = "text";
      return run_frontier(opt);
    }
    if (cmd_solve->parsed()) {
      if (opt.format.empty()) opt.format = "text";
      return run_solve(opt, false);
    }
    if (cmd_sample->parsed()) {
      if (opt.format.empty()) opt.format = "text";
      return run_solve(opt, true);
    }
    if (opt.format.empty()) opt.format = "json";
    return run_verify(opt);
  } catch (const tropt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
