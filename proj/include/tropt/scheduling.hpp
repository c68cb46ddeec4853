#pragma once

/**
 * @file scheduling.hpp
 * @brief Project scheduling layer.
 *
 * A project is a set of activities run in parallel under start-finish lags
 * a_ij (finish of i at least a_ij after start of j), release times g, and
 * either release deadlines h (upper bounds on starts) or finish deadlines f.
 * Activities finish as early as the lags allow, so finish times are y = A x
 * in max-plus arithmetic.
 *
 * The two deadline kinds map onto the bi-objective tropical problem with
 * p = 1 and q_conj = 1^T A; finish deadlines are folded into an equivalent
 * start bound h = (f_conj A)_conj first. The two objectives of the mapped
 * problem are exactly the maximum flow-time and the makespan.
 */

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tropt/errors.hpp"
#include "tropt/pareto.hpp"

namespace tropt {

struct ProjectInstance {
  std::string name;
  TropicalMatrix lags;              // a_ij, absent lags are the tropical zero
  TropicalVector release;           // g
  std::optional<TropicalVector> release_deadline;  // h
  std::optional<TropicalVector> deadline;          // f

  std::size_t n() const { return release.dim(); }
};

enum class DeadlineKind { Release, Finish };

/// Instance that passed validation, tagged with the applicable reduction.
struct ValidatedInstance {
  ProjectInstance inst;
  DeadlineKind kind;
  std::vector<std::size_t> negative_duration_warnings;  // indices with a_ii < 0

  std::size_t n() const { return inst.n(); }
};

namespace detail {

inline void require_finite(const TropicalVector& v, const char* field) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (v[i].is_zero()) {
      throw Error(ErrorCode::NonFiniteEntry,
                  std::string(field) + "[" + std::to_string(i) + "] must be finite");
    }
  }
}

}  // namespace detail

inline ValidatedInstance validate(const ProjectInstance& instance) {
  const std::size_t n = instance.n();
  if (n == 0) throw Error(ErrorCode::ShapeMismatch, "instance has no activities");
  if (instance.lags.rows() != n || instance.lags.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch, "lag matrix must be n x n");
  }
  if (instance.release_deadline.has_value() == instance.deadline.has_value()) {
    throw Error(ErrorCode::BothOrNeitherDeadlineKind,
                "exactly one of release_deadline and deadline must be given");
  }

  detail::require_finite(instance.release, "release");

  ValidatedInstance out{instance, DeadlineKind::Release, {}};
  for (std::size_t i = 0; i < n; ++i) {
    bool has_finite = false;
    for (std::size_t j = 0; j < n; ++j) has_finite = has_finite || !instance.lags.at(i, j).is_zero();
    if (!has_finite) {
      throw Error(ErrorCode::DanglingActivity,
                  "activity " + std::to_string(i) + " has no defined lag, its finish is unconstrained");
    }
    if (!instance.lags.at(i, i).is_zero() && instance.lags.at(i, i) < TropicalValue::one()) {
      out.negative_duration_warnings.push_back(i);
    }
  }

  if (instance.release_deadline) {
    const TropicalVector& h = *instance.release_deadline;
    if (h.dim() != n) throw Error(ErrorCode::ShapeMismatch, "release_deadline must have length n");
    detail::require_finite(h, "release_deadline");
    for (std::size_t i = 0; i < n; ++i) {
      if (instance.release[i] > h[i]) {
        throw Error(ErrorCode::InfeasibleReleaseWindow,
                    "release[" + std::to_string(i) + "] = " + instance.release[i].str() +
                        " exceeds release_deadline[" + std::to_string(i) + "] = " + h[i].str());
      }
    }
    out.kind = DeadlineKind::Release;
  } else {
    const TropicalVector& f = *instance.deadline;
    if (f.dim() != n) throw Error(ErrorCode::ShapeMismatch, "deadline must have length n");
    detail::require_finite(f, "deadline");
    const TropicalVector earliest = mat_vec(instance.lags, instance.release);
    for (std::size_t i = 0; i < n; ++i) {
      if (earliest[i] > f[i]) {
        throw Error(ErrorCode::InfeasibleDeadline,
                    "earliest finish of activity " + std::to_string(i) + " is " +
                        earliest[i].str() + ", after deadline " + f[i].str());
      }
    }
    out.kind = DeadlineKind::Finish;
  }
  return out;
}

namespace detail {

inline TropicalVector objective_q(const TropicalMatrix& a) {
  // q with q_conj = 1^T A (column maxima of A).
  const TropicalVector col_max = vec_mat(TropicalVector::ones(a.rows()), a);
  std::vector<TropicalValue> q(col_max.dim());
  for (std::size_t j = 0; j < col_max.dim(); ++j) {
    q[j] = col_max[j].is_zero() ? TropicalValue::zero() : inverse(col_max[j]);
  }
  return TropicalVector(std::move(q));
}

}  // namespace detail

/// Release-deadline reduction: the start box is [g, h] as given.
inline BiObjectiveProblem to_tropical_c1(const ValidatedInstance& vi) {
  if (vi.kind != DeadlineKind::Release) {
    throw Error(ErrorCode::WrongDeadlineKind, "instance carries a finish deadline");
  }
  const TropicalMatrix& a = vi.inst.lags;
  return BiObjectiveProblem(a, TropicalVector::ones(vi.n()), detail::objective_q(a),
                            vi.inst.release, *vi.inst.release_deadline);
}

/// Finish-deadline reduction: A x <= f is replaced by the equivalent start
/// bound x <= (f_conj A)_conj, which requires a column-regular lag matrix.
inline BiObjectiveProblem to_tropical_c2(const ValidatedInstance& vi) {
  if (vi.kind != DeadlineKind::Finish) {
    throw Error(ErrorCode::WrongDeadlineKind, "instance carries a release deadline");
  }
  const TropicalMatrix& a = vi.inst.lags;
  const TropicalVector& f = *vi.inst.deadline;
  if (!f.regular()) {
    throw Error(ErrorCode::IrregularDeadline, "deadline vector has zero components");
  }
  if (!a.column_regular()) {
    throw Error(ErrorCode::NotColumnRegular,
                "some activity start constrains no finish; the deadline bound is undefined");
  }
  const TropicalVector h = solve_upper(a, f);
  return BiObjectiveProblem(a, TropicalVector::ones(vi.n()), detail::objective_q(a),
                            vi.inst.release, h);
}

inline BiObjectiveProblem to_tropical(const ValidatedInstance& vi) {
  return vi.kind == DeadlineKind::Release ? to_tropical_c1(vi) : to_tropical_c2(vi);
}

/// Effective upper bound on start times: h, or the start bound induced by f.
inline TropicalVector start_upper_bound(const ValidatedInstance& vi) {
  if (vi.kind == DeadlineKind::Release) return *vi.inst.release_deadline;
  return solve_upper(vi.inst.lags, *vi.inst.deadline);
}

struct Schedule {
  TropicalVector start;
  TropicalVector finish;
  Rat max_flow_time;
  Rat makespan;
};

/// Evaluates a start-time vector under the earliest-finish rule y = A x and
/// reports both objectives in ordinary arithmetic.
inline Schedule evaluate_schedule(const ValidatedInstance& vi, const TropicalVector& x) {
  const std::size_t n = vi.n();
  if (x.dim() != n) throw Error(ErrorCode::ShapeMismatch, "start vector must have length n");
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < vi.inst.release[i]) {
      throw Error(ErrorCode::StartTimeOutOfWindow,
                  "start[" + std::to_string(i) + "] is before release time");
    }
    if (vi.kind == DeadlineKind::Release && x[i] > (*vi.inst.release_deadline)[i]) {
      throw Error(ErrorCode::StartTimeOutOfWindow,
                  "start[" + std::to_string(i) + "] is after the release deadline");
    }
  }

  TropicalVector y = mat_vec(vi.inst.lags, x);
  if (vi.kind == DeadlineKind::Finish) {
    for (std::size_t i = 0; i < n; ++i) {
      if (y[i] > (*vi.inst.deadline)[i]) {
        throw Error(ErrorCode::FinishAfterDeadline,
                    "activity " + std::to_string(i) + " finishes at " + y[i].str() +
                        ", after its deadline");
      }
    }
  }

  Rat flow = y[0].rat() - x[0].rat();
  Rat max_finish = y[0].rat();
  Rat min_start = x[0].rat();
  for (std::size_t i = 1; i < n; ++i) {
    const Rat fi = y[i].rat() - x[i].rat();
    if (fi > flow) flow = fi;
    if (y[i].rat() > max_finish) max_finish = y[i].rat();
    if (x[i].rat() < min_start) min_start = x[i].rat();
  }
  return Schedule{x, std::move(y), flow, max_finish - min_start};
}

// ---------------------------------------------------------------------------
// Project JSON format
// ---------------------------------------------------------------------------
//
// {
//   "name": "optional label",
//   "n": 3,
//   "lags": [[1, 2, 2], [1, 1, 2], [null, 0, 1]],   // null = no lag
//   "release": [0, 0, 0],
//   "release_deadline": [1, 2, 2]                    // or "deadline": [...]
// }
//
// Entries are numbers or strings: "3", "1.5", "3/2", "-inf".

namespace detail {

inline TropicalValue entry_from_json(const nlohmann::json& v, const std::string& where) {
  if (v.is_null()) return TropicalValue::zero();
  if (v.is_string()) {
    try {
      return TropicalValue::parse(v.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return TropicalValue(Rat(v.get<std::int64_t>()));
  if (v.is_number_float()) return TropicalValue(Rat::from_double(v.get<double>()));
  throw Error(ErrorCode::ParseError, where + ": expected number, string or null");
}

inline TropicalVector vector_from_json(const nlohmann::json& v, std::size_t n,
                                       const std::string& where) {
  if (!v.is_array() || v.size() != n) {
    throw Error(ErrorCode::ParseError, where + ": expected an array of length " + std::to_string(n));
  }
  std::vector<TropicalValue> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(entry_from_json(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return TropicalVector(std::move(out));
}

}  // namespace detail

inline ProjectInstance parse_project_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "project file must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw Error(ErrorCode::ParseError, "missing integer field 'n'");
  }
  const auto n_signed = doc["n"].get<std::int64_t>();
  if (n_signed < 1) throw Error(ErrorCode::ParseError, "'n' must be at least 1");
  const auto n = static_cast<std::size_t>(n_signed);

  if (!doc.contains("lags") || !doc["lags"].is_array() || doc["lags"].size() != n) {
    throw Error(ErrorCode::ParseError, "'lags' must be an n x n array");
  }
  std::vector<TropicalValue> lag_entries;
  lag_entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = doc["lags"][i];
    if (!row.is_array() || row.size() != n) {
      throw Error(ErrorCode::ParseError, "'lags' row " + std::to_string(i) + " must have length n");
    }
    for (std::size_t j = 0; j < n; ++j) {
      lag_entries.push_back(detail::entry_from_json(
          row[j], "lags[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    }
  }

  if (!doc.contains("release")) throw Error(ErrorCode::ParseError, "missing field 'release'");

  ProjectInstance inst{
      doc.value("name", std::string()),
      TropicalMatrix(n, n, std::move(lag_entries)),
      detail::vector_from_json(doc["release"], n, "release"),
      std::nullopt,
      std::nullopt,
  };
  if (doc.contains("release_deadline")) {
    inst.release_deadline = detail::vector_from_json(doc["release_deadline"], n, "release_deadline");
  }
  if (doc.contains("deadline")) {
    inst.deadline = detail::vector_from_json(doc["deadline"], n, "deadline");
  }
  return inst;
}

inline ProjectInstance load_project_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "invalid JSON in '" + path + "': " + e.what());
  }
  ProjectInstance inst = parse_project_json(doc);
  if (inst.name.empty()) inst.name = path;
  return inst;
}

}  // namespace tropt
