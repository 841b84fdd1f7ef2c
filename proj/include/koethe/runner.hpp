#pragma once
// Task runner: executes the tasks of a parsed instance file in declaration
// order and assembles a Report. A task that throws is recorded as an error
// entry; the run continues. Wherever the inputs lie inside the closed-form
// grammar, the exact symbolic verdict is attached next to the numeric one,
// and a disagreement between two decisive verdicts is flagged loudly.

#include <chrono>
#include <stdexcept>
#include <string>

#include "koethe/convolution.hpp"
#include "koethe/instance.hpp"
#include "koethe/operators.hpp"
#include "koethe/predicates.hpp"
#include "koethe/report.hpp"
#include "koethe/seminorms.hpp"
#include "koethe/symbolic.hpp"

namespace koethe {

namespace runner_detail {

template <class Fn>
void attach_symbolic(TaskResult& t, Fn&& oracle) {
  try {
    ExactVerdict ev = oracle();
    t.symbolic = SymbolicInfo{ev.status, ev.rule, ev.witness};
  } catch (const UnsupportedForm& e) {
    t.notes.push_back(std::string("symbolic oracle unavailable: ") + e.what());
  }
}

inline void flag_disagreement(TaskResult& t) {
  if (!t.symbolic) return;
  bool numeric_decisive = t.status != Status::inconclusive;
  bool symbolic_decisive = t.symbolic->status != Status::inconclusive;
  if (numeric_decisive && symbolic_decisive && t.status != t.symbolic->status)
    t.notes.push_back("ALARM: numeric and symbolic verdicts disagree");
}

inline void fill_theorem(TaskResult& t, const ContinuityReport& rep) {
  t.verdict = rep.certificate;
  t.condition_i = rep.condition_i;
  t.condition_ii = rep.condition_ii;
  t.preconditions = rep.preconditions;
  t.preconditions_ok = rep.preconditions_ok;
  t.agreement = rep.agreement;
  t.status = rep.certificate.status;
  for (const std::string& n : rep.notes) t.notes.push_back(n);
}

} // namespace runner_detail

inline TaskResult run_task(const InstanceFile& inst, const TaskSpec& spec, const Budget& budget) {
  using namespace runner_detail;
  TaskResult t;
  t.id = spec.id;
  t.op = spec.op;
  auto started = std::chrono::steady_clock::now();
  try {
    if (spec.op == "axioms") {
      const KoetheMatrix& A = inst.spaces.at(spec.space);
      t.verdict = check_koethe_axioms(A, A.max_rows(budget.N), A.max_cols(budget.k_max),
                                      spec.g_extras);
      t.status = t.verdict.status;
    } else if (spec.op == "nuclear") {
      const KoetheMatrix& A = inst.spaces.at(spec.space);
      t.verdict = check_nuclear(A, budget);
      t.status = t.verdict.status;
      attach_symbolic(t, [&] { return sym_nuclear(A); });
    } else if (spec.op == "g1") {
      const KoetheMatrix& B = inst.spaces.at(spec.space);
      t.verdict = check_g1(B, budget);
      t.status = t.verdict.status;
      attach_symbolic(t, [&] { return sym_g1(B); });
    } else if (spec.op == "ginf") {
      const KoetheMatrix& A = inst.spaces.at(spec.space);
      t.verdict = check_ginf(A, budget);
      t.status = t.verdict.status;
      attach_symbolic(t, [&] { return sym_ginf(A); });
    } else if (spec.op == "inclusion") {
      const KoetheMatrix& A = inst.spaces.at(spec.source);
      const KoetheMatrix& B = inst.spaces.at(spec.target);
      t.verdict = check_inclusion(A, B, budget);
      t.status = t.verdict.status;
      attach_symbolic(t, [&] { return sym_inclusion(A, B); });
    } else if (spec.op == "membership") {
      const ScalarSequence& x = inst.sequences.at(spec.sequence);
      const KoetheMatrix& B = inst.spaces.at(spec.space);
      t.verdict = check_membership(x, B, budget);
      t.status = t.verdict.status;
      attach_symbolic(t, [&] { return sym_membership(x, B); });
    } else if (spec.op == "dual") {
      const ScalarSequence& x = inst.sequences.at(spec.sequence);
      const KoetheMatrix& A = inst.spaces.at(spec.space);
      t.verdict = check_dual_membership(x, A, budget);
      t.status = t.verdict.status;
      attach_symbolic(t, [&] { return sym_dual_membership(x, A); });
    } else if (spec.op == "certify") {
      const ScalarSequence& x = inst.sequences.at(spec.sequence);
      const KoetheMatrix& A = inst.spaces.at(spec.space);
      CertifiedValue c = spec.norm == "sup" ? seminorm_sup(A, spec.k, x, budget)
                                            : seminorm_l1(A, spec.k, x, budget);
      t.value = c;
      t.value_k = spec.k;
      t.value_norm = spec.norm;
      t.status = c.divergent ? Status::fails
                             : (c.certified() ? Status::holds : Status::inconclusive);
    } else if (spec.op == "theorem1") {
      SpaceInstance si{inst.spaces.at(spec.a), inst.spaces.at(spec.b),
                       inst.sequences.at(spec.theta), Direction::forward};
      fill_theorem(t, verify_theorem1(si, budget));
      attach_symbolic(t, [&] { return sym_theorem(si.theta, si.A, si.B, false); });
    } else if (spec.op == "theorem2") {
      SpaceInstance si{inst.spaces.at(spec.a), inst.spaces.at(spec.b),
                       inst.sequences.at(spec.theta), Direction::transpose};
      ContinuityReport rep = verify_theorem2(si, budget);
      fill_theorem(t, rep);
      t.theta1_zero = rep.theta1_zero;
      attach_symbolic(t, [&] { return sym_theorem(si.theta, si.A, si.B, true); });
    } else if (spec.op == "normality") {
      Direction dir =
          spec.direction == "transpose" ? Direction::transpose : Direction::forward;
      SpaceInstance si_theta{inst.spaces.at(spec.a), inst.spaces.at(spec.b),
                             inst.sequences.at(spec.theta), dir};
      SpaceInstance si_eta = si_theta;
      si_eta.theta = inst.sequences.at(spec.eta);
      ContinuityReport eta_report = continuity_certificate(si_eta, budget);
      t.verdict = normality_transfer(si_theta, si_eta.theta, eta_report, budget);
      t.status = t.verdict.status;
      t.notes.push_back("majorant certificate: " +
                        std::string(to_string(eta_report.certificate.status)));
    } else if (spec.op == "convolve") {
      Prefix p = cauchy_product_prefix(inst.sequences.at(spec.x), inst.sequences.at(spec.y),
                                       spec.N);
      t.values = p.values;
      t.status = Status::holds;
    } else {
      throw std::invalid_argument("unknown op: " + spec.op);
    }
    flag_disagreement(t);
  } catch (const std::exception& e) {
    t.error = e.what();
  }
  t.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                        started)
                  .count();
  return t;
}

inline Report run_tasks(const InstanceFile& inst, const Budget& budget, bool timings = false) {
  Report r;
  r.instance_name = inst.name;
  r.instance_hash = fnv1a64(inst.raw_text);
  r.budgets = budget;
  r.include_timings = timings;
  for (const TaskSpec& spec : inst.tasks) r.tasks.push_back(run_task(inst, spec, budget));
  return r;
}

} // namespace koethe
