#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "distil/rational.hpp"
#include "distil/tensor.hpp"

// The iterated measure-and-filter distillation procedure on eight registers:
// both parties hold a two-pair block, measure one register pair each against
// {P, Q}, keep the residual block on a joint double-P outcome and start over
// otherwise. The surviving state stays in the alpha R(x)R + S(x)S family, so
// a run is tracked by the scalar alpha; the dense eight-register step is
// available for validation.

namespace distil {

struct ProtocolConfig {
  int d = 3;
  Rational epsilon = 1;       // must be positive for the iteration to make progress
  Rational target = 3;        // alpha threshold; the default matches the
                              // 1-distillability boundary of the family
  std::uint64_t master_seed = 0;
  long max_rounds = 1000000;  // safety cap; runs hitting it are flagged
  bool certify = true;        // dense witness certification of terminating runs
  bool record_trajectory = true;

  void validate() const;
};

struct IterationOutcome {
  bool success = false;
  double alpha_before = 0.0;
  double alpha_after = 0.0;  // grows by (1 + eps/(d+1)) on success, resets on failure
  double p_success = 0.0;
};

struct RunStats {
  long rounds = 0;            // iterations attempted
  long copies_consumed = 0;   // 1 initial fill + 1 per iteration + 1 per restart refill
  int k_needed = 0;           // consecutive successes required
  double final_alpha = 0.0;
  double final_witness_value = 0.0;  // (3 - alpha)/2 via the canonical vector, when certified
  bool terminated = false;
  bool certified = false;
  std::uint64_t seed = 0;
  std::vector<IterationOutcome> trajectory;
};

// Probability that both measurements land on P when the first block holds
// the alpha-state and the second a fresh copy of the epsilon family. Closed
// form from trace ratios of the unnormalized states; validated against the
// dense eight-register oracle before anything downstream trusts it.
double success_probability(double alpha, int d, double epsilon);

// Deterministic core of one iteration: succeed iff uniform_draw < p.
IterationOutcome iterate_once(double alpha, int d, double epsilon, double uniform_draw);

// Minimal k >= 0 with ((d+1+eps)/(d-1)) (1 + eps/(d+1))^k > target, exactly.
int k_threshold(int d, const Rational& epsilon, const Rational& target);

// Restart-on-failure loop until k consecutive successes or max_rounds.
// Deterministic given master_seed; the optional uniform source replaces the
// seeded stream (used to force branches in tests).
using UniformFn = std::function<double()>;
RunStats simulate_run(const ProtocolConfig& config, UniformFn uniform = {});

struct CopiesStats {
  double mean = 0.0;
  double standard_error = 0.0;
  long trials = 0;
  long unterminated = 0;
};

// Sample statistics of copies_consumed over independently seeded runs.
CopiesStats expected_copies(const ProtocolConfig& config, long trials, int workers = 1,
                            const std::function<UniformFn(long)>& uniform_factory = {});

// Builds the alpha-state, checks its partial transpose against the exact
// four-term I/P expansion entrywise (a construction bug trips an error), and
// returns the canonical witness value (3 - alpha)/2.
double certify_final(double alpha, int d);

// Dense validation path: unnormalized post-measurement state of
// (alpha-state (x) fresh copy) after the double-P outcome, on the four
// surviving registers.
DenseOperator protocol_step_dense(int d, double alpha, double epsilon);

}  // namespace distil
