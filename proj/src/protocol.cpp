#include "distil/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "distil/rng.hpp"
#include "distil/states.hpp"
#include "distil/witness.hpp"
#include "parallel.hpp"

namespace distil {

void ProtocolConfig::validate() const {
  if (d < 3) throw std::invalid_argument("ProtocolConfig: d must be at least 3");
  if (epsilon <= 0) throw std::invalid_argument("ProtocolConfig: epsilon must be positive");
  if (target <= 0) throw std::invalid_argument("ProtocolConfig: target must be positive");
  if (max_rounds < 1) throw std::invalid_argument("ProtocolConfig: max_rounds must be positive");
}

double success_probability(double alpha, int d, double epsilon) {
  if (alpha < 0 || epsilon < 0) throw std::invalid_argument("success_probability: alpha and epsilon must be nonnegative");
  const double tr2 = std::pow(0.5 * d * (d - 1), 2);  // tr(R (x) R)
  const double ts2 = std::pow(0.5 * d * (d + 1), 2);  // tr(S (x) S)
  const double beta = (d + 1 + epsilon) / (d - 1);
  const double kept = (d + 1.0) / (2.0 * d) * (alpha * (1.0 + epsilon / (d + 1)) * tr2 + ts2);
  const double total = (alpha * tr2 + ts2) * (beta * tr2 + ts2);
  return kept / total;
}

IterationOutcome iterate_once(double alpha, int d, double epsilon, double uniform_draw) {
  IterationOutcome out;
  out.alpha_before = alpha;
  out.p_success = success_probability(alpha, d, epsilon);
  out.success = uniform_draw < out.p_success;
  out.alpha_after = out.success ? alpha * (1.0 + epsilon / (d + 1)) : (d + 1 + epsilon) / (d - 1.0);
  return out;
}

int k_threshold(int d, const Rational& epsilon, const Rational& target) {
  if (d < 3) throw std::invalid_argument("k_threshold: d must be at least 3");
  if (epsilon <= 0) throw std::invalid_argument("k_threshold: epsilon must be positive");
  const Rational growth = (Rational(d) + 1 + epsilon) / (Rational(d) + 1);  // 1 + eps/(d+1)
  Rational value = (Rational(d) + 1 + epsilon) / (Rational(d) - 1);
  int k = 0;
  while (value <= target) {
    value *= growth;
    ++k;
    if (k > 100000000) throw std::runtime_error("k_threshold: did not cross the target");
  }
  return k;
}

RunStats simulate_run(const ProtocolConfig& config, UniformFn uniform) {
  config.validate();

  RunStats stats;
  stats.seed = config.master_seed;
  stats.k_needed = k_threshold(config.d, config.epsilon, config.target);

  SplitMix64 rng(config.master_seed);
  if (!uniform) uniform = [&rng] { return rng.next_double(); };

  const double epsilon = to_double(config.epsilon);
  const double beta = to_double((Rational(config.d) + 1 + config.epsilon) / (Rational(config.d) - 1));

  double alpha = beta;
  stats.copies_consumed = 1;  // initial fill of the first block
  int streak = 0;

  if (stats.k_needed == 0) {
    stats.terminated = true;
  } else {
    bool pending_restart = false;
    while (stats.rounds < config.max_rounds) {
      if (pending_restart) {
        ++stats.copies_consumed;  // refill of the first block after a failure
        pending_restart = false;
      }
      ++stats.copies_consumed;  // fresh copy in the second block
      ++stats.rounds;

      const IterationOutcome outcome = iterate_once(alpha, config.d, epsilon, uniform());
      if (config.record_trajectory) stats.trajectory.push_back(outcome);
      alpha = outcome.alpha_after;
      if (outcome.success) {
        if (++streak == stats.k_needed) {
          stats.terminated = true;
          break;
        }
      } else {
        streak = 0;
        pending_restart = true;
      }
    }
  }

  stats.final_alpha = alpha;
  if (stats.terminated && config.certify) {
    stats.final_witness_value = certify_final(alpha, config.d);
    stats.certified = true;
  }
  return stats;
}

CopiesStats expected_copies(const ProtocolConfig& config, long trials, int workers,
                            const std::function<UniformFn(long)>& uniform_factory) {
  if (trials < 1) throw std::invalid_argument("expected_copies: trials must be at least 1");

  std::vector<double> copies(static_cast<std::size_t>(trials), 0.0);
  std::vector<char> unterminated(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, workers, [&](long t) {
    ProtocolConfig run_config = config;
    run_config.master_seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(t));
    run_config.record_trajectory = false;
    run_config.certify = false;
    const RunStats stats = simulate_run(run_config, uniform_factory ? uniform_factory(t) : UniformFn{});
    copies[static_cast<std::size_t>(t)] = static_cast<double>(stats.copies_consumed);
    unterminated[static_cast<std::size_t>(t)] = stats.terminated ? 0 : 1;
  });

  CopiesStats out;
  out.trials = trials;
  for (long t = 0; t < trials; ++t) {
    out.mean += copies[static_cast<std::size_t>(t)];
    out.unterminated += unterminated[static_cast<std::size_t>(t)];
  }
  out.mean /= static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (long t = 0; t < trials; ++t) ss += (copies[static_cast<std::size_t>(t)] - out.mean) * (copies[static_cast<std::size_t>(t)] - out.mean);
    out.standard_error = std::sqrt(ss / (static_cast<double>(trials) - 1.0)) / std::sqrt(static_cast<double>(trials));
  }
  return out;
}

double certify_final(double alpha, int d) {
  if (alpha < 0) throw std::invalid_argument("certify_final: alpha must be nonnegative");
  const DenseOperator state = alpha_state<double>(d, alpha);
  const DenseOperator transposed = partial_transpose(state, Party::Alice);

  // Exact expansion of the transposed family over identities and the
  // maximally entangled projector on each pair.
  const BasicProjectorSet<double> first = projector_set<double>(d, 1);
  const BasicProjectorSet<double> second = projector_set<double>(d, 3);
  const DenseOperator eye1 = identity_operator<double>(first.P.layout);
  const DenseOperator eye2 = identity_operator<double>(second.P.layout);
  Eigen::MatrixXcd expansion = ((alpha + 1) / 4.0) * tensor(eye1, eye2).mat;
  expansion -= ((alpha - 1) * d / 4.0) * tensor(eye1, second.P).mat;
  expansion -= ((alpha - 1) * d / 4.0) * tensor(first.P, eye2).mat;
  expansion += ((alpha + 1) * d * d / 4.0) * tensor(first.P, second.P).mat;

  const double mismatch = (transposed.mat - expansion).cwiseAbs().maxCoeff();
  if (mismatch > 1e-12)
    throw std::logic_error("certify_final: transposed state deviates from its exact expansion by " + std::to_string(mismatch));

  const std::complex<double> value = expectation(transposed, canonical_phi(d));
  if (std::abs(value.imag()) > 1e-10) throw std::logic_error("certify_final: witness value has an imaginary residue");
  return value.real();
}

DenseOperator protocol_step_dense(int d, double alpha, double epsilon) {
  // Both blocks on registers 1..8; measurement projector P (x) P on Alice's
  // (1,5) and Bob's (2,6).
  const DenseOperator first_block = alpha_state<double>(d, alpha);
  DenseOperator fresh = alpha_state<double>(d, (d + 1 + epsilon) / (d - 1.0));
  fresh = relabeled(fresh, {5, 6, 7, 8});
  const DenseOperator joint = tensor(first_block, fresh);

  const Eigen::MatrixXcd p_matrix = outer(max_entangled<double>(d)).mat;
  const DenseOperator p_alice(p_matrix, RegisterLayout({{1, d, Party::Alice}, {5, d, Party::Alice}}));
  const DenseOperator p_bob(p_matrix, RegisterLayout({{2, d, Party::Bob}, {6, d, Party::Bob}}));
  const DenseOperator projector = tensor(p_alice, p_bob);  // registers (1,5,2,6)

  return apply_and_trace_out(joint, projector);
}

}  // namespace distil
