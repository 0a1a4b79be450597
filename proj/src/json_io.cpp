#include "distil/json_io.hpp"

namespace distil {

using nlohmann::json;

json layout_to_json(const RegisterLayout& layout) {
  json regs = json::array();
  for (const Register& r : layout.registers())
    regs.push_back({{"id", r.id}, {"dim", r.dim}, {"party", party_name(r.party)}});
  return regs;
}

RegisterLayout layout_from_json(const json& j) {
  std::vector<Register> regs;
  for (const json& r : j) {
    Register reg;
    reg.id = r.at("id").get<int>();
    reg.dim = r.at("dim").get<int>();
    const std::string party = r.at("party").get<std::string>();
    if (party == "Alice")
      reg.party = Party::Alice;
    else if (party == "Bob")
      reg.party = Party::Bob;
    else
      throw std::invalid_argument("layout_from_json: unknown party '" + party + "'");
    regs.push_back(reg);
  }
  return RegisterLayout(std::move(regs));
}

json operator_to_json(const DenseOperator& op) {
  json entries = json::array();
  for (long i = 0; i < op.dim(); ++i)
    for (long j = 0; j < op.dim(); ++j) entries.push_back({op.mat(i, j).real(), op.mat(i, j).imag()});
  return json{{"schema", kSchemaVersion}, {"layout", layout_to_json(op.layout)}, {"entries", entries}};
}

DenseOperator operator_from_json(const json& j) {
  const RegisterLayout layout = layout_from_json(j.at("layout"));
  const long n = layout.dim();
  const json& entries = j.at("entries");
  if (static_cast<long>(entries.size()) != n * n) throw std::invalid_argument("operator_from_json: entry count mismatch");
  Eigen::MatrixXcd mat(n, n);
  long idx = 0;
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) {
      const json& e = entries.at(static_cast<std::size_t>(idx++));
      mat(r, c) = std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return DenseOperator(std::move(mat), layout);
}

json vector_to_json(const PureVector& v) {
  json entries = json::array();
  for (long i = 0; i < v.dim(); ++i) entries.push_back({v.amp(i).real(), v.amp(i).imag()});
  return json{{"schema", kSchemaVersion}, {"layout", layout_to_json(v.layout)}, {"amplitudes", entries}, {"norm", v.norm()}};
}

json rational_to_json(const Rational& r) {
  return json{{"rational", to_fraction_string(r)}, {"value", to_double(r)}, {"exact", true}};
}

json coeffs_to_json(const NCopyCoeffs& coeffs) {
  json out = json::array();
  const int len = 2 * coeffs.n;
  for (long x = 0; x < (1L << len); ++x) {
    std::string bits(static_cast<std::size_t>(len), '0');
    for (int k = 0; k < len; ++k)
      if ((x >> (len - 1 - k)) & 1) bits[static_cast<std::size_t>(k)] = '1';
    const Rational alpha = coeffs.alpha_of(word_from_bits(bits));
    out.push_back({{"x", bits}, {"num", numerator(alpha).str()}, {"den", denominator(alpha).str()}});
  }
  return out;
}

json lemma1_report_to_json(const Lemma1Report& report) {
  json out;
  out["all_p_word_equals_mu_pow_n"] = {{"pass", report.all_p_word_ok}, {"exact", true}};
  out["all_q_word_equals_lambda_pow_n"] = {{"pass", report.all_q_word_ok}, {"exact", true}};
  out["mixed_pair_words_within_bound"] = {{"pass", report.mixed_bound_ok},
                                          {"exact", true},
                                          {"bound", to_fraction_string(report.bound)},
                                          {"words", report.mixed_words},
                                          {"worst_abs", to_fraction_string(report.worst_mixed_abs)}};
  out["block_words_exact_products"] = {{"pass", report.block_exact_ok}, {"exact", true}, {"words", report.block_words}};
  out["no_coefficient_below_minus_bound"] = {{"pass", report.negative_bound_ok},
                                             {"exact", true},
                                             {"min_alpha", to_fraction_string(report.min_alpha)}};
  out["block_word_exceeds_eps_bound"] = report.block_word_exceeds_bound;
  if (report.block_word_exceeds_bound) out["first_exceeding_word"] = word_bits(report.first_exceeding_word);
  out["pass"] = report.ok();
  return out;
}

json witness_result_to_json(const WitnessResult& result, bool include_certificate) {
  json out;
  out["best_value"] = result.best_value;
  out["tol"] = 1e-10;  // best_value reproduces the quadratic form at this tolerance
  out["restarts_used"] = result.restarts_used;
  out["converged"] = result.converged;
  out["iterations"] = result.value_history.size();
  out["seed"] = result.seed;
  out["certificate_found"] = result.best_value < 0.0;
  if (result.best_value < 0.0) {
    out["interpretation"] = "negative value: the vector certifies 1-distillability";
    if (include_certificate) out["certificate"] = vector_to_json(result.best_vector);
  } else {
    out["interpretation"] = "no certificate found: heuristic evidence only, not a proof of non-distillability";
  }
  return out;
}

json run_stats_to_json(const RunStats& stats, bool include_trajectory) {
  json out;
  out["rounds"] = stats.rounds;
  out["copies_consumed"] = stats.copies_consumed;
  out["k_needed"] = stats.k_needed;
  out["final_alpha"] = stats.final_alpha;
  out["terminated"] = stats.terminated;
  out["certified"] = stats.certified;
  if (stats.certified) out["final_witness_value"] = {{"value", stats.final_witness_value}, {"tol", 1e-10}};
  out["seed"] = stats.seed;
  if (include_trajectory) {
    json steps = json::array();
    for (const IterationOutcome& o : stats.trajectory)
      steps.push_back({{"success", o.success}, {"alpha_before", o.alpha_before}, {"alpha_after", o.alpha_after}, {"p_success", o.p_success}});
    out["trajectory"] = steps;
  }
  return out;
}

json CommandReport::to_json() const {
  json out;
  out["schema"] = kSchemaVersion;
  out["command"] = command;
  out["parameters"] = parameters;
  out["results"] = results;
  if (pass.has_value()) out["pass"] = *pass;
  if (seed.has_value()) out["seed"] = *seed;
  return out;
}

CommandReport CommandReport::from_json(const json& j) {
  if (j.at("schema").get<int>() != kSchemaVersion) throw std::invalid_argument("CommandReport: unsupported schema version");
  CommandReport report;
  report.command = j.at("command").get<std::string>();
  report.parameters = j.at("parameters");
  report.results = j.at("results");
  if (j.contains("pass")) report.pass = j.at("pass").get<bool>();
  if (j.contains("seed")) report.seed = j.at("seed").get<std::uint64_t>();
  return report;
}

}  // namespace distil
