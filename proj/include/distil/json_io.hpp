#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "distil/pq_algebra.hpp"
#include "distil/protocol.hpp"
#include "distil/rational.hpp"
#include "distil/tensor.hpp"
#include "distil/witness.hpp"

// Machine-readable output. Every payload is versioned with "schema": 1 and
// every numeric result carries either an exactness flag or its tolerance.

namespace distil {

inline constexpr int kSchemaVersion = 1;

nlohmann::json layout_to_json(const RegisterLayout& layout);
RegisterLayout layout_from_json(const nlohmann::json& j);

// Row-major (re, im) entry list plus the layout header.
nlohmann::json operator_to_json(const DenseOperator& op);
DenseOperator operator_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const PureVector& v);

// {"rational": "p/q", "value": <double>, "exact": true}
nlohmann::json rational_to_json(const Rational& r);

// [{"x": bitstring, "num": string, "den": string}, ...] over all words.
nlohmann::json coeffs_to_json(const NCopyCoeffs& coeffs);

nlohmann::json lemma1_report_to_json(const Lemma1Report& report);

nlohmann::json witness_result_to_json(const WitnessResult& result, bool include_certificate);

nlohmann::json run_stats_to_json(const RunStats& stats, bool include_trajectory);

// Envelope every command emits on stdout.
struct CommandReport {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::optional<bool> pass;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const;
  static CommandReport from_json(const nlohmann::json& j);
};

}  // namespace distil
