#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "numsparse/bounds.hpp"
#include "numsparse/inference.hpp"
#include "numsparse/simlab.hpp"

namespace numsparse::io {

using nlohmann::json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// One value per line. A first line that does not parse as a number is
/// treated as a header and must equal `header` when one is given.
std::vector<double> read_column_csv(const std::filesystem::path& path, const std::string& header = "");

Signal read_signal_csv(const std::filesystem::path& path);

/// Row-per-line CSV, comma separated.
Matrix read_matrix_csv(const std::filesystem::path& path);

/// Sidecar path for a measurement CSV: same stem, ".json" extension.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Writes `y` CSV plus the JSON sidecar.
void write_batch(const MeasurementBatch& batch, const std::filesystem::path& csv);
MeasurementBatch read_batch(const std::filesystem::path& csv);

json batch_metadata(const MeasurementBatch& batch);

json to_json(const TuningState& ts);
json to_json(const NormEstimate& est);
json to_json(const SparsityEstimate& est, const ConfidenceInterval& ci);
json to_json(const SparsityTest& test);
json to_json(const ConfidenceInterval& ci);

/// Reads a signal object {"kind":"power_law","p":..,"tau":..} or
/// {"kind":"explicit","values":[..]}.
SignalSpec signal_from_json(const json& j);
json to_json(const SignalSpec& s);

ExperimentConfig config_from_json(const json& j);
json to_json(const ExperimentConfig& cfg);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// `n_total,p,q,tau,rho_q,mean_abs_rel_err,std_err,failures,theory`
std::string relative_error_csv(const ExperimentResult& result);
json to_json(const ExperimentResult& result);

/// `replicate,standardized_stat,covered`
std::string clt_csv(const CltResult& result);
json clt_summary(const CltResult& result);

}  // namespace numsparse::io
