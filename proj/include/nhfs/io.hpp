#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nhfs/fourier.hpp"
#include "nhfs/recovery.hpp"
#include "nhfs/signal_model.hpp"

namespace nhfs::io {

// Model file:
//   {"P": 4, "constant": 0, "terms": [{"kind": "trig", "gamma": 1, "freq": 4.9, "phase": 0}]}
struct ModelFile {
  double period = 1.0;
  SignalModel model;
};

/// Throws Error(ParseError) on malformed JSON or invalid terms and
/// Error(DuplicateFrequency) from canonicalization.
ModelFile parse_model(std::string_view text);
nlohmann::json model_to_json(const SignalModel& model, double period);

// Coefficient CSV: header "n,re,im", one row per index, index 0 allowed.
/// Throws Error(ParseError) naming the offending line.
FourierData parse_coefficients(std::string_view text, double period);
std::string coefficients_to_csv(const FourierData& data);

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

nlohmann::json report_to_json(const ReconstructionReport& report, double period);
nlohmann::json comparison_to_json(const ModelComparison& cmp);

/// "1..40", "1,2,7" or any comma-separated mix of both.
std::vector<int> parse_indices(std::string_view spec);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace nhfs::io
