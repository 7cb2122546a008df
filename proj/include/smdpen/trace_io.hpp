#pragma once

#include <filesystem>
#include <string>

#include "smdpen/experiments.hpp"

namespace smdpen {

class IoError : public Error {
 public:
  using Error::Error;
};

/// 17 significant digits, round-trips exactly.
std::string format_real(double v);

/// Header k,x1..xn,f,M,P,p,gamma,grad_norm and one line per recorded row.
std::string trace_csv(const RunReport& report);

/// Final metrics, penalty events, resolved config and seed. Contains no
/// timing, so identical runs give identical bytes.
std::string summary_json(const ExperimentResult& result);

/// Wall-clock seconds per arm.
std::string timing_json(const ExperimentResult& result);

/// Writes summary.json, timing.json, the trace(s) and extra files under dir.
/// A single-arm experiment puts trace.csv in dir; otherwise each arm gets
/// dir/<arm>/trace.csv. Files are staged and renamed into place; on failure
/// everything written by this call is removed and IoError is thrown.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace smdpen
