#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smdpen/common.hpp"

namespace smdpen {

/// Bad configuration input; `key()` names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Experiment settings. Unset fields fall back to the experiment defaults;
/// trajectories leave p0 unset to keep their per-case values.
struct RunConfig {
  std::string experiment;
  std::optional<long> iterations;
  std::optional<std::uint64_t> seed;
  std::optional<double> gamma0;
  std::optional<double> beta;
  std::optional<double> p0;
  std::optional<double> kappa;
  std::optional<double> p_max;
  std::optional<double> sigma;
  std::optional<long> record_every;
  std::optional<std::string> out;
  std::optional<bool> dual_averaging;
  std::optional<bool> long_run;

  bool operator==(const RunConfig&) const = default;
};

const std::vector<std::string>& experiment_names();

/// Fields of `overlay` that are set replace those of `base`.
RunConfig merge(const RunConfig& base, const RunConfig& overlay);

/// Defaults for the named experiment. Throws ConfigError for unknown names.
RunConfig default_config(const std::string& experiment);

/// Range checks: beta in (1, 100], kappa in (1, 10], iterations >= 1,
/// record_every >= 1, gamma0/p0/p_max > 0, sigma >= 0, p0 <= p_max.
void validate(const RunConfig& config);

/// JSON text. Unknown keys and wrongly typed values throw ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& config);

/// defaults <- file <- flags, then validated.
RunConfig resolve_config(const std::string& experiment, const std::optional<std::string>& file,
                         const RunConfig& flags);

}  // namespace smdpen
