#include "smdpen/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>
#include <utility>
#include <vector>

#include "json.hpp"

namespace smdpen {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json metrics_json(const Metrics& metrics) {
  json out = json::object();
  for (const auto& [key, value] : metrics) out[key] = value;
  return out;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json arm_json(const ArmResult& arm) {
  const RunReport& r = arm.report;
  json events = json::array();
  for (const auto& e : r.events)
    events.push_back({{"k", e.k},
                      {"p_before", e.p_before},
                      {"p_after", e.p_after},
                      {"multiplications", e.multiplications},
                      {"capped", e.capped}});
  json out = {{"name", arm.name.empty() ? r.name : arm.name},
              {"seed", r.seed},
              {"iterations_run", r.iterations_run},
              {"final_x", vector_json(r.final_x)},
              {"final_f", r.final_f},
              {"final_M", r.final_m},
              {"final_p", r.final_p},
              {"penalty_updates", r.penalty_updates},
              {"capped_updates", r.capped_updates},
              {"penalty_test_sampled", r.penalty_test_sampled},
              {"diverged", r.diverged},
              {"events", events},
              {"metrics", metrics_json(arm.metrics)}};
  if (r.diverged) out["divergence"] = r.divergence_message;
  return out;
}

fs::path arm_dir(const ExperimentResult& result, const ArmResult& arm, const fs::path& dir) {
  return result.arms.size() == 1 ? dir : dir / arm.name;
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trace_csv(const RunReport& report) {
  const Index n = report.rows.empty() ? 0 : report.rows.front().x.size();
  std::string out = "k";
  for (Index i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
  out += ",f,M,P,p,gamma,grad_norm\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.k);
    for (Index i = 0; i < row.x.size(); ++i) out += "," + format_real(row.x[i]);
    for (double v : {row.f, row.m, row.penalty, row.p, row.gamma, row.grad_norm})
      out += "," + format_real(v);
    out += "\n";
  }
  return out;
}

std::string summary_json(const ExperimentResult& result) {
  json arms = json::array();
  for (const auto& arm : result.arms) arms.push_back(arm_json(arm));
  json doc = {{"experiment", result.experiment},
              {"status", result.diverged() ? "diverged" : "ok"},
              {"diverged", result.diverged()},
              {"seed", result.config.seed.value_or(0)},
              {"config", json::parse(serialize_config(result.config))},
              {"metrics", metrics_json(result.metrics)},
              {"arms", arms}};
  return doc.dump(2) + "\n";
}

std::string timing_json(const ExperimentResult& result) {
  json arms = json::object();
  double total = 0.0;
  for (const auto& arm : result.arms) {
    arms[arm.name.empty() ? arm.report.name : arm.name] = arm.report.wall_seconds;
    total += arm.report.wall_seconds;
  }
  return json({{"wall_seconds", total}, {"arms", arms}}).dump(2) + "\n";
}

void write_experiment(const ExperimentResult& result, const fs::path& dir) {
  std::vector<std::pair<fs::path, std::string>> files;
  files.emplace_back(dir / "summary.json", summary_json(result));
  files.emplace_back(dir / "timing.json", timing_json(result));
  for (const auto& arm : result.arms)
    files.emplace_back(arm_dir(result, arm, dir) / "trace.csv", trace_csv(arm.report));
  for (const auto& extra : result.files) files.emplace_back(dir / extra.name, extra.content);

  std::vector<fs::path> staged;
  std::vector<fs::path> placed;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& p : staged) fs::remove(p, ec);
    for (const auto& p : placed) fs::remove(p, ec);
  };

  try {
    for (const auto& [path, content] : files) {
      fs::create_directories(path.parent_path());
      fs::path tmp = path;
      tmp += ".tmp";
      staged.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(content.data(), static_cast<std::streamsize>(content.size()));
      out.close();
      if (!out) throw IoError("failed to write " + tmp.string());
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      fs::rename(staged[i], files[i].first);
      placed.push_back(files[i].first);
    }
    staged.clear();
  } catch (const IoError&) {
    cleanup();
    throw;
  } catch (const fs::filesystem_error& e) {
    cleanup();
    throw IoError(e.what());
  }
}

}  // namespace smdpen
