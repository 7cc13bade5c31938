#include <ostream>

#include "io_common.hpp"
#include "rotavg/io.hpp"

namespace rotavg {

namespace {

using detail::format_double;

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_results(const ResultRecord& record, std::ostream& out, ResultFormat format) {
  if (record.report == nullptr) throw Error(ErrorCode::kInvalidArgument, "no report to write");
  const SolveReport& r = *record.report;
  if (r.objective_trace.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "a report needs at least one epoch");
  }
  const auto seconds = [&](double s) { return format_double(record.include_timing ? s : 0.0); };
  const std::size_t epochs = r.objective_trace.size();
  const auto flips = [&](std::size_t e) { return e < r.flips_per_epoch.size() ? r.flips_per_epoch[e] : 0; };
  const auto epoch_time = [&](std::size_t e) {
    return e < r.epoch_seconds.size() ? r.epoch_seconds[e] : 0.0;
  };

  if (format == ResultFormat::kCsv) {
    out << "epoch,objective,flips,seconds\n";
    for (std::size_t e = 0; e < epochs; ++e) {
      out << e + 1 << ',' << format_double(r.objective_trace[e]) << ',' << flips(e) << ','
          << seconds(epoch_time(e)) << '\n';
    }
  } else {
    out << "{\"type\":\"summary\",\"solver\":" << quoted(r.solver)
        << ",\"epochs\":" << r.epochs << ",\"iterations\":" << r.iterations
        << ",\"termination\":" << quoted(termination_name(r.termination))
        << ",\"initial_objective\":" << format_double(r.initial_objective)
        << ",\"objective\":" << format_double(r.final_objective())
        << ",\"block_mults\":" << r.block_mults << ",\"seconds\":" << seconds(r.seconds)
        << ",\"config\":" << (record.config_json.empty() ? "{}" : record.config_json) << "}\n";
    for (std::size_t v = 0; v < r.rotations.size(); ++v) {
      const long long id =
          record.camera_ids.empty() ? static_cast<long long>(v) : record.camera_ids.at(v);
      const UnitQuaternion q = rotation_to_quat(r.rotations[v]);
      out << "{\"type\":\"camera\",\"index\":" << v << ",\"id\":" << id
          << ",\"qx\":" << format_double(q.qx) << ",\"qy\":" << format_double(q.qy)
          << ",\"qz\":" << format_double(q.qz) << ",\"qw\":" << format_double(q.qw) << "}\n";
    }
    for (std::size_t e = 0; e < epochs; ++e) {
      out << "{\"type\":\"epoch\",\"epoch\":" << e + 1
          << ",\"objective\":" << format_double(r.objective_trace[e]) << ",\"flips\":" << flips(e)
          << ",\"seconds\":" << seconds(epoch_time(e)) << "}\n";
    }
  }
  if (!out) throw Error(ErrorCode::kIoFailure, "failed to write results");
}

}  // namespace rotavg
