#include "pollard/cli/export.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace pollard::cli {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

nlohmann::ordered_json table_json(const Table& table) {
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    auto column = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) column.push_back(row[i]);
    data[table.columns[i]] = std::move(column);
  }
  nlohmann::ordered_json j;
  j["columns"] = table.columns;
  j["data"] = std::move(data);
  return j;
}

void write_json(const Table& table, std::ostream& out) {
  out << table_json(table).dump(2) << '\n';
}

Table flow_table(const std::vector<FlowSample>& samples) {
  Table t;
  t.columns = {"t", "q", "r", "s", "x", "y", "z", "u", "v", "w", "p", "w1", "w2", "w3"};
  t.rows.reserve(samples.size());
  for (const auto& s : samples) {
    t.rows.push_back({s.t, s.label.q, s.label.r, s.label.s, s.position.x(),
                      s.position.y(), s.position.z(), s.velocity.x(), s.velocity.y(),
                      s.velocity.z(), s.pressure, s.vorticity.x(), s.vorticity.y(),
                      s.vorticity.z()});
  }
  return t;
}

Table profile_table(const std::vector<SurfaceSample>& samples) {
  Table t;
  t.columns = {"q", "x", "y", "z"};
  t.rows.reserve(samples.size());
  for (const auto& s : samples) {
    t.rows.push_back({s.q, s.point.x(), s.point.y(), s.point.z()});
  }
  return t;
}

nlohmann::ordered_json report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check_name;
  j["passed"] = r.passed;
  // NaN is not representable in JSON.
  if (std::isfinite(r.max_residual)) {
    j["max_residual"] = r.max_residual;
  } else {
    j["max_residual"] = format_double(r.max_residual);
  }
  j["tolerance"] = r.tolerance;
  j["n_samples"] = r.n_samples;
  j["worst_sample"] = {{"q", r.worst_label.q},
                       {"r", r.worst_label.r},
                       {"s", r.worst_label.s},
                       {"t", r.worst_time}};
  return j;
}

}  // namespace pollard::cli
