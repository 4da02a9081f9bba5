#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pollard/flowfield.hpp"
#include "pollard/verify.hpp"

namespace pollard::cli {

/// Column-oriented numeric table shared by the CSV and JSON writers.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Shortest-free fixed form with 17 significant digits ("%.17g").
std::string format_double(double value);

/// Header row, comma separators, '\n' line endings.
void write_csv(const Table& table, std::ostream& out);

/// {"columns": [...], "data": {"<column>": [...], ...}}
nlohmann::ordered_json table_json(const Table& table);
void write_json(const Table& table, std::ostream& out);

/// Columns t,q,r,s,x,y,z,u,v,w,p,w1,w2,w3.
Table flow_table(const std::vector<FlowSample>& samples);

/// Columns q,x,y,z.
Table profile_table(const std::vector<SurfaceSample>& samples);

nlohmann::ordered_json report_json(const VerificationReport& report);

}  // namespace pollard::cli
