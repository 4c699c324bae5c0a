#pragma once

// The output record shared by every subcommand and its JSON and CSV forms.
//
// High-precision values travel as decimal strings that round-trip at the
// working precision; doubles as JSON numbers in shortest round-trip form.
// CSV cells are produced from the same JSON values, so both formats carry
// identical digits.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "rosen/real.hpp"

namespace rosen::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

struct Record {
  std::string command;
  json params = json::object();
  /// Scalar results; tables are appended under their names on output.
  json results = json::object();
  std::vector<Table> tables;
  json provenance = json::object();
  long precision_bits = 0;
  /// Names of failed assertions; non-empty means exit code 1.
  std::vector<std::string> failures;

  json to_json() const;
};

json real_value(const Real& x);

void write_json(std::ostream& out, const Record& record);
/// Scalars and provenance as `# key,value` comment lines, then each table
/// under a `# table,<name>` line with a header row.
void write_csv(std::ostream& out, const Record& record);

}  // namespace rosen::cli
