#include "record.hpp"

#include <ostream>

namespace rosen::cli {

json real_value(const Real& x) { return x.to_string(); }

json Record::to_json() const {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = command;
  out["params"] = params;
  json res = results;
  for (const Table& t : tables) {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row.at(i);
      rows.push_back(std::move(obj));
    }
    res[t.name] = std::move(rows);
  }
  out["results"] = std::move(res);
  out["provenance"] = provenance;
  out["precision_bits"] = precision_bits;
  return out;
}

void write_json(std::ostream& out, const Record& record) { out << record.to_json().dump(2) << '\n'; }

namespace {

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (!v.is_string()) return v.dump();
  const std::string& s = v.get_ref<const std::string&>();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

void comment_lines(std::ostream& out, const std::string& prefix, const json& obj) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      comment_lines(out, prefix + key + ".", value);
    } else if (value.is_array()) {
      out << "# " << prefix << key << "," << cell(json(value.dump())) << '\n';
    } else {
      out << "# " << prefix << key << "," << cell(value) << '\n';
    }
  }
}

}  // namespace

void write_csv(std::ostream& out, const Record& record) {
  out << "# schema_version," << kSchemaVersion << '\n';
  out << "# command," << record.command << '\n';
  comment_lines(out, "params.", record.params);
  comment_lines(out, "results.", record.results);
  comment_lines(out, "provenance.", record.provenance);
  out << "# precision_bits," << record.precision_bits << '\n';
  for (const Table& t : record.tables) {
    out << "# table," << t.name << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i]);
      out << '\n';
    }
  }
}

}  // namespace rosen::cli
