#include "aplab/report.hpp"

#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>

#include "aplab/errors.hpp"

namespace aplab {

Json make_report(const std::string& command, const std::string& anchor, Json params,
                 std::uint64_t seed) {
  Json report;
  report["version"] = kSchemaVersion;
  report["command"] = command;
  report["anchor"] = anchor;
  report["params"] = std::move(params);
  report["seed"] = seed;
  return report;
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string scalar_to_string(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();  // numbers print shortest round-trip, stable per value
}

void write_csv(const Json& report, std::ostream& os) {
  if (report.contains("table")) {
    const Json& table = report["table"];
    const Json& columns = table["columns"];
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) os << ',';
      os << csv_quote(columns[i].get<std::string>());
    }
    os << "\r\n";
    for (const Json& row : table["rows"]) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        os << csv_quote(scalar_to_string(row[i]));
      }
      os << "\r\n";
    }
    return;
  }
  os << "key,value\r\n";
  if (report.contains("results"))
    for (const auto& [key, value] : report["results"].items())
      os << csv_quote(key) << ',' << csv_quote(scalar_to_string(value)) << "\r\n";
}

void write_human(const Json& report, std::ostream& os) {
  os << report["command"].get<std::string>() << " (" << kSchemaVersion << ")\n";
  os << "quantity: " << report["anchor"].get<std::string>() << "\n";
  os << "params:";
  for (const auto& [key, value] : report["params"].items())
    os << ' ' << key << '=' << scalar_to_string(value);
  os << "\nseed: " << report["seed"].dump() << "\n";
  if (report.contains("results")) {
    for (const auto& [key, value] : report["results"].items())
      os << "  " << key << " = " << scalar_to_string(value) << "\n";
  }
  if (report.contains("table")) {
    const Json& table = report["table"];
    for (std::size_t i = 0; i < table["columns"].size(); ++i)
      os << (i ? "\t" : "") << table["columns"][i].get<std::string>();
    os << "\n";
    for (const Json& row : table["rows"]) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "\t" : "") << scalar_to_string(row[i]);
      os << "\n";
    }
  }
}

} // namespace

void write_report(const Json& report, ReportFormat format, std::ostream& os) {
  switch (format) {
    case ReportFormat::json:
      os << report.dump(2) << "\n";
      break;
    case ReportFormat::csv:
      write_csv(report, os);
      break;
    case ReportFormat::human:
      write_human(report, os);
      break;
  }
}

void emit_report(const Json& report, ReportFormat format, const std::string& path) {
  if (path.empty() || path == "-") {
    write_report(report, format, std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw io_error("emit_report: cannot open " + path);
  write_report(report, format, file);
  if (!file) throw io_error("emit_report: write failed for " + path);
}

} // namespace aplab
