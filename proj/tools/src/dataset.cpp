#include "spingap_cli/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "spingap/errors.hpp"
#include "spingap/version.hpp"

namespace spingap::cli {

Dataset::Dataset(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw ConfigError("Dataset: no columns");
}

void Dataset::set_config_echo(std::vector<std::pair<std::string, std::string>> echo) {
  echo_ = std::move(echo);
}

void Dataset::add_comment(const std::string& line) { comments_.push_back(line); }

void Dataset::add_row(std::span<const double> values) {
  if (values.size() != columns_.size())
    throw ConfigError("Dataset: row width does not match column schema");
  std::vector<std::string> row(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) row[i] = format_value(values[i]);
  rows_.push_back(std::move(row));
}

std::string Dataset::format_value(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.11e", v);
  return buffer;
}

void Dataset::write_csv(std::ostream& out) const {
  out << "# spingap " << kVersion << "\n";
  for (const auto& [key, value] : echo_) out << "# " << key << "=" << value << "\n";
  for (const auto& line : comments_) out << "# " << line << "\n";
  out << "# columns: ";
  for (std::size_t i = 0; i < columns_.size(); ++i)
    out << (i ? "," : "") << columns_[i];
  out << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

void Dataset::write_json(std::ostream& out) const {
  nlohmann::json doc;
  doc["tool"] = "spingap";
  doc["version"] = kVersion;
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [key, value] : echo_) config[key] = value;
  doc["config"] = config;
  if (!comments_.empty()) doc["notes"] = comments_;
  doc["columns"] = columns_;
  nlohmann::json data = nlohmann::json::object();
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    nlohmann::json column = nlohmann::json::array();
    for (const auto& row : rows_) column.push_back(std::stod(row[c]));
    data[columns_[c]] = std::move(column);
  }
  doc["data"] = std::move(data);
  out << doc.dump(2) << "\n";
}

void Dataset::write(const std::string& path, const std::string& format) const {
  const bool json = format == "json";
  if (!json && format != "csv")
    throw ConfigError("format must be 'csv' or 'json', got '" + format + "'");
  if (path == "-") {
    json ? write_json(std::cout) : write_csv(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw NumericalError("cannot open output file '" + path + "'");
  json ? write_json(out) : write_csv(out);
  if (!out.good()) throw NumericalError("write failed for '" + path + "'");
}

std::string derived_path(const std::string& path, const std::string& tag) {
  if (path == "-") return path;
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + "." + tag;
  return path.substr(0, dot) + "." + tag + path.substr(dot);
}

}  // namespace spingap::cli
