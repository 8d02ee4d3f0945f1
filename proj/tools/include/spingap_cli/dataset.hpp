#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spingap::cli {

/// Rectangular numeric table with a self-describing header (config echo +
/// column schema). Values are formatted once, to 12 significant digits, and
/// both CSV and JSON are emitted from the same formatted strings so the two
/// formats carry identical numbers. No timestamps: reruns are byte-identical.
class Dataset {
 public:
  explicit Dataset(std::vector<std::string> columns);

  void set_config_echo(std::vector<std::pair<std::string, std::string>> echo);
  void add_comment(const std::string& line);  // extra "# ..." header line
  void add_row(std::span<const double> values);

  std::size_t n_rows() const noexcept { return rows_.size(); }
  const std::vector<std::string>& columns() const noexcept { return columns_; }

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;

  /// Writes to the path in the requested format ("csv"|"json");
  /// "-" selects stdout.
  void write(const std::string& path, const std::string& format) const;

  static std::string format_value(double v);

 private:
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> echo_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

/// "out.csv" -> "out.locus.csv"; used by commands that emit a companion file.
std::string derived_path(const std::string& path, const std::string& tag);

}  // namespace spingap::cli
