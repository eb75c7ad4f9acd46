#include <charconv>
#include <cmath>
#include <fstream>

#include "cavspdc/sweep.hpp"
#include "json.hpp"

namespace cavspdc {

TableFormat parse_format(std::string_view s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "json") return TableFormat::Json;
  throw Error(Errc::InvalidArgument, "format must be csv or json");
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
  switch (c.status) {
    case CellStatus::Ok: return format_number(c.value);
    case CellStatus::Infinite: return c.value < 0 ? "-inf" : "inf";
    case CellStatus::Error: return "error:" + std::string(to_string(c.error));
  }
  return "";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const SweepResult& r) {
  std::string out;
  for (const auto& [k, v] : r.provenance) out += "# " + k + ": " + v + "\n";
  bool first = true;
  auto header = [&](const Column& c) {
    if (!first) out += ',';
    first = false;
    out += csv_field(c.name + "[" + c.unit + "]");
  };
  for (const auto& c : r.axes) header(c);
  for (const auto& c : r.columns) header(c);
  out += "\n";
  for (std::size_t row = 0; row < r.rows(); ++row) {
    first = true;
    auto cell = [&](const Column& c) {
      if (!first) out += ',';
      first = false;
      out += format_cell(c.cells[row]);
    };
    for (const auto& c : r.axes) cell(c);
    for (const auto& c : r.columns) cell(c);
    out += "\n";
  }
  return out;
}

std::string to_json(const SweepResult& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["provenance"] = ordered_json::object();
  for (const auto& [k, v] : r.provenance) j["provenance"][k] = v;
  j["columns"] = ordered_json::array();
  auto describe = [&](const Column& c, bool axis) {
    j["columns"].push_back({{"name", c.name}, {"unit", c.unit}, {"axis", axis}});
  };
  for (const auto& c : r.axes) describe(c, true);
  for (const auto& c : r.columns) describe(c, false);
  j["rows"] = ordered_json::array();
  auto value = [](const Cell& c) -> ordered_json {
    switch (c.status) {
      case CellStatus::Ok: return c.value;
      case CellStatus::Infinite: return c.value < 0 ? "-inf" : "inf";
      case CellStatus::Error: return {{"error", std::string(to_string(c.error))}};
    }
    return nullptr;
  };
  for (std::size_t row = 0; row < r.rows(); ++row) {
    ordered_json line = ordered_json::array();
    for (const auto& c : r.axes) line.push_back(value(c.cells[row]));
    for (const auto& c : r.columns) line.push_back(value(c.cells[row]));
    j["rows"].push_back(std::move(line));
  }
  return j.dump(1) + "\n";
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
  }
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + file.string());
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed for " + file.string());
}

void write_table(const SweepResult& r, const std::filesystem::path& file, TableFormat format) {
  write_text(file, format == TableFormat::Csv ? to_csv(r) : to_json(r));
}

}  // namespace cavspdc
