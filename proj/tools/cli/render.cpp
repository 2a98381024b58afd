#include "cli/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace fewn::cli {
namespace {

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return round_to_printed(v);
        } else {
          return v;
        }
      },
      c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double round_to_printed(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  const std::string s = format_number(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

std::string format_fixed(double v, int decimals) {
  char buf[128];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  std::string s(buf, res.ptr);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          return std::to_string(v);
        } else {
          return v;
        }
      },
      c);
}

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(t.columns[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(format_cell(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Output& o) {
  nlohmann::ordered_json doc;
  doc["command"] = o.command;
  doc["params"] = o.params;
  auto row_object = [&](const std::vector<Cell>& row) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < o.table.columns.size(); ++i) {
      obj[o.table.columns[i]] = cell_json(row[i]);
    }
    return obj;
  };
  if (o.table.rows.size() == 1) {
    doc["result"] = row_object(o.table.rows.front());
  } else {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : o.table.rows) rows.push_back(row_object(row));
    doc["result"] = {{"rows", rows}};
  }
  return doc.dump(2) + "\n";
}

std::string render_human(const Output& o) {
  if (o.human) return *o.human;
  std::ostringstream out;
  if (o.table.rows.size() == 1) {
    std::size_t width = 0;
    for (const auto& c : o.table.columns) width = std::max(width, c.size());
    for (std::size_t i = 0; i < o.table.columns.size(); ++i) {
      const auto& c = o.table.columns[i];
      out << c << ':' << std::string(width - c.size() + 1, ' ')
          << format_cell(o.table.rows.front()[i]) << '\n';
    }
    return out.str();
  }
  std::vector<std::size_t> widths;
  for (const auto& c : o.table.columns) widths.push_back(c.size());
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : o.table.rows) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(format_cell(row[i]));
      widths[i] = std::max(widths[i], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out << "  ";
      out << line[i];
      if (i + 1 < line.size()) out << std::string(widths[i] - line[i].size(), ' ');
    }
    out << '\n';
  };
  emit(o.table.columns);
  for (const auto& line : cells) emit(line);
  return out.str();
}

}  // namespace fewn::cli
