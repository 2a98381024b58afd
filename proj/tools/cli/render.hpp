#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace fewn::cli {

using Cell = std::variant<double, std::uint64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Everything a command produces; the renderers only pick a view of it.
struct Output {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  Table table;
  std::optional<std::string> human;  // overrides the generic human layout
  std::optional<std::string> svg;    // figure1 only
};

/// Shortest round-trip rendering at 12 significant digits, "C" locale.
std::string format_number(double v);

/// `v` rounded to the 12 significant digits format_number prints.
double round_to_printed(double v);

/// Fixed-point rendering with `decimals` digits, "C" locale.
std::string format_fixed(double v, int decimals);

std::string format_cell(const Cell& c);

std::string render_csv(const Table& t);
std::string render_json(const Output& o);
std::string render_human(const Output& o);

}  // namespace fewn::cli
