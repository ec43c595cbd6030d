#include "ccm/runner/output.hpp"

#include <fmt/format.h>

#include <cmath>
#include <nlohmann/json.hpp>

namespace ccm::runner {

namespace {

std::string number(double v) { return fmt::format("{:.17g}", v); }

std::string meta_text(const MetaValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) return number(x);
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(x);
        else return x;
      },
      v);
}

nlohmann::json meta_json(const Metadata& md) {
  auto obj = nlohmann::json::object();
  for (const auto& [k, v] : md)
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>) {
            if (std::isfinite(x)) obj[k] = x;
            else obj[k] = nullptr;
          } else {
            obj[k] = x;
          }
        },
        v);
  return obj;
}

}  // namespace

void write_csv(std::ostream& os, const ResultSet& r) {
  for (const auto& [k, v] : r.metadata) os << "# " << k << ": " << meta_text(v) << '\n';
  bool first = true;
  for (const auto& t : r.tables) {
    if (!first) os << '\n';
    first = false;
    os << "# table: " << t.name << '\n';
    for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << meta_text(v) << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        // the step column is an integer
        if (c == 0 && t.columns[0] == "step") os << static_cast<long long>(row[c]);
        else os << (c ? "," : "") << number(row[c]);
      }
      os << '\n';
    }
  }
}

void write_json(std::ostream& os, const ResultSet& r) {
  nlohmann::json j;
  j["metadata"] = meta_json(r.metadata);
  j["tables"] = nlohmann::json::array();
  for (const auto& t : r.tables) {
    nlohmann::json jt;
    jt["name"] = t.name;
    jt["metadata"] = meta_json(t.metadata);
    jt["columns"] = t.columns;
    auto rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
      auto jr = nlohmann::json::array();
      for (double v : row) {
        if (std::isfinite(v)) jr.push_back(v);
        else jr.push_back(nullptr);
      }
      rows.push_back(std::move(jr));
    }
    jt["rows"] = std::move(rows);
    j["tables"].push_back(std::move(jt));
  }
  os << j.dump(2) << '\n';
}

}  // namespace ccm::runner
