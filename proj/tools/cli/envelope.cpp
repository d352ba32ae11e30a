#include "cli/envelope.hpp"

#include <cstdio>

#include <json.hpp>

namespace dqpt::cli {

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell_to_string(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  return std::get<std::string>(c);
}

}  // namespace

std::string to_csv(const ResultEnvelope& env) {
  std::string out;
  for (const auto& [k, v] : env.metadata) {
    out += "# " + k + " = " + v + "\n";
  }
  for (std::size_t i = 0; i < env.columns.size(); ++i) {
    if (i) out += ',';
    out += env.columns[i];
  }
  out += '\n';
  for (const auto& row : env.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_to_string(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ResultEnvelope& env) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : env.metadata) j["metadata"][k] = v;
  j["columns"] = env.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : env.rows) {
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (std::holds_alternative<double>(c)) jrow.push_back(std::get<double>(c));
      else if (std::holds_alternative<long long>(c)) jrow.push_back(std::get<long long>(c));
      else jrow.push_back(std::get<std::string>(c));
    }
    j["rows"].push_back(std::move(jrow));
  }
  return j.dump(2) + "\n";
}

}  // namespace dqpt::cli
