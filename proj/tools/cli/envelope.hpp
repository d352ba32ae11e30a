#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dqpt::cli {

using Cell = std::variant<double, long long, std::string>;

// Fixed-schema result table plus metadata. Payloads are deterministic for a
// given config and tool version; wall time is reported on stderr only so the
// serialized output stays byte-identical across runs and thread counts.
struct ResultEnvelope {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// %.17g
std::string format_double(double v);

// '#'-prefixed metadata lines, header row, comma separator, LF endings.
std::string to_csv(const ResultEnvelope& env);

std::string to_json(const ResultEnvelope& env);

}  // namespace dqpt::cli
