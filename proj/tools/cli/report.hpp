#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "schurlab/error.hpp"

namespace schurlab::cli {

// CSV rows with a header; `notes` are trailing "# key,value" lines.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> notes;
};

// 12 significant digits
std::string num(double v);
std::string num(long long v);
std::string to_csv(const Table& t);

struct RunContext {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
};

// CSV to `out` (stdout when empty); manifest to `out`.json.
void emit(const Table& t, const RunContext& ctx, const std::string& command, const nlohmann::json& config,
          double wall_seconds);

// 3 for numerical non-convergence, 2 for everything else
int exit_code(const Error& e);

}  // namespace schurlab::cli
