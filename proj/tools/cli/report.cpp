#include "report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "schurlab/error.hpp"

namespace schurlab::cli {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string num(long long v) { return std::to_string(v); }

std::string to_csv(const Table& t) {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  for (const auto& [k, v] : t.notes) os << "# " << k << ',' << v << '\n';
  return os.str();
}

void emit(const Table& t, const RunContext& ctx, const std::string& command, const nlohmann::json& config,
          double wall_seconds) {
  const std::string csv = to_csv(t);
  if (ctx.out.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream f(ctx.out, std::ios::binary);
  if (!f) throw Error("cli", ErrorCode::InvalidArgument, "cannot write " + ctx.out);
  f << csv;

  nlohmann::json m;
  m["command"] = command;
  m["config"] = config;
  m["seed"] = ctx.seed;
  m["threads"] = ctx.threads;
  m["version"] = SCHURLAB_VERSION;
  m["wall_time_s"] = wall_seconds;
  m["rows"] = t.rows.size();
  m["columns"] = t.header;
  nlohmann::json notes = nlohmann::json::object();
  for (const auto& [k, v] : t.notes) notes[k] = v;
  m["summary"] = notes;
  std::ofstream j(ctx.out + ".json", std::ios::binary);
  if (!j) throw Error("cli", ErrorCode::InvalidArgument, "cannot write " + ctx.out + ".json");
  j << m.dump(2) << '\n';
}

int exit_code(const Error& e) { return e.is_convergence() ? 3 : 2; }

}  // namespace schurlab::cli
