#pragma once

#include "birat/json_io.hpp"

namespace birat {

struct CliOptions {
  unsigned long long seed = 0;   // spot-check sampling for verify
  int pencil = 10;               // regulous pencil size
  int height_cap = 64;           // axis search bound for the solver
};

struct RunResult {
  int exit_code = 0;  // 0 success, 2 negative verification, 3 parse/validation
  Json output;
};

// Dispatches a request {"command": ..., "payload": {...}}. Never throws:
// errors come back as exit code 3 with {"error": code, "detail": ...}.
RunResult run_request(const Json& request, const CliOptions& options = {});

// Grammar: NAME | "compose(" expr "," expr ")" | "id:" surface | inline JSON.
// compose(g, f) applies f first.
RationalMap parse_map_expr(const std::string& expr);

}  // namespace birat
