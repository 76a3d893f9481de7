#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "birat/cli.hpp"

namespace {

using birat::Json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw birat::Error(birat::Errc::ParseError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int write_output(const std::string& path, const Json& doc) {
  std::string text = doc.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return 3;
  }
  out << text;
  return 0;
}

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw birat::Error(birat::Errc::ParseError, "invalid JSON input");
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact birational diffeomorphisms of real rational surfaces"};
  app.require_subcommand(1);

  std::string in_path = "-";
  std::string out_path = "-";
  birat::CliOptions options;
  app.add_option("--in", in_path, "input file or - for stdin")->capture_default_str();
  app.add_option("--out", out_path, "output file or - for stdout")->capture_default_str();
  app.add_option("--seed", options.seed, "seed for randomized verification sampling");
  app.add_option("--pencil", options.pencil, "number of pencil directions");
  app.add_option("--height-cap", options.height_cap, "axis search height cap");

  // generic runner: full {"command":..., "payload":...} document
  auto* run = app.add_subcommand("run", "run a JSON request document");

  auto* catalog = app.add_subcommand("catalog", "fetch a catalog map by name");
  std::string catalog_name = "list";
  catalog->add_option("--name", catalog_name, "map name or 'list'");

  auto* apply = app.add_subcommand("apply", "apply a map to a point");
  std::string apply_map;
  std::string apply_point;
  apply->add_option("--map", apply_map, "map expression")->required();
  apply->add_option("--point", apply_point, "JSON coordinate array")->required();

  auto* comp = app.add_subcommand("compose", "compose map expressions");
  std::string comp_expr;
  comp->add_option("--expr", comp_expr, "compose(...) expression")->required();

  auto* verify = app.add_subcommand("verify", "certify equality of two maps");
  std::string verify_lhs, verify_rhs;
  verify->add_option("--lhs", verify_lhs)->required();
  verify->add_option("--rhs", verify_rhs)->required();

  auto* invert = app.add_subcommand("invert-twist", "invert a twisting map (JSON payload)");
  auto* solve = app.add_subcommand("solve", "transitivity solver (JSON payload)");
  auto* interp = app.add_subcommand("interp-circle", "circle interpolation (JSON payload)");

  auto* dehn = app.add_subcommand("dehn", "algebraic Dehn twist profile");
  std::string dehn_eps = "1/4", dehn_tol = "1/20", dehn_levels;
  dehn->add_option("--eps", dehn_eps, "half-width of the twist window");
  dehn->add_option("--tol", dehn_tol, "sup-norm tolerance outside the window");
  dehn->add_option("--levels", dehn_levels, "comma-separated fixed levels");

  auto* reg = app.add_subcommand("regulous-eval", "evaluate a regulous function");
  std::string reg_fn, reg_point;
  int reg_k = -1;
  int reg_pencil = 0;
  reg->add_option("--fn", reg_fn, "builtin name or JSON")->required();
  reg->add_option("--point", reg_point, "comma-separated rational coordinates")->required();
  reg->add_option("--k", reg_k, "check k-regulousness up to this order");
  reg->add_option("--pencil", reg_pencil, "pencil size override");

  CLI11_PARSE(app, argc, argv);

  Json request;
  try {
    if (run->parsed()) {
      request = parse_json(read_input(in_path));
    } else if (catalog->parsed()) {
      request = Json{{"command", "catalog"}, {"payload", Json{{"name", catalog_name}}}};
    } else if (apply->parsed()) {
      request = Json{{"command", "apply"},
                     {"payload", Json{{"map", apply_map}, {"point", parse_json(apply_point)}}}};
    } else if (comp->parsed()) {
      request = Json{{"command", "compose"}, {"payload", Json{{"expr", comp_expr}}}};
    } else if (verify->parsed()) {
      request =
          Json{{"command", "verify"}, {"payload", Json{{"lhs", verify_lhs}, {"rhs", verify_rhs}}}};
    } else if (invert->parsed()) {
      request = Json{{"command", "invert-twist"}, {"payload", parse_json(read_input(in_path))}};
    } else if (solve->parsed()) {
      request = Json{{"command", "solve"}, {"payload", parse_json(read_input(in_path))}};
    } else if (interp->parsed()) {
      request = Json{{"command", "interp-circle"}, {"payload", parse_json(read_input(in_path))}};
    } else if (dehn->parsed()) {
      Json payload{{"eps", dehn_eps}, {"tol", dehn_tol}};
      if (!dehn_levels.empty()) {
        Json levels = Json::array();
        std::istringstream is(dehn_levels);
        std::string tok;
        while (std::getline(is, tok, ',')) levels.push_back(tok);
        payload["fixed_levels"] = levels;
      }
      request = Json{{"command", "dehn"}, {"payload", payload}};
    } else if (reg->parsed()) {
      Json payload{{"fn", reg_fn}, {"point", reg_point}};
      if (reg_k >= 0) payload["k"] = reg_k;
      if (reg_pencil > 0) payload["pencil"] = reg_pencil;
      request = Json{{"command", "regulous-eval"}, {"payload", payload}};
    }
  } catch (const birat::Error& e) {
    Json err{{"error", birat::errc_name(e.code())}, {"detail", e.what()}};
    write_output(out_path, err);
    return 3;
  }

  birat::RunResult result = birat::run_request(request, options);
  int write_rc = write_output(out_path, result.output);
  return result.exit_code != 0 ? result.exit_code : write_rc;
}
