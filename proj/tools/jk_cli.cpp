#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "jkres.h"

namespace {

using nlohmann::json;

// Exit conventions: 0 success, 2 parse/input error, 3 precondition violation,
// 4 internal failure. Library status codes already follow this mapping.

struct cli_error {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw cli_error{code, message};
}

void check(int rc) {
  if (rc != JKRES_OK) fail(rc, jkres_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(2, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Takes ownership of a C string from the library.
std::string adopt(char* s) {
  std::string out = s ? s : "";
  jkres_string_free(s);
  return out;
}

json parse_emitted(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(4, "library emitted malformed JSON");
  return j;
}

struct fraction_handle {
  jkres_fraction_sum* ptr = nullptr;
  ~fraction_handle() { jkres_fraction_free(ptr); }
};

void emit(const json& j) { std::cout << j.dump() << "\n"; }

int run_residue(const std::string& input_path, const std::string& basis_path,
                bool equivariant, int split) {
  std::string fraction_text = read_file(input_path);
  std::string basis_text = read_file(basis_path);

  fraction_handle input, result;
  check(jkres_fraction_parse(fraction_text.c_str(), &input.ptr));
  if (equivariant)
    check(jkres_eq_res(input.ptr, basis_text.c_str(), split, &result.ptr));
  else
    check(jkres_jk_res(input.ptr, basis_text.c_str(), &result.ptr));

  char* dumped = nullptr;
  check(jkres_fraction_dump(result.ptr, &dumped));

  json basis = json::parse(basis_text, nullptr, false);
  if (basis.is_discarded()) fail(2, "malformed basis JSON");
  json metadata = {{"vol_T", "1"}, {"basis", basis}};
  if (equivariant) metadata["split"] = split;
  emit(json{{"value", parse_emitted(adopt(dumped))}, {"metadata", metadata}});
  return 0;
}

int run_integrate(const std::string& points_path, const std::string& group_path,
                  const std::string& mode) {
  std::string points_text = read_file(points_path);
  std::string group_text = read_file(group_path);
  char* out = nullptr;
  check(jkres_integrate(points_text.c_str(), group_text.c_str(), mode.c_str(), &out));
  emit(parse_emitted(adopt(out)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact residue calculus for polynomial-exponential fractions"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global --seed/--threads after a subcommand

  int threads = 1;
  std::uint64_t seed = 0;
  app.add_option("--threads", threads, "worker thread cap")->check(CLI::PositiveNumber);
  auto* seed_opt =
      app.add_option("--seed", seed, "perturbation stream seed")->envname("JKRES_SEED");

  std::string input_path, basis_path, points_path, group_path;
  std::string mode = "abelian", class_expr = "1", method = "formula";
  int split = 0, n = 0, N = 0, degree_bound = -1;

  CLI::App* cmd_jkres = app.add_subcommand("jkres", "residue of a fraction sum");
  cmd_jkres->add_option("--input", input_path, "fraction-sum JSON file")->required();
  cmd_jkres->add_option("--basis", basis_path, "ordered-basis JSON file")->required();

  CLI::App* cmd_eqres = app.add_subcommand("eqres", "equivariant residue");
  cmd_eqres->add_option("--input", input_path, "fraction-sum JSON file")->required();
  cmd_eqres->add_option("--basis", basis_path, "ordered-basis JSON file")->required();
  cmd_eqres->add_option("--split", split, "leading-block size")->required();

  CLI::App* cmd_int = app.add_subcommand("integrate", "localization integral");
  cmd_int->add_option("--points", points_path, "fixed-point JSON file")->required();
  cmd_int->add_option("--group", group_path, "group-data JSON file")->required();
  cmd_int->add_option("--mode", mode, "abelian|nonabelian|hyperkahler")
      ->check(CLI::IsMember({"abelian", "nonabelian", "hyperkahler"}));

  CLI::App* cmd_hilb = app.add_subcommand("hilb", "Hilbert scheme of points");
  cmd_hilb->require_subcommand(1);
  CLI::App* hilb_int = cmd_hilb->add_subcommand("integrate", "equivariant integral");
  CLI::App* hilb_ker = cmd_hilb->add_subcommand("kernel", "evaluation-kernel test");
  CLI::App* hilb_rank = cmd_hilb->add_subcommand("rank", "evaluation-matrix rank");
  CLI::App* hilb_table = cmd_hilb->add_subcommand("table", "per-partition p and b");
  for (CLI::App* sub : {hilb_int, hilb_ker, hilb_rank, hilb_table}) {
    sub->add_option("-n", n, "number of points")->required();
    sub->add_option("-N", N, "framing rank")->required();
  }
  hilb_int->add_option("--class", class_expr, "cohomology class expression");
  hilb_int->add_option("--method", method, "formula|eqres|oracle")
      ->check(CLI::IsMember({"formula", "eqres", "oracle"}));
  hilb_ker->add_option("--class", class_expr, "cohomology class expression");
  hilb_rank->add_option("--degree-bound", degree_bound, "maximum symmetric degree")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  jkres_set_threads(threads);
  if (seed_opt->count() > 0) jkres_set_seed(seed);

  try {
    if (cmd_jkres->parsed()) return run_residue(input_path, basis_path, false, 0);
    if (cmd_eqres->parsed()) return run_residue(input_path, basis_path, true, split);
    if (cmd_int->parsed()) return run_integrate(points_path, group_path, mode);

    if (hilb_int->parsed()) {
      char* out = nullptr;
      check(jkres_hilb_integrate(class_expr.c_str(), n, N, method.c_str(), &out));
      emit(parse_emitted(adopt(out)));
      return 0;
    }
    if (hilb_ker->parsed()) {
      int member = 0;
      check(jkres_hilb_kernel(class_expr.c_str(), n, N, &member));
      emit(json{{"member", member != 0}});
      return 0;
    }
    if (hilb_rank->parsed()) {
      int rank = 0;
      check(jkres_hilb_rank(n, N, degree_bound < 0 ? n : degree_bound, &rank));
      emit(json{{"rank", rank}});
      return 0;
    }
    if (hilb_table->parsed()) {
      char* out = nullptr;
      check(jkres_hilb_table(n, N, &out));
      emit(parse_emitted(adopt(out)));
      return 0;
    }
  } catch (const cli_error& e) {
    std::cerr << e.message << "\n";
    return e.code;
  }
  std::cerr << "no subcommand\n";
  return 2;
}
