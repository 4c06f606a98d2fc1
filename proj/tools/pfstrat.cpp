// Batch front end: pfstrat <command> <fixture.json> [--primes 3,5,7] [--budget N] [--out path]
// Exit status: 0 all verdicts pass, 1 a verdict failed, 2 error (error JSON on stdout).
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pfs/fixture.hpp"

namespace {

std::vector<std::uint32_t> parse_primes(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(item, &used);
      if (used != item.size() || v > 0xffffffffUL) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      pfs::fail(pfs::ErrorKind::InvalidArgument, "bad field size '" + item + "' in --primes");
    }
  }
  if (out.empty()) pfs::fail(pfs::ErrorKind::InvalidArgument, "--primes is empty");
  return out;
}

void emit(const pfs::Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) pfs::fail(pfs::ErrorKind::IoError, "cannot write '" + out_path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galois stratification toolkit over finite fields"};
  app.require_subcommand(1);
  std::string fixture, primes, out_path;
  double budget = 0;
  bool have_budget = false;

  const std::pair<const char*, const char*> commands[] = {
      {"eval", "evaluate a formula fixture over the field sweep"},
      {"bijection", "check a definable bijection fiber by fiber"},
      {"stratify", "evaluate a Galois stratification (and compare with its formula, if any)"},
      {"eliminate", "eliminate the last coordinate and validate against the projection"},
      {"chi", "compute the motivic class and compare its specializations with point counts"},
      {"jets", "jet counts, truncation images and empirical Greenberg constants"},
  };
  for (const auto& [cmd, help] : commands) {
    auto* sub = app.add_subcommand(cmd, help);
    sub->add_option("fixture", fixture, "fixture document (JSON)")->required();
    sub->add_option("--primes", primes, "comma-separated field sizes overriding the fixture sweep");
    sub->add_option("--budget", budget, "enumeration budget in bits")->each([&](const std::string&) { have_budget = true; });
    sub->add_option("--out", out_path, "write the report here instead of stdout");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help is a success; any other usage error is an error like the rest.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    pfs::RunOptions opts;
    if (!primes.empty()) opts.fields = parse_primes(primes);
    if (have_budget) opts.budget_bits = budget;
    auto doc = pfs::load_fixture(fixture);
    auto r = pfs::run_fixture(command, doc, opts);
    emit(r.report, out_path);
    return r.pass ? 0 : 1;
  } catch (const pfs::Error& e) {
    auto j = pfs::error_json(e);
    j["command"] = command;
    j["fixture"] = fixture;
    std::cout << j.dump(2) << "\n";
    return 2;
  }
}
