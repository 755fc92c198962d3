#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mpv/cli/session.hpp"

namespace {

std::optional<std::uint64_t> parse_field(const std::string& s) {
  if (s == "QQ") return 0;
  if (s.rfind("GF:", 0) == 0 && s.size() > 3 && s.size() < 23 &&
      s.find_first_not_of("0123456789", 3) == std::string::npos) {
    auto p = std::stoull(s.substr(3));
    try {
      mpv::PrimeField check(p);
      return p;
    } catch (const mpv::Error&) {
    }
  }
  throw CLI::ValidationError("--field", "expected QQ or GF:<p> with p an odd prime below 2^62");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations with multi-projective varieties and multi-rational maps"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Execute a script");
  std::string path, field;
  bool as_json = false;
  mpv::cli::Options opt;
  run->add_option("script", path, "Script file")->required()->check(CLI::ExistingFile);
  run->add_flag("--json", as_json, "Emit JSON records instead of text");
  run->add_option("--seed", opt.seed, "Seed for random choices");
  run->add_option("--field", field, "Override the script field: QQ or GF:<p>");
  run->add_option("--timeout", opt.timeout, "Seconds allowed per statement")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
    if (!field.empty()) opt.field = parse_field(field);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  mpv::cli::Script script;
  try {
    script = mpv::cli::parse_script(text.str());
  } catch (const mpv::Error& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 2;
  }

  mpv::cli::Session session(opt);
  auto outcome = session.run(script);
  if (as_json) {
    std::cout << session.to_json().dump(2) << "\n";
  } else {
    std::cout << session.text();
  }
  if (outcome != mpv::cli::Outcome::Ok) std::cerr << path << ": " << session.error_message() << "\n";
  return static_cast<int>(outcome);
}
