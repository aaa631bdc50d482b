// prokit check|profile|sweep|axioms <taskfile>
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "prokit/harness.hpp"

namespace {

constexpr int kUsageError = 64;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read task file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int usage_error(const std::string& message) {
  std::cerr << "prokit: " << message << "\n";
  return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proregularity profiles and checks over finite commutative rings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(prokit::kToolVersion));

  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned m_max = 0;
  int jobs = 0;
  std::string taskfile;

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("taskfile", taskfile, "task file (JSON, schema 1)")->required();
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--seed", seed, "seed for random batteries");
    sub->add_option("--m-max", m_max, "override the exponent budget")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", jobs, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
    return sub;
  };
  add("check", "run every analysis and sweep in the task");
  CLI::App* profile = add("profile", "run only the profile analyses");
  CLI::App* sweep = add("sweep", "run only the family sweep");
  CLI::App* axioms = add("axioms", "check the ring (and structure modules) against the axioms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    std::string text = read_file(taskfile);
    prokit::Report report;
    if (axioms->parsed()) {
      report = prokit::check_axioms(text);
    } else {
      prokit::TaskSpec task = prokit::parse_spec(text);
      prokit::RunOptions options;
      options.seed = seed;
      options.m_max = m_max;
      options.jobs = jobs;
      if (profile->parsed()) options.profiles_only = true;
      if (sweep->parsed()) {
        if (!task.sweep) return usage_error("task has no sweep section");
        options.analyses = false;
      }
      report = prokit::run_task(task, options);
    }
    report.seed = seed;
    std::cout << prokit::emit_report(report, *prokit::format_from_string(format));
    return report.exit_code();
  } catch (const prokit::ParseError& e) {
    std::string where = e.line() ? "line " + std::to_string(e.line()) : "";
    if (!e.field().empty()) where += (where.empty() ? "" : ", ") + std::string("field ") + e.field();
    return usage_error("parse error" + (where.empty() ? std::string() : " (" + where + ")") + ": " + e.what());
  } catch (const prokit::UnknownReference& e) {
    return usage_error(std::string("unknown reference: ") + e.what());
  } catch (const prokit::BoundViolation& e) {
    return usage_error(std::string("bound violation: ") + e.what());
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
}
