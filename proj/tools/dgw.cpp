#include <CLI11.hpp>

#include <iostream>

#include "dgw/errors.hpp"
#include "dgw/tasks.hpp"

using namespace dgw;

namespace {

enum class Format { text, json };

int emit_error(const std::string& message, Format format) {
  if (format == Format::json)
    std::cout << json{{"verdict", "error"}, {"error", message}}.dump(2) << "\n";
  else
    std::cout << "verdict: error\nerror: " << message << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dgw: exact DG-module workspaces"};
  app.require_subcommand(1);

  std::string file, task, window, directory;
  std::optional<int> depth;
  Format format = Format::text;
  bool timing = false;
  const std::map<std::string, Format> formats{{"text", Format::text}, {"json", Format::json}};

  auto* validate = app.add_subcommand("validate", "Load and validate a workspace");
  validate->add_option("file", file, "Workspace JSON")->required();
  validate->add_option("--format", format)->transform(CLI::CheckedTransformer(formats));

  auto* run = app.add_subcommand("run", "Run one named task of a workspace");
  run->add_option("file", file, "Workspace JSON")->required();
  run->add_option("--task", task, "Task name")->required();
  run->add_option("--depth", depth, "Resolution depth override");
  run->add_option("--window", window, "Degree window a:b override");
  run->add_option("--format", format)->transform(CLI::CheckedTransformer(formats));
  run->add_flag("--timing", timing, "Append wall-clock time");

  auto* suite = app.add_subcommand("suite", "Run every task of every workspace in a directory");
  suite->add_option("dir", directory, "Directory of workspace JSON files")->required();
  suite->add_option("--format", format)->transform(CLI::CheckedTransformer(formats));
  suite->add_flag("--timing", timing, "Append wall-clock times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate) {
      const auto ws = load_workspace_file(file);
      if (format == Format::json)
        std::cout << json{{"verdict", "pass"}, {"objects", ws.object_count()}, {"tasks", ws.tasks.size()}}.dump(2)
                  << "\n";
      else
        std::cout << "verdict: pass\nobjects: " << ws.object_count() << "\ntasks: " << ws.tasks.size() << "\n";
      return 0;
    }
    RunOptions options;
    options.depth = depth;
    options.timing = timing;
    if (!window.empty()) options.window = parse_window(window);
    if (*run) {
      const auto ws = load_workspace_file(file);
      const auto report = run_task(ws, task, options);
      std::cout << (format == Format::json ? report.to_json().dump(2) + "\n" : report.to_text());
      return exit_code(report.verdict);
    }
    const auto report = run_suite(directory, options);
    std::cout << (format == Format::json ? report.to_json().dump(2) + "\n" : report.to_text());
    return exit_code(report.verdict());
  } catch (const StructuralError& e) {
    return emit_error(e.what(), format);
  } catch (const std::exception& e) {
    return emit_error(std::string("internal error: ") + e.what(), format);
  }
}
