#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgw/workspace.hpp"

namespace dgw {

enum class Verdict { pass, partial, fail, error };

std::string to_string(Verdict v);
/// 0 for pass and partial, 1 for a failed check, 2 for structural errors.
int exit_code(Verdict v);

struct RunOptions {
  std::optional<int> depth;
  std::optional<std::pair<int, int>> window;
  bool timing = false;
};

struct TaskReport {
  std::string task;
  std::string kind;
  Verdict verdict = Verdict::pass;
  std::string witness;  // always set for fail and error
  json data = json::object();
  double seconds = 0;
  bool timed = false;

  json to_json() const;
  std::string to_text() const;
};

/// Task kinds understood by run_task, sorted.
const std::vector<std::string>& task_kinds();

/// Runs one named task. Unknown names and structural problems become error
/// reports; nothing escapes as an exception.
TaskReport run_task(const Workspace& ws, const std::string& name, const RunOptions& options = {});

struct SuiteReport {
  std::vector<TaskReport> reports;  // sorted by "file/task"
  std::vector<std::pair<std::string, std::string>> load_errors;  // file, message
  Verdict verdict() const;
  json to_json() const;
  std::string to_text() const;
};

/// Loads every *.json workspace in a directory and runs all of its tasks.
SuiteReport run_suite(const std::string& directory, const RunOptions& options = {});

/// "a:b" -> (a, b); throws StructuralError.
std::pair<int, int> parse_window(const std::string& text);

}  // namespace dgw
