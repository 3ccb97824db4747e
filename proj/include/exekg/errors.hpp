#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exekg {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Turtle syntax error with a 1-based source position and the offending token.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string token, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
              ": " + message + (token.empty() ? "" : " (near '" + token + "')")),
        line_(line),
        column_(column),
        token_(std::move(token)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  int line_;
  int column_;
  std::string token_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class CsvError : public Error {
 public:
  using Error::Error;
};

// Machine-readable outcome of a compatibility or whole-graph check.
enum class ViolationCode {
  MethodNotApplicable,
  MissingParam,
  UnknownParam,
  DuplicateParam,
  ParamTypeMismatch,
  InputArityMismatch,
  InputStructureMismatch,
  OutputArityMismatch,
  UnknownTaskType,
  UnknownMethodType,
  UnknownStructure,
  UnknownIri,
  InvalidName,
  DuplicateEntity,
  MissingMethod,
  MalformedTask,
  NonlinearChain,
  Cycle,
  DanglingInput,
  UnreachableTask,
  MissingStartTask,
  MissingPipeline,
  MissingDataPath,
  EmptyPipeline,
};

const char* to_string(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string message;
  std::vector<std::string> iris;  // offending node IRIs, if any

  std::string describe() const;
};

// Carries the violation list produced by a rejected build or load.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(summarize(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& violations);
  std::vector<Violation> violations_;
};

// A task failed while running; carries the IRI of the failing task.
class ExecutionError : public Error {
 public:
  ExecutionError(std::string task_iri, const std::string& message)
      : Error("task <" + task_iri + ">: " + message), task_iri_(std::move(task_iri)) {}

  const std::string& task_iri() const { return task_iri_; }

 private:
  std::string task_iri_;
};

}  // namespace exekg
