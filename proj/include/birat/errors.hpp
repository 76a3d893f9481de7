#pragma once

#include <stdexcept>
#include <string>

namespace birat {

// Machine-readable error codes surfaced through the CLI as {"error": <name>, ...}.
enum class Errc {
  ZeroDenominator,
  NegativeRadicand,
  RadicandTooLarge,
  DivisionByZero,
  ContextMismatch,
  NestedRadical,
  SignRefinementFailed,
  InvalidPoint,
  NonRationalInput,
  Indeterminate,
  DenominatorZero,
  SurfaceMismatch,
  DuplicateNodes,
  TargetNotOnCircle,
  NodeOutOfRange,
  DuplicateInput,
  SearchExhausted,
  InvalidEps,
  ToleranceUnreachable,
  NotUnimodular,
  UnknownName,
  GrammarError,
  ParseError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& detail);
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& detail = {});

}  // namespace birat
