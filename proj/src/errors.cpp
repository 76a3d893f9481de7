#include "birat/errors.hpp"

namespace birat {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::NegativeRadicand: return "NegativeRadicand";
    case Errc::RadicandTooLarge: return "RadicandTooLarge";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::NestedRadical: return "NestedRadical";
    case Errc::SignRefinementFailed: return "SignRefinementFailed";
    case Errc::InvalidPoint: return "InvalidPoint";
    case Errc::NonRationalInput: return "NonRationalInput";
    case Errc::Indeterminate: return "Indeterminate";
    case Errc::DenominatorZero: return "DenominatorZero";
    case Errc::SurfaceMismatch: return "SurfaceMismatch";
    case Errc::DuplicateNodes: return "DuplicateNodes";
    case Errc::TargetNotOnCircle: return "TargetNotOnCircle";
    case Errc::NodeOutOfRange: return "NodeOutOfRange";
    case Errc::DuplicateInput: return "DuplicateInput";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::InvalidEps: return "InvalidEps";
    case Errc::ToleranceUnreachable: return "ToleranceUnreachable";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::UnknownName: return "UnknownName";
    case Errc::GrammarError: return "GrammarError";
    case Errc::ParseError: return "ParseError";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace birat
