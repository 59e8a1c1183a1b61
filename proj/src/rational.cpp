#include "sppe/rational.hpp"

#include <cctype>

#include "sppe/error.hpp"

namespace sppe {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonPositiveBudget: return "NonPositiveBudget";
    case ErrorKind::NegativeValuation: return "NegativeValuation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InconsistentState: return "InconsistentState";
    case ErrorKind::UnknownWitness: return "UnknownWitness";
    case ErrorKind::GoodsLimitExceeded: return "GoodsLimitExceeded";
    case ErrorKind::NoEquilibriumFound: return "NoEquilibriumFound";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorKind::Parse, "malformed rational: \"" + std::string(text) + "\"");
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);

  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rat result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in \"" + std::string(text) + "\"");
    result = Rat(mpz_class(std::string(num), 10), d);
    result.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad(text);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) bad(text);
    std::string digits = std::string(whole) + std::string(frac);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    result = Rat(mpz_class(digits, 10), scale);
    result.canonicalize();
  } else {
    if (!all_digits(body)) bad(text);
    result = Rat(mpz_class(std::string(body), 10));
  }
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rat& value) { return value.get_str(10); }

RatMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return RatMatrix(rows, RatVector(cols, Rat(0)));
}

}  // namespace sppe
