#include "votepos/rational.hpp"

#include <cctype>
#include <ostream>

#include "votepos/error.hpp"

namespace votepos {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotNonincreasing: return "NotNonincreasing";
    case ErrorCode::ConstantRule: return "ConstantRule";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::CompositionMismatch: return "CompositionMismatch";
    case ErrorCode::OddM: return "OddM";
    case ErrorCode::FormMismatch: return "FormMismatch";
    case ErrorCode::UnsupportedM: return "UnsupportedM";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  const std::string original(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  mpq_class value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(ErrorCode::ParseError, "malformed fraction '" + original + "'");
    const mpz_class d{std::string(den)};
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + original + "'");
    value = mpq_class(mpz_class(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw Error(ErrorCode::ParseError, "malformed decimal '" + original + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const mpz_class digits{std::string(whole.empty() ? "0" : whole) + std::string(frac)};
    value = mpq_class(digits, scale);
  } else {
    if (!all_digits(s)) throw Error(ErrorCode::ParseError, "malformed number '" + original + "'");
    value = mpq_class(mpz_class(std::string(s)));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(value);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

mpz_class floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return q;
}

mpz_class ceil(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return q;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace votepos
