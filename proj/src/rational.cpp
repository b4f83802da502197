#include "tropdiv/rational.hpp"

#include <limits>

#include "tropdiv/errors.hpp"

namespace tropdiv {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!is_digits(num) || (slash != std::string_view::npos && !is_digits(den))) {
    throw ValidationError("not a rational number: '" + std::string(text) + "'");
  }
  Rational r;
  if (r.set_str(std::string(text[0] == '+' ? text.substr(1) : text), 10) != 0) {
    throw ValidationError("not a rational number: '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw ValidationError("zero denominator: '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

std::int64_t to_int64(const Integer& x) {
  if (!x.fits_slong_p()) throw ConsistencyError("integer overflow: " + x.get_str());
  return static_cast<std::int64_t>(x.get_si());
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace tropdiv
