#include "odeinv/rational.hpp"

#include <stdexcept>

namespace odeinv {

Rational make_rational(long num, long den) {
  if (den == 0)
    throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational &q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + s + "'"); };
  if (s.empty())
    throw bad();
  auto digits = [](const std::string &t, bool allow_sign) {
    size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+'))
      ++i;
    if (i == t.size())
      return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9')
        return false;
    return true;
  };
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+'))
      ip = ip.substr(1);
    if (ip.empty())
      ip = "0";
    if (!digits(ip, false) || (!fp.empty() && !digits(fp, false)))
      throw bad();
    mpz_class num(ip + fp, 10), den(1);
    for (size_t i = 0; i < fp.size(); ++i)
      den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!digits(s, true))
      throw bad();
    return Rational(mpz_class(s[0] == '+' ? s.substr(1) : s, 10));
  }
  std::string n = s.substr(0, slash), d = s.substr(slash + 1);
  if (!digits(n, true) || !digits(d, false))
    throw bad();
  mpz_class den(d, 10);
  if (den == 0)
    throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(mpz_class(n[0] == '+' ? n.substr(1) : n, 10), den);
  q.canonicalize();
  return q;
}

double to_double(const Rational &q) { return q.get_d(); }

Rational factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

Rational power(const Rational &q, int n) {
  if (n < 0) {
    if (q == 0)
      throw std::domain_error("zero to a negative power");
    return power(Rational(1 / q), -n);
  }
  Rational r(1), b(q);
  while (n) {
    if (n & 1)
      r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

} // namespace odeinv
