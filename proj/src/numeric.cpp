#include "mssp/numeric.hpp"

#include <cctype>
#include <cstdio>

namespace mssp {

Rational parse_rational(const std::string& text) {
  auto bad = [&]() { throw std::invalid_argument("malformed number '" + text + "'"); };
  if (text.empty()) bad();
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational q;
    if (q.set_str(text, 10) != 0) bad();
    if (q.get_den() == 0) bad();
    q.canonicalize();
    return q;
  }
  size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool any = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      --scale;
      any = true;
    }
  }
  if (!any) bad();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
    long e = 0;
    bool edig = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      e = e * 10 + (text[i++] - '0');
      edig = true;
      if (e > 100000) bad();
    }
    if (!edig) bad();
    scale += eneg ? -e : e;
  }
  if (i != text.size()) bad();
  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q;
  if (scale >= 0) {
    q = Rational(num * pow10);
  } else {
    q = Rational(num, pow10);
    q.canonicalize();
  }
  if (neg) q = -q;
  return q;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string NumTraits<double>::to_string(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace mssp
