#include "solvcoh/rational.hpp"

namespace solvcoh {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in rational literal '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw Error("cannot parse rational '" + text + "': " + e.what());
  }
}

std::string rational_to_string(const Rational& value) {
  std::string out = numerator(value).str();
  if (denominator(value) != 1) {
    out += "/";
    out += denominator(value).str();
  }
  return out;
}

}  // namespace solvcoh
