#include "siltlab/field.hpp"

#include <cctype>

namespace siltlab {

Q parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw InvalidInput("empty rational");
  auto valid_int = [](const std::string& x) {
    std::size_t i = (x.size() > 0 && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
    return true;
  };
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw InvalidInput("not a rational: '" + s + "'");
  if (num[0] == '+') num = num.substr(1);
  if (den[0] == '+') den = den.substr(1);
  mpz_class n(num), d(den);
  if (d == 0) throw InvalidInput("zero denominator in '" + s + "'");
  Q r(n, d);
  r.canonicalize();
  return r;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (p != 2 && p != 3 && p != 5 && p != 7)
    throw FieldMismatch("unsupported prime " + std::to_string(p) + " (supported: 2, 3, 5, 7)");
  return {p};
}

}  // namespace siltlab
