#include "supermap/rational.hpp"

#include "supermap/errors.hpp"

#include <cmath>
#include <vector>

namespace supermap {

Rational parse_rational(const std::string& num, const std::string& den) {
  try {
    Integer n(num);
    Integer d(den);
    if (d == 0) throw SchemaError("zero denominator");
    return Rational(n) / Rational(d);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const SchemaError*>(&e)) throw;
    throw SchemaError("bad rational " + num + "/" + den);
  }
}

Rational factorial(unsigned k) {
  static const std::vector<Rational> table = [] {
    std::vector<Rational> t(32);
    t[0] = 1;
    for (unsigned i = 1; i < t.size(); ++i) t[i] = t[i - 1] * Rational(i);
    return t;
  }();
  if (k < table.size()) return table[k];
  Rational r = table.back();
  for (unsigned i = static_cast<unsigned>(table.size()); i <= k; ++i) r *= Rational(i);
  return r;
}

Rational rational_from_double(double x, int bits) {
  if (!std::isfinite(x)) throw DomainError("non-finite value cannot be projected to a rational");
  const double scaled = std::nearbyint(std::ldexp(x, bits));
  Integer num(scaled);
  Integer den = Integer(1) << bits;
  return Rational(num) / Rational(den);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace supermap
