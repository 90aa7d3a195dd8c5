#include "gmkp/variant.hpp"

#include "gmkp/errors.hpp"

namespace gmkp {

Variant Variant::mkp_d_fractions(std::int64_t c_max, std::int64_t count) {
  std::vector<Rational> d;
  for (std::int64_t q = 2; q <= count; ++q) d.emplace_back(c_max, q);
  return mkp_d(std::move(d));
}

std::string Variant::name() const {
  switch (algorithm) {
    case Algorithm::LP: return "lp";
    case Algorithm::KP: return "kp";
    case Algorithm::TwoMKP: return "2mkp";
    case Algorithm::ThreeMKP: return "3mkp";
    case Algorithm::MkpD: return "mkpd";
    case Algorithm::MkpPrime: return "mkp-prime";
  }
  return "?";
}

Variant Variant::parse(std::string_view name) {
  if (name == "lp") return lp();
  if (name == "kp") return kp();
  if (name == "2mkp") return two_mkp();
  if (name == "3mkp") return three_mkp();
  if (name == "mkpd") return mkp_d({});
  if (name == "mkp-prime" || name == "mkpp") return mkp_prime();
  throw InputError("unknown algorithm '" + std::string(name) + "'");
}

std::vector<Rational> parse_thresholds(std::string_view text) {
  std::vector<Rational> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view token = text.substr(0, comma);
    if (!token.empty()) {
      Rational d = Rational::parse(token);
      if (d <= Rational(0)) throw InputError("threshold must be positive: '" + std::string(token) + "'");
      out.push_back(d);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace gmkp
