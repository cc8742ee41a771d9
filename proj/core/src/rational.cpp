#include "cusptorsion/rational.hpp"

#include <cctype>

namespace cusptorsion {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
              (c == '-' && (i == 0 || text[i - 1] == '/'));
    if (!ok) throw ValidationError("malformed rational literal: '" + text + "'");
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    throw ValidationError("malformed rational literal: '" + text + "'");
  }
  if (q.get_den() == 0) throw ValidationError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw ValidationError("division by zero in Q(i)");
  Rational n2 = o.norm2();
  Rational r = (re * o.re + im * o.im) / n2;
  Rational i = (im * o.re - re * o.im) / n2;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

namespace {

// Splits "A", "A+B*i", "A-B*i", "B*i" at the sign separating the two parts.
// The '-' of a leading negative real part and the '-' after '/' are not
// separators.
bool split_complex(const std::string& s, std::string* re_part, std::string* im_part) {
  size_t star = s.find("*i");
  if (star == std::string::npos) {
    *re_part = s;
    im_part->clear();
    return true;
  }
  if (star + 2 != s.size()) return false;
  std::string body = s.substr(0, star);
  // Find the last '+' or '-' that is not at position 0 and not after '/'.
  size_t cut = std::string::npos;
  for (size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '/') {
      cut = i;
      break;
    }
  }
  if (cut == std::string::npos) {
    re_part->clear();
    *im_part = body;
    return true;
  }
  *re_part = body.substr(0, cut);
  *im_part = body[cut] == '+' ? body.substr(cut + 1) : body.substr(cut);
  return true;
}

}  // namespace

GQ parse_gaussian(const std::string& text) {
  std::string re_part, im_part;
  if (!split_complex(text, &re_part, &im_part)) {
    throw ValidationError("malformed complex-rational literal: '" + text + "'");
  }
  GQ z;
  if (!re_part.empty()) z.re = parse_rational(re_part);
  if (!im_part.empty()) z.im = parse_rational(im_part);
  return z;
}

std::string format_gaussian(const GQ& z) {
  if (sgn(z.im) == 0) return format_rational(z.re);
  std::string im = format_rational(z.im) + "*i";
  if (sgn(z.re) == 0) return im;
  if (sgn(z.im) > 0) return format_rational(z.re) + "+" + im;
  return format_rational(z.re) + im;  // '-' carried by the imaginary part
}

}  // namespace cusptorsion
