#include "hetmod/scalar.hpp"

#include <cctype>

namespace hetmod {

GaussRat::GaussRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRat GaussRat::frac(long p, long q, long ip, long iq) {
  return GaussRat(mpq_class(p, q), mpq_class(ip, iq));
}

GaussRat GaussRat::inverse() const {
  if (isZero()) throw std::domain_error("division by zero Gaussian rational");
  mpq_class n = norm();
  return GaussRat(re_ / n, -im_ / n);
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string GaussRat::str() const {
  if (isZero()) return "0";
  std::string out;
  if (sgn(re_) != 0) out = re_.get_str();
  if (sgn(im_) != 0) {
    if (!out.empty()) out += sgn(im_) < 0 ? " - " : " + ";
    else if (sgn(im_) < 0) out += "-";
    mpq_class a = abs(im_);
    if (a != 1) out += a.get_str() + " ";
    out += "i";
  }
  return out;
}

Scalar::Scalar(const GaussRat& c) {
  if (!c.isZero()) c_.push_back(c);
}

Scalar::Scalar(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { trim(); }

void Scalar::trim() {
  while (!c_.empty() && c_.back().isZero()) c_.pop_back();
}

Scalar Scalar::conj() const {
  Scalar r = *this;
  for (auto& c : r.c_) c = c.conj();
  return r;
}

GaussRat Scalar::eval(const GaussRat& alpha0) const {
  GaussRat acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * alpha0 + *it;
  return acc;
}

GaussRat evaluate_alpha(const Scalar& x, const GaussRat& alpha0) {
  if (!alpha0.isReal()) throw std::invalid_argument("anomaly constant must be real");
  return x.eval(alpha0);
}

Scalar Scalar::divideByUnit(const Scalar& d) const {
  if (d.isZero() || !d.isConstant())
    throw std::domain_error("division by a non-unit scalar");
  GaussRat inv = d.c_[0].inverse();
  Scalar r = *this;
  for (auto& c : r.c_) c *= inv;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  if (x.c_.empty() || y.c_.empty()) return Scalar();
  std::vector<GaussRat> r(x.c_.size() + y.c_.size() - 1);
  for (size_t i = 0; i < x.c_.size(); ++i)
    for (size_t j = 0; j < y.c_.size(); ++j) r[i + j] += x.c_[i] * y.c_[j];
  return Scalar(std::move(r));
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

// Terms are printed one real or imaginary monomial at a time so the parser
// can read them back without parentheses.
std::string Scalar::str() const {
  if (c_.empty()) return "0";
  std::string out;
  auto emit = [&](const mpq_class& v, bool imag, int k) {
    if (sgn(v) == 0) return;
    if (out.empty()) {
      if (sgn(v) < 0) out += "-";
    } else {
      out += sgn(v) < 0 ? " - " : " + ";
    }
    mpq_class a = abs(v);
    std::vector<std::string> f;
    if (a != 1 || (!imag && k == 0)) f.push_back(a.get_str());
    if (imag) f.push_back("i");
    if (k == 1) f.push_back("a");
    if (k > 1) f.push_back("a^" + std::to_string(k));
    for (size_t j = 0; j < f.size(); ++j) out += (j ? " " : "") + f[j];
  };
  for (size_t k = 0; k < c_.size(); ++k) {
    emit(c_[k].re(), false, static_cast<int>(k));
    emit(c_[k].im(), true, static_cast<int>(k));
  }
  return out;
}

namespace {

struct ScalarParser {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == '*')) ++pos;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad scalar '" + s + "': " + why);
  }
  std::string digits() {
    size_t b = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(b, pos - b);
  }

  Scalar run() {
    Scalar acc;
    skip();
    if (pos >= s.size()) fail("empty");
    bool first = true;
    while (true) {
      skip();
      if (pos >= s.size()) break;
      int sign = 1;
      bool sawSign = false;
      while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') sign = -sign;
        sawSign = true;
        ++pos;
        skip();
      }
      if (!first && !sawSign) fail("missing operator between terms");
      first = false;
      mpq_class coeff = sign;
      bool imag = false;
      int power = 0;
      int factors = 0;
      while (true) {
        skip();
        if (pos >= s.size() || s[pos] == '+' || s[pos] == '-') break;
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
          mpq_class v(digits());
          if (pos < s.size() && s[pos] == '/') {
            ++pos;
            std::string d = digits();
            if (d.empty()) fail("missing denominator");
            mpz_class den(d);
            if (den == 0) fail("zero denominator");
            v /= mpq_class(den);
          }
          coeff *= v;
        } else if (c == 'i') {
          if (imag) fail("repeated i");
          imag = true;
          ++pos;
        } else if (c == 'a') {
          ++pos;
          int k = 1;
          if (pos < s.size() && s[pos] == '^') {
            ++pos;
            std::string d = digits();
            if (d.empty()) fail("missing exponent");
            k = std::stoi(d);
          }
          power += k;
        } else {
          fail(std::string("unexpected character '") + c + "'");
        }
        ++factors;
      }
      if (factors == 0) fail("dangling sign");
      coeff.canonicalize();
      std::vector<GaussRat> cs(power + 1);
      cs[power] = imag ? GaussRat(0, coeff) : GaussRat(coeff, 0);
      acc += Scalar(std::move(cs));
    }
    return acc;
  }
};

}  // namespace

Scalar Scalar::parse(const std::string& text) { return ScalarParser{text}.run(); }

GaussRat parseGaussRat(const std::string& text) {
  Scalar s = Scalar::parse(text);
  if (!s.isConstant()) throw std::invalid_argument("expected a constant, got '" + text + "'");
  return s.constant();
}

}  // namespace hetmod
