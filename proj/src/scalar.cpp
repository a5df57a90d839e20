#include "niltri/scalar.hpp"

#include <cctype>

namespace niltri {

namespace {

bool is_prime_u64(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t mod_reduce(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
  // extended Euclid; a in 1..p-1
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return mod_reduce(t, p);
}

}  // namespace

FieldSpec FieldSpec::prime(std::int64_t p) {
  if (p == 2) throw Error(Errc::char_two, "characteristic 2 is not admitted");
  if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime_u64(p))
    throw Error(Errc::not_prime, "not an admissible prime: " + std::to_string(p));
  return FieldSpec(FieldKind::prime, p);
}

FieldSpec FieldSpec::rationals() { return FieldSpec(FieldKind::rational, 0); }

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "rational") return rationals();
  if (text.size() >= 2 && text[0] == 'q') {
    std::int64_t p = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("bad field descriptor '" + text + "'", 1, static_cast<int>(i + 1));
      p = p * 10 + (text[i] - '0');
      if (p >= (std::int64_t{1} << 31)) throw Error(Errc::not_prime, "prime too large");
    }
    return prime(p);
  }
  throw ParseError("bad field descriptor '" + text + "'", 1, 1);
}

std::string FieldSpec::to_string() const {
  return kind_ == FieldKind::prime ? "q" + std::to_string(p_) : "rational";
}

Scalar Scalar::zero(const FieldSpec& f) { return Scalar(f); }

Scalar Scalar::one(const FieldSpec& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldSpec& f, std::int64_t v) {
  Scalar s(f);
  if (f.kind() == FieldKind::prime)
    s.res_ = mod_reduce(v, f.p());
  else
    s.rat_ = v;
  return s;
}

Scalar Scalar::from_rational(const FieldSpec& f, const BigRational& q) {
  if (f.kind() == FieldKind::prime) {
    // embed num/den via modular inverse; den must be invertible mod p
    using boost::multiprecision::cpp_int;
    cpp_int num = boost::multiprecision::numerator(q);
    cpp_int den = boost::multiprecision::denominator(q);
    std::int64_t p = f.p();
    std::int64_t n = static_cast<std::int64_t>(num % p);
    std::int64_t d = static_cast<std::int64_t>(den % p);
    n = mod_reduce(n, p);
    d = mod_reduce(d, p);
    if (d == 0) throw Error(Errc::division_by_zero, "denominator not invertible mod p");
    Scalar s(f);
    s.res_ = (n * mod_inv(d, p)) % p;
    return s;
  }
  Scalar s(f);
  s.rat_ = q;
  return s;
}

Scalar Scalar::parse(const FieldSpec& f, const std::string& text) {
  std::size_t i = 0;
  auto bad = [&](const std::string& m) { return ParseError(m, 1, static_cast<int>(i + 1)); };
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
  if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
    throw bad("expected digit in scalar '" + text + "'");
  boost::multiprecision::cpp_int num = 0, den = 1;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
    num = num * 10 + (text[i++] - '0');
  if (i < text.size() && text[i] == '/') {
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw bad("expected denominator in scalar '" + text + "'");
    den = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      den = den * 10 + (text[i++] - '0');
    if (den == 0) throw Error(Errc::division_by_zero, "zero denominator in '" + text + "'");
  }
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) throw bad("trailing characters in scalar '" + text + "'");
  BigRational q(num, den);
  if (neg) q = -q;
  return from_rational(f, q);
}

bool Scalar::is_zero() const {
  return field_.kind() == FieldKind::prime ? res_ == 0 : rat_.is_zero();
}

bool Scalar::is_one() const {
  return field_.kind() == FieldKind::prime ? res_ == 1 : rat_ == 1;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (field_ != o.field_)
    throw Error(Errc::field_mismatch,
                "scalars from different fields: " + field_.to_string() + " vs " + o.field_.to_string());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  Scalar r(field_);
  if (field_.kind() == FieldKind::prime)
    r.res_ = (res_ + o.res_) % field_.p();
  else
    r.rat_ = rat_ + o.rat_;
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same_field(o);
  Scalar r(field_);
  if (field_.kind() == FieldKind::prime)
    r.res_ = mod_reduce(res_ - o.res_, field_.p());
  else
    r.rat_ = rat_ - o.rat_;
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  Scalar r(field_);
  if (field_.kind() == FieldKind::prime)
    r.res_ = (res_ * o.res_) % field_.p();
  else
    r.rat_ = rat_ * o.rat_;
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::operator-() const {
  Scalar r(field_);
  if (field_.kind() == FieldKind::prime)
    r.res_ = mod_reduce(-res_, field_.p());
  else
    r.rat_ = -rat_;
  return r;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error(Errc::division_by_zero, "inverse of zero");
  Scalar r(field_);
  if (field_.kind() == FieldKind::prime)
    r.res_ = mod_inv(res_, field_.p());
  else
    r.rat_ = 1 / rat_;
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  check_same_field(o);
  return field_.kind() == FieldKind::prime ? res_ == o.res_ : rat_ == o.rat_;
}

int Scalar::compare(const Scalar& o) const {
  check_same_field(o);
  if (field_.kind() == FieldKind::prime) return res_ < o.res_ ? -1 : res_ > o.res_ ? 1 : 0;
  return rat_ < o.rat_ ? -1 : rat_ > o.rat_ ? 1 : 0;
}

std::string Scalar::to_string() const {
  if (field_.kind() == FieldKind::prime) return std::to_string(res_);
  return rat_.str();
}

std::vector<Scalar> enumerate_elements(const FieldSpec& field) {
  if (!field.is_finite()) throw Error(Errc::infinite_field, "cannot enumerate the rationals");
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(field.p()));
  for (std::int64_t v = 0; v < field.p(); ++v) out.push_back(Scalar::from_int(field, v));
  return out;
}

}  // namespace niltri
