#include "niltri/algebra.hpp"

#include <bit>
#include <cctype>
#include <sstream>

#include "niltri/error.hpp"

namespace niltri {

Scalar Element::coeff(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero(alg_.field()) : it->second;
}

void Element::add_term(Monomial m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool Element::operator==(const Element& o) const {
  if (!(alg_ == o.alg_)) throw Error(Errc::algebra_mismatch, "comparing across algebras");
  return terms_ == o.terms_;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  const Scalar zero = Scalar::zero(alg_.field());
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar v = c;
    if (c < zero) {
      os << (first ? "-" : " - ");
      v = -c;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    os << v.to_string();
    if (m != 0) {
      os << '*';
      for (int i = 1; i <= kMaxGenerators; ++i)
        if (m & (Monomial{1} << (i - 1))) os << 'X' << i;
    }
  }
  return os.str();
}

Element Algebra::zero() const { return Element(*this); }

Element Algebra::unit() const {
  Element e(*this);
  e.add_term(0, Scalar::one(field()));
  return e;
}

Element Algebra::generator(int i) const {
  if (i < 1 || i > generators())
    throw Error(Errc::bad_index, "generator index " + std::to_string(i) + " out of range");
  return from_monomial(Monomial{1} << (i - 1), Scalar::one(field()));
}

Element Algebra::from_monomial(Monomial m, const Scalar& c) const {
  if (m >> generators())
    throw Error(Errc::bad_index, "monomial support exceeds generator count");
  Element e(*this);
  e.add_term(m, c);
  return e;
}

std::vector<Monomial> Algebra::basis() const {
  std::vector<Monomial> out;
  out.reserve(dimension());
  for (std::uint64_t m = 0; m < dimension(); ++m) out.push_back(static_cast<Monomial>(m));
  return out;
}

void Algebra::check_same_algebra(const Element& a) const {
  if (!(a.algebra() == *this)) throw Error(Errc::algebra_mismatch, "element from another algebra");
}

Element Algebra::add(const Element& a, const Element& b) const {
  check_same_algebra(a);
  check_same_algebra(b);
  Element r = a;
  for (const auto& [m, c] : b.terms()) r.add_term(m, c);
  return r;
}

Element Algebra::sub(const Element& a, const Element& b) const {
  check_same_algebra(a);
  check_same_algebra(b);
  Element r = a;
  for (const auto& [m, c] : b.terms()) r.add_term(m, -c);
  return r;
}

Element Algebra::scale(const Scalar& c, const Element& a) const {
  check_same_algebra(a);
  Element r(*this);
  for (const auto& [m, x] : a.terms()) r.add_term(m, c * x);
  return r;
}

Element Algebra::mul_gen_impl(Monomial m, int i,
                              std::map<std::pair<Monomial, int>, Element>* cache) const {
  const Monomial bit = Monomial{1} << (i - 1);
  if (!(m & bit)) {
    return from_monomial(m | bit, Scalar::one(field()));
  }
  if (cache) {
    auto it = cache->find({m, i});
    if (it != cache->end()) return it->second;
  }
  // X_i already divides M: fold the square through the defining relation.
  Element r(*this);
  for (int j = 1; j < i; ++j) {
    const Scalar& t = t_->at(i, j);
    if (t.is_zero()) continue;
    r = add(r, scale(t, mul_gen_impl(m, j, cache)));
  }
  if (cache) cache->emplace(std::make_pair(m, i), r);
  return r;
}

Element Algebra::mul_monomial_generator(Monomial m, int i, bool memoize) const {
  if (i < 1 || i > generators()) throw Error(Errc::bad_index, "generator index out of range");
  if (m >> generators()) throw Error(Errc::bad_index, "monomial support out of range");
  std::map<std::pair<Monomial, int>, Element> cache;
  return mul_gen_impl(m, i, memoize ? &cache : nullptr);
}

Element Algebra::mul(const Element& a, const Element& b) const {
  check_same_algebra(a);
  check_same_algebra(b);
  std::map<std::pair<Monomial, int>, Element> cache;
  Element result(*this);
  for (const auto& [mb, cb] : b.terms()) {
    // reduce X_mb against each term of a, generator by generator (ascending)
    for (const auto& [ma, ca] : a.terms()) {
      Element partial = from_monomial(ma, Scalar::one(field()));
      for (int i = 1; i <= generators(); ++i) {
        if (!(mb & (Monomial{1} << (i - 1)))) continue;
        Element next(*this);
        for (const auto& [m, c] : partial.terms())
          next = add(next, scale(c, mul_gen_impl(m, i, &cache)));
        partial = next;
        if (partial.is_zero()) break;
      }
      result = add(result, scale(ca * cb, partial));
    }
  }
  return result;
}

Element Algebra::degree_component(const Element& a, int d) const {
  check_same_algebra(a);
  if (d % 2 != 0) throw Error(Errc::bad_degree, "grading has even degrees only");
  Element r(*this);
  for (const auto& [m, c] : a.terms())
    if (2 * std::popcount(m) == d) r.add_term(m, c);
  return r;
}

Element Algebra::parse_element(const std::string& text) const {
  Element result(*this);
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  bool first = true;
  while (i < n) {
    bool neg = false;
    if (!first || text[i] == '+' || text[i] == '-') {
      if (i >= n || (text[i] != '+' && text[i] != '-'))
        throw ParseError("expected '+' or '-' between terms", 1, static_cast<int>(i + 1));
      neg = text[i] == '-';
      ++i;
      skip_ws();
    }
    first = false;
    // coefficient (optional when a monomial follows)
    Scalar c = Scalar::one(field());
    if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t start = i;
      while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
      c = Scalar::parse(field(), text.substr(start, i - start));
      skip_ws();
      if (i < n && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    Monomial m = 0;
    while (i < n && (text[i] == 'X' || text[i] == 'x')) {
      ++i;
      if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("expected generator index after X", 1, static_cast<int>(i + 1));
      int idx = 0;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i])))
        idx = idx * 10 + (text[i++] - '0');
      if (idx < 1 || idx > generators())
        throw Error(Errc::bad_index, "generator X" + std::to_string(idx) + " out of range");
      m |= Monomial{1} << (idx - 1);
    }
    result.add_term(m, neg ? -c : c);
    skip_ws();
  }
  return result;
}

}  // namespace niltri
