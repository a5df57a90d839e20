#include "niltri/hom.hpp"

#include "niltri/error.hpp"

namespace niltri {

namespace {

void check_dims(const Sltm& t, const Sltm& s, const GammaMatrix& gamma) {
  if (gamma.rows() != s.size() || gamma.cols() != t.size())
    throw Error(Errc::dimension_mismatch,
                "gamma must be " + std::to_string(s.size()) + "x" + std::to_string(t.size()));
  if (t.field() != s.field() || gamma.field() != t.field())
    throw Error(Errc::field_mismatch, "matrices must share one field");
}

// Key-EQ equations indexed by a fixed r; they reference gamma columns <= r only.
bool key_eq_for_r(const Sltm& t, const Sltm& s, const GammaMatrix& g, int r) {
  const int m = s.size();
  for (int k = 2; k <= m; ++k) {
    for (int i = 1; i < k; ++i) {
      const Scalar& gkr = g.at(k, r);
      const Scalar& gir = g.at(i, r);
      Scalar lhs = (gir + gir) * gkr + gkr * gkr * s.at(k, i);
      Scalar rhs = Scalar::zero(t.field());
      for (int j = 1; j < r; ++j) {
        const Scalar& trj = t.at(r, j);
        if (trj.is_zero()) continue;
        rhs = rhs + trj * (g.at(k, j) * gkr * s.at(k, i) + g.at(k, j) * gir + g.at(i, j) * gkr);
      }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

}  // namespace

bool key_eq_check(const Sltm& t, const Sltm& s, const GammaMatrix& gamma) {
  check_dims(t, s, gamma);
  for (int r = 1; r <= t.size(); ++r)
    if (!key_eq_for_r(t, s, gamma, r)) return false;
  return true;
}

DirectHomResult direct_hom_check_detail(const Sltm& t, const Sltm& s, const GammaMatrix& gamma) {
  check_dims(t, s, gamma);
  Algebra target(s);
  const int n = t.size();
  // images of the source generators
  std::vector<Element> img;
  img.reserve(static_cast<std::size_t>(n) + 1);
  img.emplace_back(target);  // unused slot 0
  for (int j = 1; j <= n; ++j) {
    Element e(target);
    for (int i = 1; i <= s.size(); ++i)
      e.add_term(Monomial{1} << (i - 1), gamma.at(i, j));
    img.push_back(std::move(e));
  }
  for (int r = 1; r <= n; ++r) {
    Element lhs = target.mul(img[r], img[r]);
    Element rhs(target);
    for (int j = 1; j < r; ++j) {
      const Scalar& trj = t.at(r, j);
      if (trj.is_zero()) continue;
      rhs = target.add(rhs, target.scale(trj, target.mul(img[j], img[r])));
    }
    if (lhs != rhs) return {false, r};
  }
  return {true, 0};
}

bool direct_hom_check(const Sltm& t, const Sltm& s, const GammaMatrix& gamma) {
  return direct_hom_check_detail(t, s, gamma).ok;
}

bool is_isomorphism(const Sltm& t, const Sltm& s, const GammaMatrix& gamma) {
  check_dims(t, s, gamma);
  if (t.size() != s.size())
    throw Error(Errc::dimension_mismatch, "isomorphism requires equal sizes");
  return !gamma.determinant().is_zero() && key_eq_check(t, s, gamma);
}

Morphism Morphism::make(const Sltm& source, const Sltm& target, const GammaMatrix& gamma) {
  Morphism f{source, target, gamma, Verified::none};
  if (key_eq_check(source, target, gamma)) {
    f.verified = Verified::hom;
    if (source.size() == target.size() && !gamma.determinant().is_zero())
      f.verified = Verified::iso;
  }
  return f;
}

Morphism Morphism::identity(const Sltm& t) {
  return make(t, t, GammaMatrix::identity(t.size(), t.field()));
}

Element apply_morphism(const Morphism& f, const Element& a) {
  if (f.verified == Verified::none)
    throw Error(Errc::unverified_morphism, "morphism failed verification");
  Algebra source(f.source);
  if (!(a.algebra() == source))
    throw Error(Errc::algebra_mismatch, "element not in the source algebra");
  Algebra target(f.target);
  std::vector<Element> img;
  img.reserve(static_cast<std::size_t>(f.source.size()) + 1);
  img.emplace_back(target);
  for (int j = 1; j <= f.source.size(); ++j) {
    Element e(target);
    for (int i = 1; i <= f.target.size(); ++i)
      e.add_term(Monomial{1} << (i - 1), f.gamma.at(i, j));
    img.push_back(std::move(e));
  }
  Element out(target);
  for (const auto& [m, c] : a.terms()) {
    Element prod = target.unit();
    for (int j = 1; j <= f.source.size(); ++j)
      if (m & (Monomial{1} << (j - 1))) prod = target.mul(prod, img[j]);
    out = target.add(out, target.scale(c, prod));
  }
  return out;
}

Morphism invert_isomorphism(const Morphism& f) {
  if (f.verified != Verified::iso)
    throw Error(Errc::unverified_morphism, "inverse needs a verified isomorphism");
  GammaMatrix theta = f.gamma.inverse();
  return Morphism::make(f.target, f.source, theta);
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target == g.source))
    throw Error(Errc::source_target_mismatch, "target of f must equal source of g");
  Morphism h{f.source, g.target, g.gamma * f.gamma, Verified::none};
  if (f.verified != Verified::none && g.verified != Verified::none)
    h.verified = (f.verified == Verified::iso && g.verified == Verified::iso) ? Verified::iso
                                                                             : Verified::hom;
  return h;
}

namespace {

// Row-echelon accumulator for incremental column independence.
class RankTracker {
public:
  explicit RankTracker(int n, const FieldSpec& field) : n_(n), field_(field) {}

  // Returns false when col is dependent on the accepted columns.
  bool try_push(std::vector<Scalar> col) {
    for (const auto& b : basis_) {
      const Scalar& lead = col[static_cast<std::size_t>(b.pivot)];
      if (!lead.is_zero())
        for (int i = 0; i < n_; ++i)
          col[static_cast<std::size_t>(i)] =
              col[static_cast<std::size_t>(i)] - lead * b.vec[static_cast<std::size_t>(i)];
    }
    int pivot = -1;
    for (int i = 0; i < n_; ++i)
      if (!col[static_cast<std::size_t>(i)].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) return false;
    Scalar inv = col[static_cast<std::size_t>(pivot)].inv();
    for (int i = 0; i < n_; ++i)
      col[static_cast<std::size_t>(i)] = col[static_cast<std::size_t>(i)] * inv;
    basis_.push_back({pivot, std::move(col)});
    return true;
  }

  void pop() { basis_.pop_back(); }

private:
  struct Reduced {
    int pivot;
    std::vector<Scalar> vec;
  };
  int n_;
  FieldSpec field_;
  std::vector<Reduced> basis_;
};

struct IsoSearcher {
  const Sltm& t;
  const Sltm& s;
  GammaMatrix gamma;
  std::vector<Scalar> elems;
  RankTracker rank;
  std::uint64_t budget;
  IsoSearchResult result;

  IsoSearcher(const Sltm& t_, const Sltm& s_, std::uint64_t budget_)
      : t(t_),
        s(s_),
        gamma(t_.size(), t_.size(), t_.field()),
        elems(enumerate_elements(t_.field())),
        rank(t_.size(), t_.field()),
        budget(budget_) {}

  bool dfs(int r) {
    const int n = t.size();
    if (r > n) return true;
    std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
    for (;;) {
      if (++result.nodes > budget) {
        result.status = IsoSearchStatus::budget_exceeded;
        return false;
      }
      std::vector<Scalar> col;
      col.reserve(static_cast<std::size_t>(n));
      for (int i = 1; i <= n; ++i) {
        gamma.set(i, r, elems[digits[static_cast<std::size_t>(i - 1)]]);
        col.push_back(elems[digits[static_cast<std::size_t>(i - 1)]]);
      }
      if (!key_eq_for_r(t, s, gamma, r) || !rank.try_push(std::move(col))) {
        ++result.prunes;
      } else {
        if (dfs(r + 1)) return true;
        rank.pop();
        if (result.status == IsoSearchStatus::budget_exceeded) return false;
      }
      // next candidate vector, lexicographic with the first row most significant
      int pos = n - 1;
      while (pos >= 0) {
        if (++digits[static_cast<std::size_t>(pos)] < elems.size()) break;
        digits[static_cast<std::size_t>(pos--)] = 0;
      }
      if (pos < 0) break;
    }
    return false;
  }
};

}  // namespace

IsoSearchResult iso_search(const Sltm& t, const Sltm& s, std::uint64_t budget) {
  if (!t.field().is_finite())
    throw Error(Errc::infinite_field, "iso_search enumerates a finite field");
  if (t.size() != s.size() || t.field() != s.field())
    throw Error(Errc::dimension_mismatch, "iso_search needs matrices of one size and field");
  IsoSearcher searcher(t, s, budget);
  searcher.result.status = IsoSearchStatus::exhausted;
  if (searcher.dfs(1)) {
    searcher.result.status = IsoSearchStatus::found;
    searcher.result.gamma = searcher.gamma;
  }
  return searcher.result;
}

}  // namespace niltri
