#include "niltri/eto.hpp"

#include <cassert>
#include <deque>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "niltri/error.hpp"

namespace niltri {

EtoStep EtoStep::p(int r, const Scalar& alpha) {
  if (alpha.is_zero()) throw Error(Errc::zero_scalar, "P requires a nonzero scalar");
  return EtoStep{P{r, alpha}};
}

EtoStep EtoStep::f(int r1, int r2) {
  if (!(r1 < r2)) throw Error(Errc::bad_index, "F requires r1 < r2");
  return EtoStep{F{r1, r2}};
}

EtoStep EtoStep::q(int r0, int k0, const Scalar& beta) {
  if (!(k0 < r0)) throw Error(Errc::bad_index, "Q requires k0 < r0");
  return EtoStep{Q{r0, k0, beta}};
}

std::string EtoStep::to_string() const {
  std::ostringstream os;
  if (const auto* p = std::get_if<P>(&op))
    os << "P " << p->r << ' ' << p->alpha.to_string();
  else if (const auto* f = std::get_if<F>(&op))
    os << "F " << f->r1 << ' ' << f->r2;
  else {
    const auto& q = std::get<Q>(op);
    os << "Q " << q.r0 << ' ' << q.k0 << ' ' << q.beta.to_string();
  }
  return os.str();
}

nlohmann::json EtoStep::to_json() const {
  if (const auto* p = std::get_if<P>(&op))
    return {{"op", "P"}, {"r", p->r}, {"alpha", p->alpha.to_string()}};
  if (const auto* f = std::get_if<F>(&op)) return {{"op", "F"}, {"r1", f->r1}, {"r2", f->r2}};
  const auto& q = std::get<Q>(op);
  return {{"op", "Q"}, {"r0", q.r0}, {"k0", q.k0}, {"beta", q.beta.to_string()}};
}

EtoStep EtoStep::from_json(const nlohmann::json& j, const FieldSpec& field) {
  const std::string op = j.at("op").get<std::string>();
  if (op == "P")
    return p(j.at("r").get<int>(), Scalar::parse(field, j.at("alpha").get<std::string>()));
  if (op == "F") return f(j.at("r1").get<int>(), j.at("r2").get<int>());
  if (op == "Q")
    return q(j.at("r0").get<int>(), j.at("k0").get<int>(),
             Scalar::parse(field, j.at("beta").get<std::string>()));
  throw ParseError("unknown ETO op '" + op + "'", 1, 1);
}

EtoStep EtoStep::parse(const std::string& text, const FieldSpec& field) {
  std::istringstream is(text);
  std::string kind;
  if (!(is >> kind)) throw ParseError("empty ETO step", 1, 1);
  if (kind == "P") {
    int r;
    std::string alpha;
    if (!(is >> r >> alpha)) throw ParseError("P needs 'P r alpha'", 1, 1);
    return p(r, Scalar::parse(field, alpha));
  }
  if (kind == "F") {
    int r1, r2;
    if (!(is >> r1 >> r2)) throw ParseError("F needs 'F r1 r2'", 1, 1);
    return f(r1, r2);
  }
  if (kind == "Q") {
    int r0, k0;
    std::string beta;
    if (!(is >> r0 >> k0 >> beta)) throw ParseError("Q needs 'Q r0 k0 beta'", 1, 1);
    return q(r0, k0, Scalar::parse(field, beta));
  }
  throw ParseError("unknown ETO step '" + kind + "'", 1, 1);
}

Sltm apply_p(const Sltm& t, int r1, const Scalar& alpha) {
  if (r1 < 1 || r1 > t.size()) throw Error(Errc::bad_index, "P row out of range");
  if (alpha.is_zero()) throw Error(Errc::zero_scalar, "P requires a nonzero scalar");
  Sltm s(t.size(), t.field());
  for (int r = 2; r <= t.size(); ++r)
    for (int k = 1; k < r; ++k) {
      if (r == r1)
        s.set(r, k, t.at(r, k) / alpha);
      else if (k == r1)
        s.set(r, k, alpha * t.at(r, k));
      else
        s.set(r, k, t.at(r, k));
    }
  return s;
}

bool f_well_defined(const Sltm& t, int r1, int r2) {
  if (!(1 <= r1 && r1 < r2 && r2 <= t.size()))
    throw Error(Errc::bad_index, "F requires 1 <= r1 < r2 <= n");
  for (int j = r1; j < r2; ++j)
    if (!t.at(r2, j).is_zero()) return false;
  for (int r = r1 + 1; r < r2; ++r)
    if (!t.at(r, r1).is_zero()) return false;
  return true;
}

Sltm apply_f(const Sltm& t, int r1, int r2) {
  for (int j = r1; j < r2; ++j)
    if (!t.at(r2, j).is_zero())
      throw Error(Errc::restriction_violated,
                  "F(" + std::to_string(r1) + "," + std::to_string(r2) + "): entry (" +
                      std::to_string(r2) + "," + std::to_string(j) + ") must be zero");
  for (int r = r1 + 1; r < r2; ++r)
    if (!t.at(r, r1).is_zero())
      throw Error(Errc::restriction_violated,
                  "F(" + std::to_string(r1) + "," + std::to_string(r2) + "): entry (" +
                      std::to_string(r) + "," + std::to_string(r1) + ") must be zero");
  Sltm s(t.size(), t.field());
  for (int r = 2; r <= t.size(); ++r)
    for (int k = 1; k < r; ++k) {
      Scalar v = Scalar::zero(t.field());
      // entry-table rules in listed order; the restrictions force every
      // overlapping pair of rules to agree (both give zero)
      if (r == r1)
        v = t.get(r2, k);
      else if (r == r2)
        v = t.get(r1, k);
      else if (k == r1)
        v = t.get(r, r2);
      else if (k == r2)
        v = t.get(r, r1);
      else
        v = t.at(r, k);
      if (r == r2 && k == r1) assert(t.get(r1, r1).is_zero() && t.get(r2, r2).is_zero());
      s.set(r, k, v);
    }
  return s;
}

bool q_well_defined(const Sltm& t, int r0, int k0, const Scalar& beta) {
  if (!(1 <= k0 && k0 < r0 && r0 <= t.size()))
    throw Error(Errc::bad_index, "Q requires 1 <= k0 < r0 <= n");
  if (beta.field() != t.field()) throw Error(Errc::field_mismatch, "beta from the wrong field");
  for (int j = k0 + 1; j < r0; ++j)
    if (!t.at(r0, j).is_zero()) return false;
  if (k0 == 1) return true;
  const Scalar one = Scalar::one(t.field());
  for (int i = 1; i < k0; ++i)
    if (delta(t, one, i, k0, r0) != beta * t.at(k0, i)) return false;
  return true;
}

Sltm apply_q(const Sltm& t, int r0, int k0, const Scalar& beta) {
  for (int j = k0 + 1; j < r0; ++j)
    if (!t.at(r0, j).is_zero())
      throw Error(Errc::restriction_violated, "Q(" + std::to_string(r0) + "," +
                                                  std::to_string(k0) + "): column " +
                                                  std::to_string(j) + " of row r0 must be zero");
  if (k0 > 1) {
    const Scalar one = Scalar::one(t.field());
    for (int i = 1; i < k0; ++i)
      if (delta(t, one, i, k0, r0) != beta * t.at(k0, i))
        throw Error(Errc::restriction_violated, "Q(" + std::to_string(r0) + "," +
                                                    std::to_string(k0) +
                                                    "): delta condition fails at i=" +
                                                    std::to_string(i));
  }
  Sltm s = t;
  s.set(r0, k0, t.at(r0, k0) - (beta + beta));
  for (int r = r0 + 1; r <= t.size(); ++r)
    s.set(r, k0, t.at(r, k0) + beta * t.at(r, r0));
  return s;
}

bool step_well_defined(const Sltm& t, const EtoStep& step) {
  if (const auto* p = std::get_if<EtoStep::P>(&step.op))
    return p->r >= 1 && p->r <= t.size() && !p->alpha.is_zero();
  if (const auto* f = std::get_if<EtoStep::F>(&step.op)) return f_well_defined(t, f->r1, f->r2);
  const auto& q = std::get<EtoStep::Q>(step.op);
  return q_well_defined(t, q.r0, q.k0, q.beta);
}

Sltm apply_step(const Sltm& t, const EtoStep& step) {
  if (const auto* p = std::get_if<EtoStep::P>(&step.op)) return apply_p(t, p->r, p->alpha);
  if (const auto* f = std::get_if<EtoStep::F>(&step.op)) return apply_f(t, f->r1, f->r2);
  const auto& q = std::get<EtoStep::Q>(step.op);
  return apply_q(t, q.r0, q.k0, q.beta);
}

GammaMatrix step_gamma(const EtoStep& step, int n, const FieldSpec& field) {
  GammaMatrix g = GammaMatrix::identity(n, field);
  if (const auto* p = std::get_if<EtoStep::P>(&step.op)) {
    if (p->r < 1 || p->r > n) throw Error(Errc::bad_index, "P row out of range");
    g.set(p->r, p->r, p->alpha);
  } else if (const auto* f = std::get_if<EtoStep::F>(&step.op)) {
    if (f->r2 > n) throw Error(Errc::bad_index, "F index out of range");
    g.set(f->r1, f->r1, Scalar::zero(field));
    g.set(f->r2, f->r2, Scalar::zero(field));
    g.set(f->r1, f->r2, Scalar::one(field));
    g.set(f->r2, f->r1, Scalar::one(field));
  } else {
    const auto& q = std::get<EtoStep::Q>(step.op);
    if (q.r0 > n) throw Error(Errc::bad_index, "Q index out of range");
    g.set(q.k0, q.r0, q.beta);
  }
  return g;
}

EtoStep invert_step(const EtoStep& step) {
  if (const auto* p = std::get_if<EtoStep::P>(&step.op)) return EtoStep::p(p->r, p->alpha.inv());
  if (const auto* f = std::get_if<EtoStep::F>(&step.op)) return EtoStep::f(f->r1, f->r2);
  const auto& q = std::get<EtoStep::Q>(step.op);
  return EtoStep::q(q.r0, q.k0, -q.beta);
}

std::pair<Sltm, EtoSequence> apply_sequence(const Sltm& t, const std::vector<EtoStep>& steps) {
  Sltm current = t;
  GammaMatrix acc = GammaMatrix::identity(t.size(), t.field());
  for (std::size_t idx = 0; idx < steps.size(); ++idx) {
    if (!step_well_defined(current, steps[idx]))
      throw Error(Errc::restriction_violated,
                  "step " + std::to_string(idx + 1) + " (" + steps[idx].to_string() +
                      ") is not admissible");
    current = apply_step(current, steps[idx]);
    acc = step_gamma(steps[idx], t.size(), t.field()) * acc;
  }
  return {current, EtoSequence{steps, std::move(acc)}};
}

std::vector<EtoStep> parse_step_sequence(const std::string& text, const FieldSpec& field) {
  std::vector<EtoStep> steps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t semi = text.find(';', pos);
    std::string part = text.substr(pos, semi == std::string::npos ? semi : semi - pos);
    pos = semi == std::string::npos ? text.size() + 1 : semi + 1;
    std::size_t a = part.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) continue;
    std::size_t b = part.find_last_not_of(" \t\r\n");
    steps.push_back(EtoStep::parse(part.substr(a, b - a + 1), field));
  }
  return steps;
}

std::string steps_to_string(const std::vector<EtoStep>& steps) {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += "; ";
    out += steps[i].to_string();
  }
  return out;
}

namespace {

std::vector<EtoStep> all_moves(const Sltm& t, const std::vector<Scalar>& elems) {
  std::vector<EtoStep> moves;
  const int n = t.size();
  for (int r = 1; r <= n; ++r)
    for (const auto& a : elems)
      if (!a.is_zero()) moves.push_back(EtoStep::p(r, a));
  for (int r1 = 1; r1 < n; ++r1)
    for (int r2 = r1 + 1; r2 <= n; ++r2)
      if (f_well_defined(t, r1, r2)) moves.push_back(EtoStep::f(r1, r2));
  for (int k0 = 1; k0 < n; ++k0)
    for (int r0 = k0 + 1; r0 <= n; ++r0)
      for (const auto& b : elems)
        if (q_well_defined(t, r0, k0, b)) moves.push_back(EtoStep::q(r0, k0, b));
  return moves;
}

struct Visit {
  std::string parent;  // empty for the root
  EtoStep step = EtoStep::f(1, 2);
  int depth = 0;
};

using VisitMap = std::unordered_map<std::string, Visit>;

// Steps from the root to key, in application order.
std::vector<EtoStep> trace(const VisitMap& seen, std::string key) {
  std::vector<EtoStep> steps;
  for (;;) {
    const Visit& v = seen.at(key);
    if (v.parent.empty()) break;
    steps.push_back(v.step);
    key = v.parent;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

}  // namespace

EtoSearchResult eto_equiv_search(const Sltm& t, const Sltm& s, int depth) {
  if (!t.field().is_finite())
    throw Error(Errc::infinite_field, "eto_equiv_search enumerates a finite field");
  if (t.size() != s.size() || t.field() != s.field())
    throw Error(Errc::dimension_mismatch, "matrices must share size and field");

  EtoSearchResult result;
  if (t == s) {
    result.path = std::vector<EtoStep>{};
    return result;
  }

  const auto elems = enumerate_elements(t.field());

  // forward frontier from t, backward frontier from s; every move is
  // invertible, so the backward side explores the same move graph
  VisitMap seen_f, seen_b;
  std::unordered_map<std::string, Sltm> mat_f, mat_b;
  std::deque<std::string> frontier_f, frontier_b;
  const std::string kt = t.to_text(), ks = s.to_text();
  seen_f.emplace(kt, Visit{});
  seen_b.emplace(ks, Visit{});
  mat_f.emplace(kt, t);
  mat_b.emplace(ks, s);
  frontier_f.push_back(kt);
  frontier_b.push_back(ks);
  int depth_f = 0, depth_b = 0;

  auto finish = [&](const std::string& meet) {
    std::vector<EtoStep> path = trace(seen_f, meet);
    std::vector<EtoStep> back = trace(seen_b, meet);  // s -> meet
    for (auto it = back.rbegin(); it != back.rend(); ++it) path.push_back(invert_step(*it));
    result.path = std::move(path);
  };

  while (depth_f + depth_b < depth && (!frontier_f.empty() || !frontier_b.empty())) {
    const bool forward = !frontier_f.empty() &&
                         (frontier_b.empty() || (depth_f <= depth_b && frontier_f.size() <= frontier_b.size()) ||
                          (depth_f < depth_b));
    auto& frontier = forward ? frontier_f : frontier_b;
    auto& seen = forward ? seen_f : seen_b;
    auto& mats = forward ? mat_f : mat_b;
    auto& other_seen = forward ? seen_b : seen_f;
    if (frontier.empty()) break;
    (forward ? depth_f : depth_b)++;

    std::deque<std::string> next;
    for (const auto& key : frontier) {
      const Sltm& m = mats.at(key);
      for (const auto& step : all_moves(m, elems)) {
        Sltm img = apply_step(m, step);
        std::string ik = img.to_text();
        if (seen.count(ik)) continue;
        ++result.visited;
        seen.emplace(ik, Visit{key, step, seen.at(key).depth + 1});
        mats.emplace(ik, std::move(img));
        if (other_seen.count(ik)) {
          // meeting state reachable within the combined depth budget
          if (seen_f.at(ik).depth + seen_b.at(ik).depth <= depth) {
            finish(ik);
            return result;
          }
        }
        next.push_back(std::move(ik));
      }
    }
    frontier = std::move(next);
  }
  return result;
}

}  // namespace niltri
