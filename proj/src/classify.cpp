#include "niltri/classify.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "niltri/error.hpp"

namespace niltri {

std::vector<std::pair<int, int>> leaders(const Sltm& u) {
  std::vector<std::pair<int, int>> out;
  for (int k = 2; k <= u.size(); ++k)
    for (int j = k - 1; j >= 1; --j)
      if (!u.at(k, j).is_zero()) {
        out.emplace_back(k, j);
        break;
      }
  return out;
}

std::vector<std::pair<int, int>> LeaderGraph::chain_from(int k) const {
  std::vector<std::pair<int, int>> chain;
  for (;;) {
    auto it = std::find_if(arrows.begin(), arrows.end(),
                           [k](const auto& a) { return a.first == k; });
    if (it == arrows.end()) break;
    chain.push_back(*it);
    k = it->second;
  }
  return chain;
}

std::string LeaderGraph::to_edge_text() const {
  std::ostringstream os;
  for (const auto& [k, j] : arrows) os << k << " -> " << j << '\n';
  return os.str();
}

LeaderGraph leader_graph(const Sltm& u) {
  LeaderGraph g;
  g.n = u.size();
  g.arrows = leaders(u);

  std::vector<bool> nonzero_row(static_cast<std::size_t>(g.n) + 1, false);
  for (const auto& [k, j] : g.arrows) nonzero_row[static_cast<std::size_t>(k)] = true;
  for (int v = 1; v <= g.n; ++v)
    if (!nonzero_row[static_cast<std::size_t>(v)]) g.minimal_vertices.push_back(v);

  // connected components under the (undirected) arrow relation
  std::vector<int> parent(static_cast<std::size_t>(g.n) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const auto& [k, j] : g.arrows) {
    int a = find(k), b = find(j);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::map<int, std::vector<int>> comps;
  for (int v = 1; v <= g.n; ++v) comps[find(v)].push_back(v);

  std::vector<int> in_degree(static_cast<std::size_t>(g.n) + 1, 0);
  for (const auto& [k, j] : g.arrows) ++in_degree[static_cast<std::size_t>(j)];

  for (auto& [root, verts] : comps) {
    (void)root;
    LeaderGraph::Chain chain;
    for (const auto& a : g.arrows)
      if (find(a.first) == find(verts.front())) chain.arrows.push_back(a);
    // a chain is simple when its arrows form one path: no vertex receives
    // two arrows
    for (int v : verts)
      if (in_degree[static_cast<std::size_t>(v)] > 1) chain.simple = false;
    g.components.push_back(verts);
    g.chains.push_back(std::move(chain));
  }
  return g;
}

ZeroClassResult zero_class_check(const Sltm& u) {
  ZeroClassResult res;
  res.condition1 = true;
  for (int k = 3; k <= u.size() && res.condition1; ++k)
    for (int j = 2; j < k; ++j)
      if (!u.at(k, j).is_zero()) {
        res.condition1 = false;
        break;
      }
  res.condition2 = true;
  const Scalar two = Scalar::from_int(u.field(), 2);
  for (const auto& [k, j] : leaders(u)) {
    if (j == 1) continue;
    for (int i = 1; i < j && res.condition2; ++i)
      if (!delta(u, two, i, j, k).is_zero()) res.condition2 = false;
    if (!res.condition2) break;
  }
  res.in_class = res.condition1 || res.condition2;
  return res;
}

Morphism zero_class_certificate(const Sltm& u) {
  if (!zero_class_check(u).in_class)
    throw Error(Errc::not_in_zero_class, "matrix is not in the zero class");
  const int n = u.size();
  const FieldSpec& f = u.field();
  const Scalar half = Scalar::from_int(f, 2).inv();

  GammaMatrix gamma(n, n, f);
  std::vector<int> leader_of(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [k, j] : leaders(u)) leader_of[static_cast<std::size_t>(k)] = j;

  for (int k = 1; k <= n; ++k) {
    gamma.set(k, k, Scalar::one(f));
    int j = leader_of[static_cast<std::size_t>(k)];
    if (j == 0) continue;  // minimal vertex
    Scalar coeff = -(u.at(k, j) * half);
    for (int i = 1; i <= j; ++i) {
      Scalar v = gamma.at(i, k) + coeff * gamma.at(i, j);
      gamma.set(i, k, v);
    }
  }

  Morphism cert = Morphism::make(Sltm(n, f), u, gamma);
  assert(cert.verified == Verified::iso);
  return cert;
}

EtoSequence zero_eto_path(const Sltm& u) {
  if (!zero_class_check(u).in_class)
    throw Error(Errc::not_in_zero_class, "matrix is not in the zero class");
  const Scalar half = Scalar::from_int(u.field(), 2).inv();
  std::vector<EtoStep> steps;
  Sltm cur = u;
  for (;;) {
    int r0 = 0, c0 = 0;
    for (int k = 2; k <= cur.size() && r0 == 0; ++k)
      for (int j = k - 1; j >= 1; --j)
        if (!cur.at(k, j).is_zero()) {
          r0 = k;
          c0 = j;
          break;
        }
    if (r0 == 0) break;
    EtoStep step = EtoStep::q(r0, c0, cur.at(r0, c0) * half);
    cur = apply_step(cur, step);
    steps.push_back(std::move(step));
  }
  return apply_sequence(u, steps).second;
}

Morphism classify_n2(const Sltm& t, const Sltm& s) {
  if (t.size() != 2 || s.size() != 2)
    throw Error(Errc::bad_size, "classify_n2 takes size-2 matrices");
  if (t.field() != s.field()) throw Error(Errc::field_mismatch, "matrices over different fields");
  const FieldSpec& f = t.field();
  GammaMatrix g = GammaMatrix::identity(2, f);
  g.set(1, 2, (t.at(2, 1) - s.at(2, 1)) / Scalar::from_int(f, 2));
  Morphism m = Morphism::make(t, s, g);
  assert(m.verified == Verified::iso);
  return m;
}

N3Result classify_n3(const Sltm& u) {
  if (u.size() != 3) throw Error(Errc::bad_size, "classify_n3 takes a size-3 matrix");
  const FieldSpec& f = u.field();
  const Scalar two = Scalar::from_int(f, 2);
  const Scalar half = two.inv();
  const Scalar u21 = u.at(2, 1), u31 = u.at(3, 1), u32 = u.at(3, 2);
  const Scalar d = two * u31 + u32 * u21;

  if (!u32.is_zero() && !d.is_zero()) {
    GammaMatrix g(3, 3, f);
    g.set(1, 1, two / d);
    g.set(1, 2, u21 / d);
    g.set(2, 2, u32.inv());
    g.set(3, 3, Scalar::one(f));
    Morphism m = Morphism::make(u, b_matrix(3, 2, f), g);
    assert(m.verified == Verified::iso);
    return {N3Class::b32_class, std::move(m)};
  }

  GammaMatrix g = GammaMatrix::identity(3, f);
  if (u32.is_zero()) {
    g.set(1, 2, u21 * half);
    g.set(1, 3, u31 * half);
  } else {
    // d = 0 forces u31 = -u32 u21 / 2
    assert(u31 == -(u32 * u21 * half));
    g.set(1, 2, u21 * half);
    g.set(2, 3, u32 * half);
  }
  Morphism m = Morphism::make(u, Sltm(3, f), g);
  assert(m.verified == Verified::iso);
  return {N3Class::zero_class, std::move(m)};
}

namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // Unions by minimum index so the root is the lexicographic representative.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

private:
  std::vector<std::size_t> parent_;
};

}  // namespace

ClassReport census(int n, const FieldSpec& field, const CensusOptions& opts) {
  if (!field.is_finite()) throw Error(Errc::infinite_field, "census enumerates a finite field");
  const int pairs = n * (n - 1) / 2;
  long double total_ld = 1;
  for (int i = 0; i < pairs; ++i) total_ld *= static_cast<long double>(field.p());
  if (total_ld > 16e6)
    throw Error(Errc::budget_exceeded, "census domain exceeds the memory budget");

  ClassReport report;
  report.n = n;
  report.field = field;

  const std::vector<Sltm> mats = enumerate_sltm(n, field);
  const std::size_t total = mats.size();
  UnionFind uf(total);
  const auto elems = enumerate_elements(field);

  // phase 1: union each matrix with every admissible single-ETO image
  for (std::size_t idx = 0; idx < total; ++idx) {
    const Sltm& t = mats[idx];
    auto join = [&](const Sltm& img) {
      if (uf.unite(idx, static_cast<std::size_t>(sltm_rank(img)))) ++report.phase1_unions;
    };
    for (int r = 1; r <= n; ++r)
      for (const auto& a : elems)
        if (!a.is_zero()) join(apply_p(t, r, a));
    for (int r1 = 1; r1 < n; ++r1)
      for (int r2 = r1 + 1; r2 <= n; ++r2)
        if (f_well_defined(t, r1, r2)) join(apply_f(t, r1, r2));
    for (int k0 = 1; k0 < n; ++k0)
      for (int r0 = k0 + 1; r0 <= n; ++r0)
        for (const auto& b : elems)
          if (q_well_defined(t, r0, k0, b)) join(apply_q(t, r0, k0, b));
  }

  // phase 2: settle the remaining representative pairs by exhaustive search
  std::vector<std::size_t> reps;
  for (std::size_t idx = 0; idx < total; ++idx)
    if (uf.find(idx) == idx) reps.push_back(idx);

  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      std::size_t a = uf.find(reps[i]), b = uf.find(reps[j]);
      if (a == b) continue;
      ++report.pair_searches;
      IsoSearchResult res = iso_search(mats[reps[i]], mats[reps[j]], opts.iso_budget);
      report.search_nodes += res.nodes;
      if (res.status == IsoSearchStatus::budget_exceeded) {
        report.complete = false;
        continue;
      }
      if (res.status != IsoSearchStatus::found) continue;
      uf.unite(reps[i], reps[j]);
      MergeCertificate cert{mats[reps[i]], mats[reps[j]], *res.gamma, std::nullopt};
      if (opts.collect_eto_evidence) {
        EtoSearchResult er =
            eto_equiv_search(mats[reps[i]], mats[reps[j]], opts.eto_evidence_depth);
        if (er.path)
          cert.eto_path = er.path;
        else
          report.eto_evidence_complete = false;
      }
      report.phase2_merges.push_back(std::move(cert));
    }

  std::map<std::size_t, CensusClass> classes;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t root = uf.find(idx);
    auto [it, inserted] = classes.try_emplace(root, CensusClass{mats[root], 0, {}});
    ++it->second.size;
    if (static_cast<int>(it->second.members_sample.size()) < opts.members_sample_cap)
      it->second.members_sample.push_back(idx);
  }
  for (auto& [root, cls] : classes) {
    (void)root;
    report.classes.push_back(std::move(cls));
  }
  return report;
}

nlohmann::json ClassReport::to_json() const {
  nlohmann::json jclasses = nlohmann::json::array();
  for (const auto& cls : classes) {
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& m : phase2_merges) {
      if (sltm_rank(m.a) != sltm_rank(cls.representative) &&
          sltm_rank(m.b) != sltm_rank(cls.representative))
        continue;
      nlohmann::json c{{"a", m.a.to_json()}, {"b", m.b.to_json()}, {"gamma", m.gamma.to_json()}};
      if (m.eto_path) {
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& s : *m.eto_path) steps.push_back(s.to_json());
        c["eto_path"] = std::move(steps);
      }
      certs.push_back(std::move(c));
    }
    jclasses.push_back({{"representative", cls.representative.to_json()},
                        {"size", cls.size},
                        {"members_sample", cls.members_sample},
                        {"certificates", std::move(certs)}});
  }
  return nlohmann::json{{"n", n},
                        {"field", field.to_string()},
                        {"class_count", classes.size()},
                        {"complete", complete},
                        {"classes", std::move(jclasses)},
                        {"stats",
                         {{"phase1_unions", phase1_unions},
                          {"pair_searches", pair_searches},
                          {"search_nodes", search_nodes},
                          {"eto_evidence_complete", eto_evidence_complete}}}};
}

LowerBoundReport lower_bound_witnesses(int n, const FieldSpec& field, std::uint64_t budget) {
  if (!field.is_finite())
    throw Error(Errc::infinite_field, "lower_bound_witnesses needs a finite field");
  if (n < 2) throw Error(Errc::bad_size, "witness family needs n >= 2");

  LowerBoundReport report;
  report.n = n;
  report.field = field;
  report.b1_in_zero_class = zero_class_check(b_matrix(n, 1, field)).in_class;
  report.verified = true;
  for (int l = 1; l < n; ++l)
    for (int m = l + 1; m < n; ++m) {
      IsoSearchResult res = iso_search(b_matrix(n, l, field), b_matrix(n, m, field), budget);
      report.search_nodes += res.nodes;
      if (res.status == IsoSearchStatus::budget_exceeded)
        throw Error(Errc::budget_exceeded, "pair search ran out of budget");
      bool split = res.status == IsoSearchStatus::exhausted;
      if (!split) report.verified = false;
      report.pairs.emplace_back(l, m, split);
    }
  return report;
}

nlohmann::json LowerBoundReport::to_json() const {
  nlohmann::json jpairs = nlohmann::json::array();
  for (const auto& [l, m, split] : pairs)
    jpairs.push_back({{"l", l}, {"m", m}, {"non_isomorphic", split}});
  return nlohmann::json{{"n", n},
                        {"field", field.to_string()},
                        {"b1_in_zero_class", b1_in_zero_class},
                        {"verified", verified},
                        {"pairs", std::move(jpairs)},
                        {"search_nodes", search_nodes}};
}

}  // namespace niltri
