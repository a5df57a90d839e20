// niltri — exact computations in nil graded algebras codified by strictly
// lower triangular matrices.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "niltri/algebra.hpp"
#include "niltri/classify.hpp"
#include "niltri/error.hpp"
#include "niltri/eto.hpp"
#include "niltri/hom.hpp"
#include "niltri/sltm.hpp"

namespace {

using nlohmann::json;
using namespace niltri;

enum ExitCode { kOk = 0, kNegative = 1, kUsage = 2 };

struct CommonOpts {
  std::string field;
  std::string format = "text";
  std::string in_path, t_path, s_path, gamma_path;
  std::string matrix;
  int n = 0;
  std::uint64_t budget = kDefaultIsoBudget;
  int depth = 8;
  int jobs = 1;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--field", o.field, "ground field: q<p> (odd prime) or 'rational'");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--jobs", o.jobs, "worker cap");
  cmd->add_option("--seed", o.seed, "seed for randomized entry points");
}

// "n=3;q3;rows:1|2 0" — ',' works as the separator too (handy where ';'
// needs shell or script escaping)
Sltm parse_inline_matrix(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t semi = text.find_first_of(";,", pos);
    parts.push_back(text.substr(pos, semi == std::string::npos ? semi : semi - pos));
    pos = semi == std::string::npos ? text.size() + 1 : semi + 1;
  }
  if (parts.size() != 3 || parts[0].rfind("n=", 0) != 0 || parts[2].rfind("rows:", 0) != 0)
    throw ParseError("inline matrix must look like \"n=3;q3;rows:1|2 0\"", 1, 1);
  int n = std::stoi(parts[0].substr(2));
  FieldSpec f = FieldSpec::parse(parts[1]);
  Sltm t(n, f);
  std::string rows = parts[2].substr(5);
  int i = 2;
  std::size_t rpos = 0;
  while (rpos <= rows.size() && i <= n) {
    std::size_t bar = rows.find('|', rpos);
    std::string row = rows.substr(rpos, bar == std::string::npos ? bar : bar - rpos);
    rpos = bar == std::string::npos ? rows.size() + 1 : bar + 1;
    std::istringstream is(row);
    std::string tok;
    for (int j = 1; j < i; ++j) {
      if (!(is >> tok)) throw ParseError("row " + std::to_string(i) + " needs " +
                                             std::to_string(i - 1) + " entries",
                                         i, 1);
      t.set(i, j, Scalar::parse(f, tok));
    }
    ++i;
  }
  if (i != n + 1) throw ParseError("expected " + std::to_string(n - 1) + " rows", i, 1);
  return t;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Sltm load_matrix_file(const std::string& path) {
  std::string text = slurp(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
    return Sltm::from_json(json::parse(text));
  return Sltm::from_text(text);
}

Sltm require_matrix(const CommonOpts& o, const std::string& path) {
  if (!path.empty() && !o.matrix.empty())
    throw Error(Errc::parse_error, "give a matrix file or --matrix, not both");
  if (!path.empty()) return load_matrix_file(path);
  if (!o.matrix.empty()) return parse_inline_matrix(o.matrix);
  throw Error(Errc::parse_error, "a matrix input is required");
}

GammaMatrix load_gamma(const std::string& path, const FieldSpec& field) {
  return GammaMatrix::from_json(json::parse(slurp(path)), field);
}

void emit(const CommonOpts& o, const json& j, const std::string& text) {
  if (o.format == "json")
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

json steps_json(const std::vector<EtoStep>& steps) {
  json a = json::array();
  for (const auto& s : steps) a.push_back(s.to_json());
  return a;
}

int run_mul(const CommonOpts& o, const std::string& ea, const std::string& eb) {
  Sltm t = require_matrix(o, o.t_path.empty() ? o.in_path : o.t_path);
  Algebra alg(t);
  Element a = alg.parse_element(ea);
  Element b = alg.parse_element(eb);
  Element p = alg.mul(a, b);
  emit(o, json{{"product", p.to_string()}}, p.to_string() + "\n");
  return kOk;
}

int run_check_hom(const CommonOpts& o) {
  Sltm t = require_matrix(o, o.t_path);
  Sltm s = o.s_path.empty() ? t : load_matrix_file(o.s_path);
  GammaMatrix g = load_gamma(o.gamma_path, t.field());
  bool hom = key_eq_check(t, s, g);
  bool direct = direct_hom_check(t, s, g);
  bool iso = hom && t.size() == s.size() && !g.determinant().is_zero();
  json j{{"hom", hom}, {"direct", direct}, {"iso", iso}};
  std::ostringstream os;
  os << "hom=" << (hom ? "true" : "false") << " direct=" << (direct ? "true" : "false")
     << " iso=" << (iso ? "true" : "false") << '\n';
  emit(o, j, os.str());
  return hom ? kOk : kNegative;
}

int run_iso_search(const CommonOpts& o) {
  Sltm t = require_matrix(o, o.t_path);
  Sltm s = load_matrix_file(o.s_path);
  IsoSearchResult res = iso_search(t, s, o.budget);
  const char* status = res.status == IsoSearchStatus::found        ? "found"
                       : res.status == IsoSearchStatus::exhausted ? "exhausted"
                                                                  : "budget_exceeded";
  json j{{"status", status}, {"nodes", res.nodes}, {"prunes", res.prunes}};
  std::ostringstream os;
  os << "status=" << status << " nodes=" << res.nodes << " prunes=" << res.prunes << '\n';
  if (res.gamma) {
    j["gamma"] = res.gamma->to_json();
    os << res.gamma->to_string();
  }
  emit(o, j, os.str());
  return res.status == IsoSearchStatus::found ? kOk : kNegative;
}

int run_eto(const CommonOpts& o, const std::string& steps_text) {
  Sltm t = require_matrix(o, o.t_path.empty() ? o.in_path : o.t_path);
  if (!steps_text.empty()) {
    auto steps = parse_step_sequence(steps_text, t.field());
    auto [final, seq] = apply_sequence(t, steps);
    json j{{"result", final.to_json()}, {"gamma", seq.accumulated_gamma.to_json()}};
    emit(o, j, final.to_text() + seq.accumulated_gamma.to_string());
    return kOk;
  }
  if (o.s_path.empty())
    throw Error(Errc::parse_error, "eto needs --steps to apply or --s to search");
  Sltm s = load_matrix_file(o.s_path);
  EtoSearchResult res = eto_equiv_search(t, s, o.depth);
  json j{{"found", res.path.has_value()}, {"visited", res.visited}};
  std::ostringstream os;
  os << (res.path ? "found" : "no path within depth " + std::to_string(o.depth))
     << " visited=" << res.visited << '\n';
  if (res.path) {
    j["path"] = steps_json(*res.path);
    os << steps_to_string(*res.path) << '\n';
  }
  emit(o, j, os.str());
  return res.path ? kOk : kNegative;
}

int run_zero_class(const CommonOpts& o) {
  Sltm u = require_matrix(o, o.in_path);
  ZeroClassResult res = zero_class_check(u);
  json j{{"in_zero_class", res.in_class},
         {"condition1", res.condition1},
         {"condition2", res.condition2}};
  std::ostringstream os;
  os << "in_zero_class=" << (res.in_class ? "true" : "false") << " condition1="
     << (res.condition1 ? "true" : "false") << " condition2="
     << (res.condition2 ? "true" : "false") << '\n';
  if (res.in_class) {
    Morphism cert = zero_class_certificate(u);
    EtoSequence path = zero_eto_path(u);
    j["certificate"] = cert.gamma.to_json();
    j["eto_path"] = steps_json(path.steps);
    os << cert.gamma.to_string() << steps_to_string(path.steps) << '\n';
  }
  emit(o, j, os.str());
  return res.in_class ? kOk : kNegative;
}

int run_classify(const CommonOpts& o) {
  if (!o.t_path.empty() && !o.s_path.empty()) {
    Sltm t = load_matrix_file(o.t_path);
    Sltm s = load_matrix_file(o.s_path);
    Morphism m = classify_n2(t, s);
    emit(o, json{{"gamma", m.gamma.to_json()}}, m.gamma.to_string());
    return kOk;
  }
  Sltm u = require_matrix(o, o.in_path);
  if (u.size() == 2) {
    Morphism m = classify_n2(u, Sltm(2, u.field()));
    emit(o, json{{"class", "ZeroClass"}, {"gamma", m.gamma.to_json()}},
         "class=ZeroClass\n" + m.gamma.to_string());
    return kOk;
  }
  if (u.size() != 3) throw Error(Errc::bad_size, "classify handles sizes 2 and 3");
  N3Result res = classify_n3(u);
  const char* cls = res.cls == N3Class::zero_class ? "ZeroClass" : "B32Class";
  json j{{"class", cls}, {"gamma", res.certificate.gamma.to_json()}};
  emit(o, j, std::string("class=") + cls + "\n" + res.certificate.gamma.to_string());
  return kOk;
}

int run_census(const CommonOpts& o, bool eto_evidence) {
  if (o.field.empty() || o.n == 0)
    throw Error(Errc::parse_error, "census needs --n and --field");
  CensusOptions copts;
  copts.iso_budget = o.budget;
  copts.collect_eto_evidence = eto_evidence;
  copts.eto_evidence_depth = o.depth;
  ClassReport report = census(o.n, FieldSpec::parse(o.field), copts);
  std::ostringstream os;
  os << "classes=" << report.classes.size() << (report.complete ? "" : " (incomplete)") << '\n';
  for (const auto& c : report.classes)
    os << "-- size " << c.size << " --\n" << c.representative.to_text();
  emit(o, report.to_json(), os.str());
  return kOk;
}

int run_leaders(const CommonOpts& o) {
  Sltm u = require_matrix(o, o.in_path);
  LeaderGraph g = leader_graph(u);
  json jcomp = json::array();
  for (std::size_t i = 0; i < g.components.size(); ++i)
    jcomp.push_back({{"vertices", g.components[i]},
                     {"simple", g.chains[i].simple},
                     {"arrows", [&] {
                        json a = json::array();
                        for (const auto& [k, j] : g.chains[i].arrows)
                          a.push_back({{"k", k}, {"j", j}});
                        return a;
                      }()}});
  json j{{"n", g.n},
         {"arrows", [&] {
            json a = json::array();
            for (const auto& [k, jj] : g.arrows) a.push_back({{"k", k}, {"j", jj}});
            return a;
          }()},
         {"minimal_vertices", g.minimal_vertices},
         {"components", std::move(jcomp)}};
  std::ostringstream os;
  os << g.to_edge_text() << "minimal:";
  for (int v : g.minimal_vertices) os << ' ' << v;
  os << '\n';
  emit(o, j, os.str());
  return kOk;
}

int run_lower_bound(const CommonOpts& o) {
  if (o.field.empty() || o.n == 0)
    throw Error(Errc::parse_error, "lower-bound needs --n and --field");
  LowerBoundReport report = lower_bound_witnesses(o.n, FieldSpec::parse(o.field), o.budget);
  std::ostringstream os;
  os << "witnesses=" << (o.n - 1) << " verified=" << (report.verified ? "true" : "false")
     << " b1_in_zero_class=" << (report.b1_in_zero_class ? "true" : "false") << '\n';
  emit(o, report.to_json(), os.str());
  return report.verified ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in nil graded algebras codified by strictly "
               "lower triangular matrices"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string elem_a, elem_b, steps_text;
  bool eto_evidence = false;

  auto* mul = app.add_subcommand("mul", "multiply two algebra elements");
  add_common(mul, o);
  mul->add_option("--in", o.in_path, "matrix file");
  mul->add_option("--t", o.t_path, "matrix file");
  mul->add_option("--matrix", o.matrix, "inline matrix");
  mul->add_option("--a", elem_a, "left factor, e.g. \"1*X1X2 + 2/3*X3\"")->required();
  mul->add_option("--b", elem_b, "right factor")->required();

  auto* chk = app.add_subcommand("check-hom", "verify a homomorphism candidate");
  add_common(chk, o);
  chk->add_option("--t", o.t_path, "source matrix file");
  chk->add_option("--s", o.s_path, "target matrix file");
  chk->add_option("--matrix", o.matrix, "inline source matrix");
  chk->add_option("--gamma", o.gamma_path, "candidate matrix (JSON)")->required();

  auto* iso = app.add_subcommand("iso-search", "exhaustive isomorphism search");
  add_common(iso, o);
  iso->add_option("--t", o.t_path, "source matrix file");
  iso->add_option("--s", o.s_path, "target matrix file")->required();
  iso->add_option("--matrix", o.matrix, "inline source matrix");
  iso->add_option("--budget", o.budget, "node budget");

  auto* eto = app.add_subcommand("eto", "apply or search elementary triangular operations");
  add_common(eto, o);
  eto->add_option("--in", o.in_path, "matrix file");
  eto->add_option("--t", o.t_path, "matrix file");
  eto->add_option("--matrix", o.matrix, "inline matrix");
  eto->add_option("--steps", steps_text, "sequence, e.g. \"Q 3 1 2; F 2 3\"");
  eto->add_option("--s", o.s_path, "target matrix file (search mode)");
  eto->add_option("--depth", o.depth, "search depth bound");

  auto* zc = app.add_subcommand("zero-class", "zero-class membership with certificates");
  add_common(zc, o);
  zc->add_option("--in", o.in_path, "matrix file");
  zc->add_option("--matrix", o.matrix, "inline matrix");

  auto* cls = app.add_subcommand("classify", "small-size classification");
  add_common(cls, o);
  cls->add_option("--in", o.in_path, "matrix file");
  cls->add_option("--t", o.t_path, "source matrix file (size 2)");
  cls->add_option("--s", o.s_path, "target matrix file (size 2)");
  cls->add_option("--matrix", o.matrix, "inline matrix");

  auto* cen = app.add_subcommand("census", "full finite-field classification");
  add_common(cen, o);
  cen->add_option("--n", o.n, "matrix size")->required();
  cen->add_option("--budget", o.budget, "per-pair search budget");
  cen->add_option("--depth", o.depth, "path search depth for --eto-evidence");
  cen->add_flag("--eto-evidence", eto_evidence, "search an ETO path for every merge");

  auto* led = app.add_subcommand("leaders", "leader graph of a matrix");
  add_common(led, o);
  led->add_option("--in", o.in_path, "matrix file");
  led->add_option("--matrix", o.matrix, "inline matrix");

  auto* low = app.add_subcommand("lower-bound", "pairwise non-isomorphic witness family");
  add_common(low, o);
  low->add_option("--n", o.n, "matrix size")->required();
  low->add_option("--budget", o.budget, "per-pair search budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand(mul)) return run_mul(o, elem_a, elem_b);
    if (app.got_subcommand(chk)) return run_check_hom(o);
    if (app.got_subcommand(iso)) return run_iso_search(o);
    if (app.got_subcommand(eto)) return run_eto(o, steps_text);
    if (app.got_subcommand(zc)) return run_zero_class(o);
    if (app.got_subcommand(cls)) return run_classify(o);
    if (app.got_subcommand(cen)) return run_census(o, eto_evidence);
    if (app.got_subcommand(led)) return run_leaders(o);
    if (app.got_subcommand(low)) return run_lower_bound(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::char_two:
      case Errc::not_prime:
      case Errc::parse_error:
      case Errc::bad_size:
      case Errc::bad_index:
      case Errc::bad_degree:
      case Errc::dimension_mismatch:
      case Errc::field_mismatch:
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
      default:
        std::cerr << e.what() << '\n';
        return kNegative;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
