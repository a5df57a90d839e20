#include "niltri/sltm.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "niltri/error.hpp"

namespace niltri {

Sltm::Sltm(int n, const FieldSpec& field) : n_(n), field_(field) {
  if (n < 1) throw Error(Errc::bad_size, "matrix size must be positive");
  entries_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, Scalar::zero(field));
}

int Sltm::tri_index(int i, int j) const {
  if (!(1 <= j && j < i && i <= n_))
    throw Error(Errc::bad_index, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") outside the strict lower triangle of size " +
                                     std::to_string(n_));
  return (i - 1) * (i - 2) / 2 + (j - 1);
}

const Scalar& Sltm::at(int i, int j) const { return entries_[tri_index(i, j)]; }

void Sltm::set(int i, int j, const Scalar& v) {
  if (v.field() != field_) throw Error(Errc::field_mismatch, "entry from the wrong field");
  entries_[tri_index(i, j)] = v;
}

Scalar Sltm::get(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_)
    throw Error(Errc::bad_index, "index outside matrix of size " + std::to_string(n_));
  if (j >= i) return Scalar::zero(field_);
  return entries_[tri_index(i, j)];
}

bool Sltm::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

bool Sltm::operator==(const Sltm& o) const {
  if (n_ != o.n_ || field_ != o.field_) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != o.entries_[i]) return false;
  return true;
}

int Sltm::compare(const Sltm& o) const {
  if (n_ != o.n_ || field_ != o.field_)
    throw Error(Errc::dimension_mismatch, "comparing matrices of different shape or field");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (int c = entries_[i].compare(o.entries_[i]); c != 0) return c;
  return 0;
}

Sltm Sltm::restrict_to(int k) const {
  if (k < 1 || k >= n_) throw Error(Errc::bad_index, "restriction index out of range");
  Sltm r(k, field_);
  for (int i = 2; i <= k; ++i)
    for (int j = 1; j < i; ++j) r.set(i, j, at(i, j));
  return r;
}

std::string Sltm::to_text() const {
  std::ostringstream os;
  os << "n=" << n_ << "; field=" << field_.to_string() << "\n";
  for (int i = 2; i <= n_; ++i) {
    for (int j = 1; j < i; ++j) {
      if (j > 1) os << ' ';
      os << at(i, j).to_string();
    }
    os << '\n';
  }
  return os.str();
}

nlohmann::json Sltm::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 2; i <= n_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 1; j < i; ++j) row.push_back(at(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"n", n_}, {"field", field_.to_string()}, {"rows", std::move(rows)}};
}

Sltm Sltm::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw ParseError("empty matrix text", 1, 1);

  auto strip = [](std::string s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };

  int n = -1;
  FieldSpec field = FieldSpec::rationals();
  bool have_field = false;
  std::size_t pos = 0;
  while (pos < header.size()) {
    std::size_t semi = header.find(';', pos);
    std::string part = strip(header.substr(pos, semi == std::string::npos ? semi : semi - pos));
    pos = semi == std::string::npos ? header.size() : semi + 1;
    if (part.empty()) continue;
    std::size_t eq = part.find('=');
    if (eq == std::string::npos) throw ParseError("bad header clause '" + part + "'", 1, 1);
    std::string key = strip(part.substr(0, eq));
    std::string val = strip(part.substr(eq + 1));
    if (key == "n") {
      try {
        n = std::stoi(val);
      } catch (const std::exception&) {
        throw ParseError("bad size '" + val + "'", 1, 1);
      }
    } else if (key == "field") {
      field = FieldSpec::parse(val);
      have_field = true;
    } else {
      throw ParseError("unknown header key '" + key + "'", 1, 1);
    }
  }
  if (n < 1 || !have_field) throw ParseError("header must give n and field", 1, 1);

  Sltm t(n, field);
  for (int i = 2; i <= n; ++i) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("missing row " + std::to_string(i), i, 1);
    std::istringstream row(line);
    for (int j = 1; j < i; ++j) {
      std::string tok;
      if (!(row >> tok))
        throw ParseError("row " + std::to_string(i) + " has too few entries", i, 1);
      t.set(i, j, Scalar::parse(field, tok));
    }
    std::string extra;
    if (row >> extra) throw ParseError("row " + std::to_string(i) + " has too many entries", i, 1);
  }
  return t;
}

Sltm Sltm::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("field") || !j.contains("rows"))
    throw ParseError("matrix JSON requires keys n, field, rows", 1, 1);
  int n = j.at("n").get<int>();
  FieldSpec field = FieldSpec::parse(j.at("field").get<std::string>());
  const auto& rows = j.at("rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n - 1)
    throw ParseError("rows must list rows 2..n", 1, 1);
  Sltm t(n, field);
  for (int i = 2; i <= n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i - 2)];
    if (!row.is_array() || static_cast<int>(row.size()) != i - 1)
      throw ParseError("row " + std::to_string(i) + " must have " + std::to_string(i - 1) +
                           " entries",
                       i, 1);
    for (int j2 = 1; j2 < i; ++j2) {
      const auto& cell = row[static_cast<std::size_t>(j2 - 1)];
      if (cell.is_number_integer())
        t.set(i, j2, Scalar::from_int(field, cell.get<std::int64_t>()));
      else
        t.set(i, j2, Scalar::parse(field, cell.get<std::string>()));
    }
  }
  return t;
}

Scalar delta(const Sltm& u, const Scalar& alpha, int i, int j, int k) {
  if (!(1 <= i && i < j && j < k && k <= u.size()))
    throw Error(Errc::index_order, "delta requires 1 <= i < j < k <= n");
  return alpha * u.at(k, i) + u.at(k, j) * u.at(j, i);
}

Sltm b_matrix(int n, int l, const FieldSpec& field) {
  if (l < 1 || l >= n) throw Error(Errc::bad_index, "b_matrix requires 1 <= l < n");
  Sltm b(n, field);
  for (int j = 1; j <= l; ++j) b.set(n, j, Scalar::one(field));
  return b;
}

std::vector<Sltm> enumerate_sltm(int n, const FieldSpec& field) {
  if (!field.is_finite()) throw Error(Errc::infinite_field, "cannot enumerate over the rationals");
  const auto elems = enumerate_elements(field);
  const int m = n * (n - 1) / 2;
  std::vector<Sltm> out;
  std::vector<int> digits(static_cast<std::size_t>(m), 0);
  for (;;) {
    Sltm t(n, field);
    int d = 0;
    for (int i = 2; i <= n; ++i)
      for (int j = 1; j < i; ++j) t.set(i, j, elems[static_cast<std::size_t>(digits[d++])]);
    out.push_back(std::move(t));
    // increment, most significant digit first in the matrix order
    int pos = m - 1;
    while (pos >= 0) {
      if (++digits[pos] < static_cast<int>(elems.size())) break;
      digits[pos--] = 0;
    }
    if (pos < 0) break;
  }
  return out;
}

std::uint64_t sltm_rank(const Sltm& t) {
  if (!t.field().is_finite()) throw Error(Errc::infinite_field, "rank needs a finite field");
  const std::uint64_t q = static_cast<std::uint64_t>(t.field().p());
  std::uint64_t rank = 0;
  for (int i = 2; i <= t.size(); ++i)
    for (int j = 1; j < i; ++j) rank = rank * q + static_cast<std::uint64_t>(t.at(i, j).residue());
  return rank;
}

}  // namespace niltri
