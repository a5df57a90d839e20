#include "niltri/gamma.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "niltri/error.hpp"

namespace niltri {

GammaMatrix::GammaMatrix(int rows, int cols, const FieldSpec& field)
    : rows_(rows), cols_(cols), field_(field) {
  if (rows < 1 || cols < 1) throw Error(Errc::bad_size, "matrix dimensions must be positive");
  entries_.assign(static_cast<std::size_t>(rows) * cols, Scalar::zero(field));
}

GammaMatrix GammaMatrix::identity(int n, const FieldSpec& field) {
  GammaMatrix g(n, n, field);
  for (int i = 1; i <= n; ++i) g.set(i, i, Scalar::one(field));
  return g;
}

std::size_t GammaMatrix::index(int i, int j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_)
    throw Error(Errc::bad_index, "matrix index out of range");
  return static_cast<std::size_t>(i - 1) * cols_ + (j - 1);
}

void GammaMatrix::set(int i, int j, const Scalar& v) {
  if (v.field() != field_) throw Error(Errc::field_mismatch, "entry from the wrong field");
  entries_[index(i, j)] = v;
}

GammaMatrix GammaMatrix::operator*(const GammaMatrix& o) const {
  if (cols_ != o.rows_ || field_ != o.field_)
    throw Error(Errc::dimension_mismatch, "incompatible matrix product");
  GammaMatrix r(rows_, o.cols_, field_);
  for (int i = 1; i <= rows_; ++i)
    for (int j = 1; j <= o.cols_; ++j) {
      Scalar acc = Scalar::zero(field_);
      for (int k = 1; k <= cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
      r.set(i, j, acc);
    }
  return r;
}

bool GammaMatrix::operator==(const GammaMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != o.entries_[i]) return false;
  return true;
}

Scalar GammaMatrix::determinant() const {
  if (rows_ != cols_) throw Error(Errc::dimension_mismatch, "determinant of non-square matrix");
  GammaMatrix a = *this;
  Scalar det = Scalar::one(field_);
  for (int col = 1; col <= cols_; ++col) {
    int pivot = 0;
    for (int r = col; r <= rows_; ++r)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == 0) return Scalar::zero(field_);
    if (pivot != col) {
      for (int c = 1; c <= cols_; ++c) {
        Scalar tmp = a.at(col, c);
        a.set(col, c, a.at(pivot, c));
        a.set(pivot, c, tmp);
      }
      det = -det;
    }
    det = det * a.at(col, col);
    Scalar inv = a.at(col, col).inv();
    for (int r = col + 1; r <= rows_; ++r) {
      Scalar factor = a.at(r, col) * inv;
      if (factor.is_zero()) continue;
      for (int c = col; c <= cols_; ++c) a.set(r, c, a.at(r, c) - factor * a.at(col, c));
    }
  }
  return det;
}

GammaMatrix GammaMatrix::inverse() const {
  if (rows_ != cols_) throw Error(Errc::dimension_mismatch, "inverse of non-square matrix");
  const int n = rows_;
  GammaMatrix a = *this;
  GammaMatrix inv = identity(n, field_);
  for (int col = 1; col <= n; ++col) {
    int pivot = 0;
    for (int r = col; r <= n; ++r)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == 0) throw Error(Errc::singular, "matrix is singular");
    if (pivot != col)
      for (int c = 1; c <= n; ++c) {
        Scalar tmp = a.at(col, c);
        a.set(col, c, a.at(pivot, c));
        a.set(pivot, c, tmp);
        tmp = inv.at(col, c);
        inv.set(col, c, inv.at(pivot, c));
        inv.set(pivot, c, tmp);
      }
    Scalar pi = a.at(col, col).inv();
    for (int c = 1; c <= n; ++c) {
      a.set(col, c, a.at(col, c) * pi);
      inv.set(col, c, inv.at(col, c) * pi);
    }
    for (int r = 1; r <= n; ++r) {
      if (r == col) continue;
      Scalar factor = a.at(r, col);
      if (factor.is_zero()) continue;
      for (int c = 1; c <= n; ++c) {
        a.set(r, c, a.at(r, c) - factor * a.at(col, c));
        inv.set(r, c, inv.at(r, c) - factor * inv.at(col, c));
      }
    }
  }
  return inv;
}

nlohmann::json GammaMatrix::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 1; i <= rows_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 1; j <= cols_; ++j) row.push_back(at(i, j).to_string());
    entries.push_back(std::move(row));
  }
  return nlohmann::json{{"rows", rows_},
                        {"cols", cols_},
                        {"field", field_.to_string()},
                        {"entries", std::move(entries)}};
}

GammaMatrix GammaMatrix::from_json(const nlohmann::json& j, const FieldSpec& field) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("matrix JSON requires keys rows, cols, entries", 1, 1);
  FieldSpec f = field;
  if (j.contains("field")) f = FieldSpec::parse(j.at("field").get<std::string>());
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<int>(entries.size()) != rows)
    throw ParseError("entries must have one array per row", 1, 1);
  GammaMatrix g(rows, cols, f);
  for (int i = 1; i <= rows; ++i) {
    const auto& row = entries[static_cast<std::size_t>(i - 1)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ParseError("row " + std::to_string(i) + " has the wrong width", i, 1);
    for (int c = 1; c <= cols; ++c) {
      const auto& cell = row[static_cast<std::size_t>(c - 1)];
      if (cell.is_number_integer())
        g.set(i, c, Scalar::from_int(f, cell.get<std::int64_t>()));
      else
        g.set(i, c, Scalar::parse(f, cell.get<std::string>()));
    }
  }
  return g;
}

std::string GammaMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 1; i <= rows_; ++i) {
    os << '[';
    for (int j = 1; j <= cols_; ++j) {
      if (j > 1) os << ' ';
      os << at(i, j).to_string();
    }
    os << "]\n";
  }
  return os.str();
}

}  // namespace niltri
