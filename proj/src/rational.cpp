#include "crn/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace crn {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::from_int(const IntMatrix& m) {
  RationalMatrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = Rational(static_cast<long>(m(i, j)));
  }
  return out;
}

std::vector<Rational> RationalMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

void RationalMatrix::append_row(const std::vector<Rational>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

RationalMatrix RationalMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  RationalMatrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = (*this)(i, cols[k]);
  }
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("dimension mismatch in product");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  }
  return out;
}

bool RationalMatrix::is_zero() const {
  for (const auto& q : data_) {
    if (q != 0) return false;
  }
  return true;
}

bool RationalMatrix::operator==(const RationalMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

namespace {

// Scales a rational row to a primitive integer row (gcd 1, same direction).
std::vector<mpz_class> to_primitive(const std::vector<Rational>& row) {
  mpz_class lcm = 1;
  for (const auto& q : row) {
    if (q != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<mpz_class> out(row.size());
  mpz_class g = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    out[j] = row[j].get_num() * (lcm / row[j].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
  }
  if (g > 1) {
    for (auto& v : out) v /= g;
  }
  return out;
}

void make_primitive(std::vector<mpz_class>& row) {
  mpz_class g = 0;
  for (const auto& v : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1) {
    for (auto& v : row) v /= g;
  }
}

}  // namespace

EchelonForm rref(const RationalMatrix& m, const std::vector<std::size_t>& column_order) {
  std::vector<std::size_t> order = column_order;
  if (order.empty()) {
    order.resize(m.cols());
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  // Fraction-free Gauss-Jordan on primitive integer rows; rows are divided
  // through by their pivot only at the end.
  std::vector<std::vector<mpz_class>> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_primitive(m.row(i)));

  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t col : order) {
    if (next == rows.size()) break;
    std::size_t found = rows.size();
    for (std::size_t i = next; i < rows.size(); ++i) {
      if (rows[i][col] != 0) {
        found = i;
        break;
      }
    }
    if (found == rows.size()) continue;
    std::swap(rows[next], rows[found]);
    const std::vector<mpz_class>& piv = rows[next];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == next || rows[i][col] == 0) continue;
      mpz_class a = piv[col];
      mpz_class b = rows[i][col];
      for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = a * rows[i][j] - b * piv[j];
      make_primitive(rows[i]);
    }
    pivots.push_back(col);
    ++next;
  }

  EchelonForm out;
  out.reduced = RationalMatrix(next, m.cols());
  for (std::size_t i = 0; i < next; ++i) {
    const mpz_class& p = rows[i][pivots[i]];
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out.reduced(i, j) = Rational(rows[i][j], p);
      out.reduced(i, j).canonicalize();
    }
  }
  out.pivots = std::move(pivots);
  return out;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }

RationalMatrix right_kernel(const RationalMatrix& m) {
  EchelonForm e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    basis.append_row(v);
  }
  if (basis.rows() == 0) return RationalMatrix(0, m.cols());
  return rref(basis).reduced;
}

std::string to_string(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace crn
