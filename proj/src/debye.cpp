#include "ksum/debye.hpp"

#include <nlohmann/json.hpp>

#include "ksum/error.hpp"

namespace ksum {

namespace {

const BigRational& at(const DebyeRow& row, long m) {
  static const BigRational zero;
  return (m < 0 || m >= static_cast<long>(row.size())) ? zero : row[static_cast<size_t>(m)];
}

}  // namespace

DebyeRow next_debye_row(const DebyeRow& row) {
  const long k = (static_cast<long>(row.size()) - 1) / 3;
  const long top = 3 * k + 3;
  DebyeRow next(static_cast<size_t>(top + 1));
  // a^{k+1}_m = (2m-1)^2/(8m) a^k_{m-1} - (4m(m-3)+5)/(8m) a^k_{m-3}, zero outside the row.
  // Specialised at m = 1, 2, 3, 3k+2, 3k+3 this is the full set of boundary cases.
  for (long m = 1; m <= top; ++m) {
    mpq_class value;
    const BigRational& lo = at(row, m - 1);
    const BigRational& lo3 = at(row, m - 3);
    if (!lo.is_zero()) value = mpq_class((2 * m - 1) * (2 * m - 1), 8 * m) * lo.get();
    if (!lo3.is_zero()) value -= mpq_class(4 * m * (m - 3) + 5, 8 * m) * lo3.get();
    next[static_cast<size_t>(m)] = BigRational(std::move(value));
  }
  return next;
}

BigRational ratio_law_factor(int k) {
  const long kk = k;
  return BigRational(-(36 * kk * (kk + 1) + 5), 24 * (kk + 1));
}

DebyeRowStream::DebyeRowStream() : row_{BigRational(1)} {}

void DebyeRowStream::advance() {
  row_ = next_debye_row(row_);
  ++k_;
}

void DebyeRowStream::advance_to(int k) {
  if (k < k_) fail(ErrorCode::Range, "Debye stream is already past order " + std::to_string(k));
  while (k_ < k) advance();
}

DebyeTable DebyeTable::generate(int k_max) {
  if (k_max < 0) fail(ErrorCode::Range, "Debye table order must be nonnegative");
  DebyeTable t;
  t.rows_.reserve(static_cast<size_t>(k_max) + 1);
  t.rows_.push_back({BigRational(1)});
  for (int k = 0; k < k_max; ++k) t.rows_.push_back(next_debye_row(t.rows_.back()));
  return t;
}

DebyeTable DebyeTable::from_rows(std::vector<DebyeRow> rows) {
  if (rows.empty()) fail(ErrorCode::Range, "Debye table needs at least row 0");
  for (size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != 3 * k + 1) {
      fail(ErrorCode::Range, "Debye row " + std::to_string(k) + " must have " + std::to_string(3 * k + 1) +
                                 " coefficients, got " + std::to_string(rows[k].size()));
    }
  }
  DebyeTable t;
  t.rows_ = std::move(rows);
  return t;
}

const DebyeRow& DebyeTable::row(int k) const {
  if (k < 0 || k > k_max()) {
    fail(ErrorCode::Range, "Debye order " + std::to_string(k) + " outside table (0.." + std::to_string(k_max()) + ")");
  }
  return rows_[static_cast<size_t>(k)];
}

const BigRational& DebyeTable::coeff(int k, int m) const {
  const DebyeRow& r = row(k);
  if (m < 0 || m >= static_cast<int>(r.size())) {
    fail(ErrorCode::Range, "coefficient a^" + std::to_string(k) + "_" + std::to_string(m) + " does not exist");
  }
  return r[static_cast<size_t>(m)];
}

std::string DebyeTable::to_json() const {
  nlohmann::json doc;
  doc["k_max"] = k_max();
  auto rows = nlohmann::json::array();
  for (const auto& r : rows_) {
    auto out = nlohmann::json::array();
    for (const auto& c : r) out.push_back(c.to_string());
    rows.push_back(std::move(out));
  }
  doc["rows"] = std::move(rows);
  return doc.dump() + "\n";
}

BigReal eval_row(const DebyeRow& row, const BigReal& t) {
  const int digits = t.digits();
  BigReal acc(0, digits);
  for (auto it = row.rbegin(); it != row.rend(); ++it) {
    acc *= t;
    if (!it->is_zero()) acc += rational_to_real(*it, digits);
  }
  return acc;
}

BigReal eval_poly(const DebyeTable& table, int k, const BigReal& t) { return eval_row(table.row(k), t); }

std::vector<BigReal> eval_all(const DebyeTable& table, const BigReal& t) {
  std::vector<BigReal> out;
  out.reserve(static_cast<size_t>(table.k_max()) + 1);
  for (int k = 0; k <= table.k_max(); ++k) out.push_back(eval_poly(table, k, t));
  return out;
}

BigReal leading_coeff_asymptote(int k, int digits) {
  if (k < 1) fail(ErrorCode::Range, "asymptotic law needs k >= 1");
  BigReal v(10000, digits);
  for (int j = 1; j < k; ++j) v *= BigReal(3, digits) * j / 2;
  return v;
}

std::optional<int> first_ratio_law_violation(const DebyeTable& table) {
  for (int k = 0; k < table.k_max(); ++k) {
    const BigRational expected = ratio_law_factor(k) * table.coeff(k, 3 * k);
    if (!(table.coeff(k + 1, 3 * k + 3) == expected)) return k;
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> first_parity_violation(const DebyeTable& table) {
  for (int k = 0; k <= table.k_max(); ++k) {
    const DebyeRow& r = table.row(k);
    for (int m = 0; m < static_cast<int>(r.size()); ++m) {
      if ((m - k) % 2 != 0 && !r[static_cast<size_t>(m)].is_zero()) return std::make_pair(k, m);
    }
  }
  return std::nullopt;
}

}  // namespace ksum
