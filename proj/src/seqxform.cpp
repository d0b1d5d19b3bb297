#include "ksum/seqxform.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>

#include "ksum/error.hpp"

namespace ksum {

std::string_view to_string(TransformKind kind) {
  return kind == TransformKind::LevinD ? "levin_d" : "weniger_delta";
}

TransformKind parse_transform_kind(std::string_view text) {
  if (text == "levin" || text == "d" || text == "levin_d" || text == "LevinD") return TransformKind::LevinD;
  if (text == "weniger" || text == "delta" || text == "weniger_delta" || text == "WenigerDelta") {
    return TransformKind::WenigerDelta;
  }
  fail(ErrorCode::Parse, "unknown transformation '" + std::string(text) + "' (expected levin or weniger)");
}

TermSequence::TermSequence(std::vector<BigComplex> terms, std::string descriptor)
    : terms_(std::move(terms)), descriptor_(std::move(descriptor)) {
  if (terms_.size() < 2) fail(ErrorCode::Range, "a term sequence needs at least two terms");
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (!terms_[i].is_finite()) fail(ErrorCode::Domain, "term " + std::to_string(i) + " is not finite");
    digits_ = std::max(digits_, terms_[i].digits());
  }
}

TermSequence TermSequence::with_leading_zero() const {
  std::vector<BigComplex> shifted;
  shifted.reserve(terms_.size() + 1);
  shifted.emplace_back(BigReal(0, digits_), BigReal(0, digits_));
  shifted.insert(shifted.end(), terms_.begin(), terms_.end());
  return TermSequence(std::move(shifted), descriptor_ + " [indexed from 1]");
}

PartialSums partial_sums(const TermSequence& t) {
  PartialSums out;
  out.sums.reserve(t.size());
  BigComplex acc(BigReal(0, t.digits()), BigReal(0, t.digits()));
  for (const auto& a : t.terms()) {
    acc += a;
    out.sums.push_back(acc);
  }
  return out;
}

const BigComplex& TransformTable::estimate(int k) const {
  if (k < 1 || k > max_order()) {
    fail(ErrorCode::Range,
         "transformation order " + std::to_string(k) + " not in table (1.." + std::to_string(max_order()) + ")");
  }
  return estimates[static_cast<size_t>(k - 1)];
}

namespace {

std::string cell(const BigReal& x, int significant) {
  return significant > 0 ? x.format(significant) : x.serialize();
}

// Integer weight of s_j/a_{j+1} at order k, without the sign: C(k,j) times either
// (1+j)^(k-1) or (1+j)_(k-1) = (j+k-1)!/j!.
class Weights {
 public:
  Weights(TransformKind kind, unsigned long k) : kind_(kind), k_(k) {
    if (kind_ == TransformKind::WenigerDelta) mpz_fac_ui(factorial_.get_mpz_t(), k_ - 1);
  }

  mpz_class operator()(unsigned long j) const {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), k_, j);
    mpz_class factor;
    if (kind_ == TransformKind::LevinD) {
      mpz_ui_pow_ui(factor.get_mpz_t(), j + 1, k_ - 1);
    } else {
      mpz_bin_uiui(factor.get_mpz_t(), j + k_ - 1, k_ - 1);
      factor *= factorial_;
    }
    return binom * factor;
  }

 private:
  TransformKind kind_;
  unsigned long k_;
  mpz_class factorial_;
};

BigReal l1(const BigComplex& z) { return abs(z.re()) + abs(z.im()); }

struct Prepared {
  std::vector<BigComplex> sums;
  std::vector<BigComplex> ratio;    // s_j / a_{j+1}
  std::vector<BigComplex> inverse;  // 1 / a_{j+1}
  std::vector<BigReal> ratio_size;
  std::vector<BigReal> inverse_size;
  int digits = kMinDigits;
};

Prepared prepare(const TermSequence& t, int k_max) {
  if (k_max < 1) fail(ErrorCode::Range, "transformation order must be at least 1");
  const size_t needed = static_cast<size_t>(k_max) + 2;
  if (t.size() < needed) {
    fail(ErrorCode::Range, "order " + std::to_string(k_max) + " needs " + std::to_string(needed) +
                               " terms, sequence '" + t.descriptor() + "' has " + std::to_string(t.size()));
  }
  Prepared p;
  p.digits = t.digits();
  p.sums = partial_sums(t).sums;
  const BigComplex one(BigReal(1, p.digits));
  for (int j = 0; j <= k_max; ++j) {
    const BigComplex& remainder = t[static_cast<size_t>(j) + 1];
    if (remainder.is_zero()) {
      fail(ErrorCode::DegenerateTerm, "remainder estimate a_" + std::to_string(j + 1) + " is zero (j = " +
                                          std::to_string(j) + ") in '" + t.descriptor() + "'");
    }
    BigComplex inv = one / remainder;
    p.ratio.push_back(p.sums[static_cast<size_t>(j)] * inv);
    p.ratio_size.push_back(l1(p.ratio.back()));
    p.inverse_size.push_back(l1(inv));
    p.inverse.push_back(std::move(inv));
  }
  return p;
}

struct OrderResult {
  BigComplex numerator;
  BigComplex denominator;
  StopReason status = StopReason::None;
};

OrderResult evaluate_order(const Prepared& p, TransformKind kind, int k) {
  const Weights weights(kind, static_cast<unsigned long>(k));
  BigComplex num(BigReal(0, p.digits), BigReal(0, p.digits));
  BigComplex den = num;
  BigReal num_scale(0, p.digits);
  BigReal den_scale(0, p.digits);
  for (int j = 0; j <= k; ++j) {
    BigReal w = BigReal::from_integer(weights(static_cast<unsigned long>(j)), p.digits);
    const BigReal w_abs = w;
    if (j % 2 == 1) w = -w;
    num += p.ratio[static_cast<size_t>(j)] * w;
    den += p.inverse[static_cast<size_t>(j)] * w;
    num_scale += w_abs * p.ratio_size[static_cast<size_t>(j)];
    den_scale += w_abs * p.inverse_size[static_cast<size_t>(j)];
  }
  OrderResult r{std::move(num), std::move(den), StopReason::None};
  if (r.denominator.is_zero()) {
    r.status = StopReason::ZeroDenominator;
    return r;
  }
  const BigReal tiny = ten_to_minus(p.digits - 10, p.digits);
  if (l1(r.numerator) <= num_scale * tiny && l1(r.denominator) <= den_scale * tiny) {
    r.status = StopReason::Indeterminate;
  }
  return r;
}

}  // namespace

TransformTable transform(const TermSequence& t, TransformKind kind, int k_max) {
  const Prepared p = prepare(t, k_max);
  TransformTable table;
  table.kind = kind;
  table.requested_order = k_max;
  table.partial_sums = p.sums;
  for (int k = 1; k <= k_max; ++k) {
    OrderResult r = evaluate_order(p, kind, k);
    if (r.status != StopReason::None) {
      table.stop = r.status;
      break;
    }
    table.estimates.push_back(r.numerator / r.denominator);
    table.denominators.push_back(std::move(r.denominator));
  }
  return table;
}

TransformTable transform(const TermSequence& t, TransformKind kind, int k_max, Indexing indexing) {
  return indexing == Indexing::ZeroBased ? transform(t, kind, k_max) : transform(t.with_leading_zero(), kind, k_max);
}

TransformTable levin_d(const TermSequence& t, int k_max) { return transform(t, TransformKind::LevinD, k_max); }

TransformTable weniger_delta(const TermSequence& t, int k_max) {
  return transform(t, TransformKind::WenigerDelta, k_max);
}

BigComplex transform_at(const TermSequence& t, TransformKind kind, int k) {
  const Prepared p = prepare(t, k);
  OrderResult r = evaluate_order(p, kind, k);
  if (r.status == StopReason::ZeroDenominator) {
    fail(ErrorCode::Numerical, std::string(to_string(kind)) + " denominator vanishes at order " + std::to_string(k));
  }
  if (r.status == StopReason::Indeterminate) {
    fail(ErrorCode::Numerical, std::string(to_string(kind)) + " is indeterminate (0/0) at order " + std::to_string(k));
  }
  return r.numerator / r.denominator;
}

std::string TransformTable::to_csv(int significant) const {
  std::ostringstream os;
  os << "order,partial_sum_re,partial_sum_im,estimate_re,estimate_im\n";
  for (int k = 1; k <= max_order(); ++k) {
    const BigComplex& s = partial_sums[static_cast<size_t>(k)];
    const BigComplex& e = estimates[static_cast<size_t>(k - 1)];
    os << k << ',' << cell(s.re(), significant) << ',' << cell(s.im(), significant) << ','
       << cell(e.re(), significant) << ',' << cell(e.im(), significant) << '\n';
  }
  return os.str();
}

std::string TransformTable::to_json(int significant) const {
  nlohmann::ordered_json doc;
  doc["kind"] = std::string(to_string(kind));
  doc["requested_order"] = requested_order;
  doc["stop"] = stop == StopReason::None ? "none"
                : stop == StopReason::ZeroDenominator ? "zero_denominator"
                                                      : "indeterminate";
  auto rows = nlohmann::ordered_json::array();
  for (int k = 1; k <= max_order(); ++k) {
    const BigComplex& s = partial_sums[static_cast<size_t>(k)];
    const BigComplex& e = estimates[static_cast<size_t>(k - 1)];
    const BigComplex& d = denominators[static_cast<size_t>(k - 1)];
    rows.push_back({{"order", k},
                    {"partial_sum", {{"re", cell(s.re(), significant)}, {"im", cell(s.im(), significant)}}},
                    {"estimate", {{"re", cell(e.re(), significant)}, {"im", cell(e.im(), significant)}}},
                    {"denominator", {{"re", cell(d.re(), significant)}, {"im", cell(d.im(), significant)}}}});
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace ksum
