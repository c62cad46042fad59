#pragma once
// Parameter sequences (r_k), (n_k) of the product
//   h(z) = prod_k (1 + (z / r_k)^{n_k})
// and the derived quantities m_k, s_k, T_k.
//
// Indices in the public API are 1-based, matching k in the formulas; storage is
// 0-based.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bakerlab {

class ParamSeq {
 public:
  ParamSeq(std::vector<double> r, std::vector<std::int64_t> n) : r_(std::move(r)), n_(std::move(n)) {
    if (r_.empty()) throw std::invalid_argument("ParamSeq: need at least one factor");
    if (r_.size() != n_.size()) throw std::invalid_argument("ParamSeq: r and n differ in length");
    for (std::size_t i = 0; i < r_.size(); ++i) {
      if (!std::isfinite(r_[i]) || r_[i] <= 0.0)
        throw std::invalid_argument("ParamSeq: r_" + std::to_string(i + 1) + " must be positive");
      if (i > 0 && !(r_[i] > r_[i - 1]))
        throw std::invalid_argument("ParamSeq: r must be strictly increasing");
      if (n_[i] < static_cast<std::int64_t>(i + 1))
        throw std::invalid_argument("ParamSeq: n_" + std::to_string(i + 1) + " < " + std::to_string(i + 1));
    }
  }

  std::size_t size() const { return r_.size(); }
  double r(std::size_t k) const { return r_.at(k - 1); }
  std::int64_t n(std::size_t k) const { return n_.at(k - 1); }
  const std::vector<double>& radii() const { return r_; }
  const std::vector<std::int64_t>& degrees() const { return n_; }

  /// The first `count` factors.
  ParamSeq prefix(std::size_t count) const {
    if (count == 0 || count > size()) throw std::out_of_range("ParamSeq::prefix");
    return {{r_.begin(), r_.begin() + static_cast<std::ptrdiff_t>(count)},
            {n_.begin(), n_.begin() + static_cast<std::ptrdiff_t>(count)}};
  }

  friend bool operator==(const ParamSeq&, const ParamSeq&) = default;

 private:
  std::vector<double> r_;
  std::vector<std::int64_t> n_;
};

/// m_k = sum_{j<k} n_j (m_1 = 0), s_k = (1 + 1/n_k) r_k and ln T_k with
/// T_k = prod_{j<k} (s_k / r_j)^{n_j}.
struct DerivedParams {
  std::vector<std::int64_t> m;
  std::vector<double> s;
  std::vector<double> logT;

  std::int64_t m_at(std::size_t k) const { return m.at(k - 1); }
  double s_at(std::size_t k) const { return s.at(k - 1); }
  double logT_at(std::size_t k) const { return logT.at(k - 1); }
};

inline DerivedParams derive(const ParamSeq& p) {
  const std::size_t K = p.size();
  DerivedParams d;
  d.m.resize(K);
  d.s.resize(K);
  d.logT.resize(K);
  std::int64_t m = 0;
  for (std::size_t k = 1; k <= K; ++k) {
    d.m[k - 1] = m;
    if (k < K && __builtin_add_overflow(m, p.n(k), &m))
      throw std::overflow_error("derive: m_k exceeds 63 bits");
    const double nk = static_cast<double>(p.n(k));
    d.s[k - 1] = (1.0 + 1.0 / nk) * p.r(k);
    double acc = 0.0;
    for (std::size_t j = 1; j < k; ++j)
      acc += static_cast<double>(p.n(j)) * std::log(d.s[k - 1] / p.r(j));
    d.logT[k - 1] = acc;
  }
  return d;
}

enum class ClauseStatus { Pass, Fail, UnrepresentableFail };

inline const char* to_string(ClauseStatus s) {
  switch (s) {
    case ClauseStatus::Pass: return "pass";
    case ClauseStatus::Fail: return "fail";
    case ClauseStatus::UnrepresentableFail: return "unrepresentable-fail";
  }
  return "?";
}

/// One inequality lhs >= rhs of the growth condition at index k. For the
/// degree clause both sides are natural logarithms.
struct ClauseCheck {
  std::string clause;
  std::size_t k = 0;
  ClauseStatus status = ClauseStatus::Pass;
  double lhs = 0.0;
  double rhs = 0.0;

  bool ok() const { return status == ClauseStatus::Pass; }
};

struct ValidityReport {
  std::vector<ClauseCheck> clauses;
  bool overall = true;
};

struct ValidateOptions {
  // Largest m_k ln r_k for which 4 r_k^{m_k} is still evaluated.
  double exponent_cap = 700.0;
};

/// Checks r_1 >= 2 and, for k >= 2, r_k >= 2 r_{k-1} and
/// n_k >= 20 r_k^2 exp(4 r_k^{m_k}) (the latter as ln n_k >= ln 20 + 2 ln r_k + 4 r_k^{m_k}).
inline ValidityReport validate_growth(const ParamSeq& p, const ValidateOptions& opt = {}) {
  ValidityReport rep;
  const DerivedParams d = derive(p);
  auto push = [&](ClauseCheck c) {
    rep.overall = rep.overall && c.ok();
    rep.clauses.push_back(std::move(c));
  };
  {
    ClauseCheck c{"r_1 >= 2", 1, ClauseStatus::Pass, p.r(1), 2.0};
    if (!(c.lhs >= c.rhs)) c.status = ClauseStatus::Fail;
    push(c);
  }
  for (std::size_t k = 2; k <= p.size(); ++k) {
    ClauseCheck radius{"r_k >= 2 r_{k-1}", k, ClauseStatus::Pass, p.r(k), 2.0 * p.r(k - 1)};
    if (!(radius.lhs >= radius.rhs)) radius.status = ClauseStatus::Fail;
    push(radius);

    ClauseCheck degree{"ln n_k >= ln 20 + 2 ln r_k + 4 r_k^m_k", k, ClauseStatus::Pass,
                       std::log(static_cast<double>(p.n(k))), 0.0};
    const double inner = static_cast<double>(d.m_at(k)) * std::log(p.r(k));
    if (inner > opt.exponent_cap) {
      degree.status = ClauseStatus::UnrepresentableFail;
      degree.rhs = std::numeric_limits<double>::infinity();
    } else {
      degree.rhs = std::log(20.0) + 2.0 * std::log(p.r(k)) + 4.0 * std::exp(inner);
      if (!(degree.lhs >= degree.rhs)) degree.status = ClauseStatus::Fail;
    }
    push(degree);
  }
  return rep;
}

/// Desk-scale profiles. paper2 is the two-factor prefix that satisfies the
/// growth condition: 20 r_2^2 e^{4 r_2^{m_2}} = 320 e^16 ≈ 2 843 555 366.56.
inline ParamSeq make_toy(std::string_view profile) {
  if (profile == "doubling") return {{2, 4, 8, 16}, {2, 4, 8, 16}};
  if (profile == "steep") return {{2, 4, 8, 16}, {2, 8, 64, 512}};
  if (profile == "paper2") return {{2, 4}, {1, 2'844'000'000}};
  throw std::invalid_argument("unknown profile '" + std::string(profile) + "'");
}

/// FNV-1a over the IEEE bits of r and the integers n, little-endian.
inline std::uint64_t params_hash(const ParamSeq& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  feed(p.size());
  for (std::size_t k = 1; k <= p.size(); ++k) {
    std::uint64_t bits;
    const double r = p.r(k);
    std::memcpy(&bits, &r, sizeof bits);
    feed(bits);
    feed(static_cast<std::uint64_t>(p.n(k)));
  }
  return h;
}

}  // namespace bakerlab
