#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffbasis/errors.hpp"

namespace ffbasis {

/// j together with its base-q digits, least significant first.
struct DigitIndex {
  std::uint64_t value = 0;
  unsigned base = 2;
  std::vector<unsigned> digits;  // empty for j = 0; digits.back() != 0 otherwise

  static DigitIndex of(std::uint64_t j, unsigned q) {
    if (q < 2) throw DomainError("digit base must be at least 2");
    DigitIndex d{j, q, {}};
    for (std::uint64_t t = j; t > 0; t /= q) d.digits.push_back(static_cast<unsigned>(t % q));
    return d;
  }

  /// Number of digit positions (s + 1 for j = a_0 + ... + a_s q^s).
  std::size_t positions() const noexcept { return digits.size(); }

  std::uint64_t reconstruct() const noexcept {
    std::uint64_t v = 0;
    for (std::size_t i = digits.size(); i-- > 0;) v = v * base + digits[i];
    return v;
  }
};

/// True for j = q^n, n >= 0.
inline bool is_power_of(std::uint64_t j, unsigned q) {
  if (j == 0) return false;
  while (j % q == 0) j /= q;
  return j == 1;
}

/// Powers b_n^a (0 <= a < q) of the values b_n of a linear basis at a fixed
/// point, from which every digit product is assembled:
///   plain:  prod_n b_n^{a_n}
///   primed: the factor for a digit a_n = q-1 is b_n^{q-1} - 1 instead.
template <class V>
class DigitPowers {
 public:
  DigitPowers(const std::vector<V>& base, unsigned q, V one) : q_(q), one_(std::move(one)) {
    pow_.reserve(base.size());
    primed_top_.reserve(base.size());
    for (const V& b : base) {
      std::vector<V> row;
      row.reserve(q);
      row.push_back(one_);
      for (unsigned a = 1; a < q; ++a) row.push_back(row.back() * b);
      primed_top_.push_back(row[q - 1] - one_);
      pow_.push_back(std::move(row));
    }
  }

  std::size_t positions() const noexcept { return pow_.size(); }

  V product(const DigitIndex& j, bool primed) const {
    if (j.base != q_) throw DomainError("digit index base does not match the field");
    if (j.positions() > pow_.size())
      throw DomainError("digit index " + std::to_string(j.value) + " needs " + std::to_string(j.positions()) +
                        " basis values, have " + std::to_string(pow_.size()));
    V r = one_;
    bool first = true;
    for (std::size_t n = 0; n < j.positions(); ++n) {
      const unsigned a = j.digits[n];
      if (!primed && a == 0) continue;
      const V& f = (primed && a == q_ - 1) ? primed_top_[n] : pow_[n][a];
      if (first) {
        r = f;
        first = false;
      } else {
        r = r * f;
      }
    }
    return r;
  }

 private:
  unsigned q_;
  V one_;
  std::vector<std::vector<V>> pow_;
  std::vector<V> primed_top_;
};

}  // namespace ffbasis
