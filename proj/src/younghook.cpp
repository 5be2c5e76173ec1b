#include "frattini/younghook.hpp"

#include <functional>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "frattini/error.hpp"

namespace frattini {

std::vector<std::size_t> conjugate(const std::vector<std::size_t>& parts) {
  std::vector<std::size_t> out(parts.empty() ? 0 : parts.front(), 0);
  for (auto part : parts) {
    for (std::size_t t = 0; t < part; ++t) ++out[t];
  }
  return out;
}

SelfConjugatePartition::SelfConjugatePartition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] == 0) throw InvalidArgument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw InvalidArgument("partition parts must be weakly decreasing");
    size_ += parts_[i];
    if (parts_[i] >= i + 1) ++diagonal_;
  }
  if (conjugate(parts_) != parts_) throw InvalidArgument("partition is not self-conjugate");
}

std::size_t SelfConjugatePartition::hook_length(std::size_t s, std::size_t t) const {
  if (s < 1 || s > parts_.size() || t < 1 || t > parts_[s - 1]) throw IndexOutOfRange("cell outside the diagram");
  // Self-conjugate: the column length of column t is parts[t - 1].
  return (parts_[s - 1] - t) + (parts_[t - 1] - s) + 1;
}

std::vector<SelfConjugatePartition> enumerate_self_conjugate(std::size_t size, std::size_t diagonal) {
  std::vector<SelfConjugatePartition> out;
  std::vector<std::size_t> hooks;
  // Distinct odd parts, strictly decreasing, each at most `max_part`.
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t remaining, std::size_t max_part) {
    if (hooks.size() == diagonal) {
      if (remaining != 0) return;
      // Diagonal hook i has arm = leg = (h_i - 1) / 2.
      std::vector<std::size_t> parts;
      for (std::size_t i = 0; i < hooks.size(); ++i) parts.push_back((hooks[i] - 1) / 2 + i + 1);
      for (std::size_t row = hooks.size() + 1;; ++row) {
        std::size_t len = 0;
        for (std::size_t j = 0; j < hooks.size(); ++j) {
          if (j + 1 + (hooks[j] - 1) / 2 >= row) ++len;
        }
        if (len == 0) break;
        parts.push_back(len);
      }
      out.emplace_back(std::move(parts));
      return;
    }
    const std::size_t left = diagonal - hooks.size();
    // The smallest admissible tail 1 + 3 + ... uses (left - 1)^2 cells.
    for (std::size_t h = max_part; h >= 1; h -= 2) {
      if (h <= remaining && (left - 1) * (left - 1) <= remaining - h) {
        hooks.push_back(h);
        extend(remaining - h, h >= 2 ? h - 2 : 0);
        hooks.pop_back();
      }
      if (h < 2) break;
    }
  };
  const std::size_t largest = size % 2 == 1 ? size : (size == 0 ? 0 : size - 1);
  if (diagonal == 0) {
    if (size == 0) out.emplace_back(std::vector<std::size_t>{});
    return out;
  }
  extend(size, largest);
  return out;
}

BigInt hook_content_dimension(const SelfConjugatePartition& lambda, std::size_t n) {
  using boost::multiprecision::cpp_rational;
  if (n < 1) throw InvalidArgument("hook_content_dimension needs n >= 1");
  cpp_rational product = 1;
  const auto& parts = lambda.parts();
  for (std::size_t s = 1; s <= parts.size(); ++s) {
    for (std::size_t t = 1; t <= parts[s - 1]; ++t) {
      const auto content = static_cast<long long>(n) + static_cast<long long>(t) - static_cast<long long>(s);
      product *= cpp_rational(content, static_cast<long long>(lambda.hook_length(s, t)));
    }
  }
  if (denominator(product) != 1) {
    throw NonIntegerResult("hook-content product is not an integer: " + product.str());
  }
  return numerator(product);
}

std::vector<std::uint64_t> unp_betti(std::size_t n, std::size_t max_n) {
  if (n < 1) throw InvalidArgument("unp_betti needs n >= 1");
  if (n > max_n) throw SizeLimitExceeded("unp_betti: n = " + std::to_string(n) + " exceeds the cap " + std::to_string(max_n));
  const std::size_t m = n * (n + 1) / 2;
  std::vector<std::uint64_t> out(m + 1, 0);
  for (std::size_t i = 0; i <= m; ++i) {
    BigInt total = 0;
    for (std::size_t f = 0; f <= i; ++f) {
      const std::size_t g = i - f;
      for (const auto& lambda : enumerate_self_conjugate(f + 2 * g, f)) total += hook_content_dimension(lambda, n);
    }
    if (total < 0 || total > std::numeric_limits<std::uint64_t>::max()) {
      throw NonIntegerResult("Betti number out of range: " + total.str());
    }
    out[i] = total.convert_to<std::uint64_t>();
  }
  return out;
}

}  // namespace frattini
