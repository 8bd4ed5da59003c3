#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <functional>
#include <vector>

namespace fintopo {

using Bits = boost::dynamic_bitset<std::uint64_t>;

template <typename F>
void for_each_bit(const Bits& b, F&& f) {
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) f(static_cast<int>(i));
}

inline std::vector<int> bit_list(const Bits& b) {
  std::vector<int> out;
  out.reserve(b.count());
  for_each_bit(b, [&](int i) { out.push_back(i); });
  return out;
}

inline Bits bits_of(int n, const std::vector<int>& ids) {
  Bits b(n);
  for (int i : ids) b.set(static_cast<std::size_t>(i));
  return b;
}

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 1469598103934665603ull;
    std::vector<std::uint64_t> words(b.num_blocks());
    boost::to_block_range(b, words.begin());
    for (std::uint64_t w : words) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct IntVecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace fintopo
