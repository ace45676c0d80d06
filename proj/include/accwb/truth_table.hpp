#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace accwb {

/// One bit per point of {0,1}^n. Index i is the i-th n-bit string in
/// lexicographic order with x1 as the most significant position, so the
/// assignment 10 on two inputs is index 2.
///
/// Storage is packed 64 points per word, index i at word i / 64, bit i % 64.
class TruthTable {
 public:
  static constexpr std::size_t kMaxInputs = 34;

  explicit TruthTable(std::size_t n_inputs);

  /// Builds from a string of '0'/'1' characters whose length is a power of two.
  static TruthTable from_string(std::string_view bits);

  std::size_t n_inputs() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << n_; }

  bool get(std::uint64_t index) const { return (words_[index >> 6] >> (index & 63)) & 1U; }
  void set(std::uint64_t index, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (index & 63);
    if (value)
      words_[index >> 6] |= bit;
    else
      words_[index >> 6] &= ~bit;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  /// Mask of the valid lanes of the last (or only) word.
  std::uint64_t lane_mask() const noexcept;

  std::uint64_t count_ones() const;
  /// Index of the least set bit, or size() when the table is all zero.
  std::uint64_t first_one() const;

  std::string to_string() const;

  bool operator==(const TruthTable&) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> words_;
};

}  // namespace accwb
