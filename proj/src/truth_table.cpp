#include "accwb/truth_table.hpp"

#include <bit>

#include "accwb/error.hpp"

namespace accwb {

TruthTable::TruthTable(std::size_t n_inputs) : n_(n_inputs) {
  if (n_inputs > kMaxInputs)
    throw Error(ErrorKind::ResourceLimit,
                "truth table with " + std::to_string(n_inputs) + " inputs exceeds the hard limit");
  const std::uint64_t points = std::uint64_t{1} << n_inputs;
  words_.assign(static_cast<std::size_t>((points + 63) / 64), 0);
}

TruthTable TruthTable::from_string(std::string_view bits) {
  if (bits.empty() || !std::has_single_bit(bits.size()))
    throw Error(ErrorKind::Format, "truth table string length must be a power of two");
  TruthTable table(static_cast<std::size_t>(std::countr_zero(bits.size())));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw Error(ErrorKind::Format, "truth table string may only contain 0 and 1");
    table.set(i, bits[i] == '1');
  }
  return table;
}

std::uint64_t TruthTable::lane_mask() const noexcept {
  return n_ >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << n_)) - 1;
}

std::uint64_t TruthTable::count_ones() const {
  std::uint64_t total = 0;
  for (auto w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::uint64_t TruthTable::first_one() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] != 0) return w * 64 + static_cast<std::uint64_t>(std::countr_zero(words_[w]));
  return size();
}

std::string TruthTable::to_string() const {
  std::string out(static_cast<std::size_t>(size()), '0');
  for (std::uint64_t i = 0; i < size(); ++i)
    if (get(i)) out[static_cast<std::size_t>(i)] = '1';
  return out;
}

}  // namespace accwb
