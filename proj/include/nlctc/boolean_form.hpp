#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nlctc {

inline constexpr int kMaxParties = 8;

// Tuples of bits are packed into an index with party 0 as the most significant
// bit, so numeric order of indices equals lexicographic order of tuples.
using TupleIndex = std::uint32_t;

TupleIndex tuple_index(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> tuple_bits(TupleIndex index, int parties);
inline std::uint8_t bit_of(TupleIndex index, int party, int parties) {
  return static_cast<std::uint8_t>((index >> (parties - 1 - party)) & 1u);
}
inline std::uint8_t parity(TupleIndex index) {
  return static_cast<std::uint8_t>(__builtin_popcount(index) & 1);
}

/// XOR of AND-monomials over the parties' input bits, kept in algebraic normal
/// form: each monomial is a bitmask over party indices (bit i = party i) and the
/// set is sorted and duplicate-free. The ANF is canonical, so two forms are
/// equal exactly when they define the same function.
class BooleanForm {
 public:
  /// Each inner vector lists the party indices of one AND monomial. A repeated
  /// monomial cancels (x ^ x = 0); an empty monomial is the constant 1.
  BooleanForm(int parties, const std::vector<std::vector<int>>& monomials);

  static BooleanForm from_masks(int parties, std::vector<std::uint32_t> masks);
  /// Moebius transform of a truth table indexed by TupleIndex.
  static BooleanForm from_truth_table(int parties, std::span<const std::uint8_t> values);
  /// x_i for every i in the mask, XORed together.
  static BooleanForm linear(int parties, std::uint32_t party_mask);

  int parties() const noexcept { return parties_; }
  const std::vector<std::uint32_t>& monomials() const noexcept { return monomials_; }
  bool is_zero() const noexcept { return monomials_.empty(); }

  std::uint8_t evaluate(std::span<const std::uint8_t> inputs) const;
  std::uint8_t evaluate(TupleIndex inputs) const noexcept;

  BooleanForm operator^(const BooleanForm& other) const;
  bool operator==(const BooleanForm& other) const = default;

  /// "x.y ^ y.z ^ z.x" with x, y, z for up to three parties, x0.. otherwise.
  std::string to_string() const;
  /// Monomials as sorted index lists, the inverse of the constructor.
  std::vector<std::vector<int>> monomial_lists() const;

 private:
  BooleanForm(int parties, std::vector<std::uint32_t> masks, bool);

  int parties_;
  std::vector<std::uint32_t> monomials_;
};

std::string input_name(int party, int parties);
std::string output_name(int party, int parties);

}  // namespace nlctc
