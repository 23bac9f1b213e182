#include "nlctc/boolean_form.hpp"

#include <algorithm>

#include "nlctc/error.hpp"

namespace nlctc {

namespace {

void check_parties(int parties) {
  if (parties < 1 || parties > kMaxParties) {
    throw Error(ErrorCode::kInvalidArgument,
                "party count " + std::to_string(parties) + " outside [1, " +
                    std::to_string(kMaxParties) + "]");
  }
}

// Sort and cancel pairs: GF(2) addition of monomials.
std::vector<std::uint32_t> normalize(std::vector<std::uint32_t> masks) {
  std::sort(masks.begin(), masks.end());
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < masks.size();) {
    std::size_t j = i;
    while (j < masks.size() && masks[j] == masks[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(masks[i]);
    i = j;
  }
  return out;
}

}  // namespace

TupleIndex tuple_index(std::span<const std::uint8_t> bits) {
  TupleIndex index = 0;
  for (const auto b : bits) {
    if (b > 1) throw Error(ErrorCode::kInvalidArgument, "tuple entry is not a bit");
    index = (index << 1) | b;
  }
  return index;
}

std::vector<std::uint8_t> tuple_bits(TupleIndex index, int parties) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(parties));
  for (int i = 0; i < parties; ++i) bits[static_cast<std::size_t>(i)] = bit_of(index, i, parties);
  return bits;
}

BooleanForm::BooleanForm(int parties, std::vector<std::uint32_t> masks, bool)
    : parties_(parties), monomials_(normalize(std::move(masks))) {}

BooleanForm::BooleanForm(int parties, const std::vector<std::vector<int>>& monomials)
    : parties_(parties) {
  check_parties(parties);
  std::vector<std::uint32_t> masks;
  masks.reserve(monomials.size());
  for (const auto& mono : monomials) {
    std::uint32_t mask = 0;
    for (const int idx : mono) {
      if (idx < 0 || idx >= parties) {
        throw Error(ErrorCode::kInvalidArgument, "monomial index " + std::to_string(idx) +
                                                     " out of range for " +
                                                     std::to_string(parties) + " parties");
      }
      mask |= 1u << idx;  // x.x = x
    }
    masks.push_back(mask);
  }
  monomials_ = normalize(std::move(masks));
}

BooleanForm BooleanForm::from_masks(int parties, std::vector<std::uint32_t> masks) {
  check_parties(parties);
  for (const auto m : masks) {
    if (m >> parties) throw Error(ErrorCode::kInvalidArgument, "monomial mask out of range");
  }
  return BooleanForm(parties, std::move(masks), true);
}

BooleanForm BooleanForm::from_truth_table(int parties, std::span<const std::uint8_t> values) {
  check_parties(parties);
  const std::size_t size = std::size_t{1} << parties;
  if (values.size() != size) throw Error(ErrorCode::kArity, "truth table has wrong length");
  // Work in party-mask coordinates: mask bit i <-> party i.
  std::vector<std::uint8_t> coeff(size);
  for (std::uint32_t mask = 0; mask < size; ++mask) {
    TupleIndex idx = 0;
    for (int i = 0; i < parties; ++i) {
      if (mask >> i & 1u) idx |= 1u << (parties - 1 - i);
    }
    coeff[mask] = values[idx] & 1u;
  }
  for (int i = 0; i < parties; ++i) {
    for (std::uint32_t mask = 0; mask < size; ++mask) {
      if (mask >> i & 1u) coeff[mask] ^= coeff[mask ^ (1u << i)];
    }
  }
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < size; ++mask) {
    if (coeff[mask]) masks.push_back(mask);
  }
  return BooleanForm(parties, std::move(masks), true);
}

BooleanForm BooleanForm::linear(int parties, std::uint32_t party_mask) {
  std::vector<std::uint32_t> masks;
  for (int i = 0; i < parties; ++i) {
    if (party_mask >> i & 1u) masks.push_back(1u << i);
  }
  return from_masks(parties, std::move(masks));
}

std::uint8_t BooleanForm::evaluate(std::span<const std::uint8_t> inputs) const {
  if (inputs.size() != static_cast<std::size_t>(parties_)) {
    throw Error(ErrorCode::kArity, "form over " + std::to_string(parties_) +
                                       " parties evaluated on " + std::to_string(inputs.size()) +
                                       " inputs");
  }
  return evaluate(tuple_index(inputs));
}

std::uint8_t BooleanForm::evaluate(TupleIndex inputs) const noexcept {
  std::uint32_t set = 0;  // party-mask of inputs equal to 1
  for (int i = 0; i < parties_; ++i) set |= static_cast<std::uint32_t>(bit_of(inputs, i, parties_)) << i;
  std::uint8_t value = 0;
  for (const auto m : monomials_) value ^= static_cast<std::uint8_t>((set & m) == m);
  return value;
}

BooleanForm BooleanForm::operator^(const BooleanForm& other) const {
  if (other.parties_ != parties_) throw Error(ErrorCode::kArity, "forms over different party counts");
  auto masks = monomials_;
  masks.insert(masks.end(), other.monomials_.begin(), other.monomials_.end());
  return BooleanForm(parties_, std::move(masks), true);
}

std::string input_name(int party, int parties) {
  static constexpr const char* kNames[] = {"x", "y", "z"};
  if (parties <= 3) return kNames[party];
  return "x" + std::to_string(party);
}

std::string output_name(int party, int parties) {
  static constexpr const char* kNames[] = {"a", "b", "c"};
  if (parties <= 3) return kNames[party];
  return "a" + std::to_string(party);
}

std::string BooleanForm::to_string() const {
  if (monomials_.empty()) return "0";
  std::string out;
  for (const auto m : monomials_) {
    if (!out.empty()) out += " ^ ";
    if (m == 0) {
      out += "1";
      continue;
    }
    bool first = true;
    for (int i = 0; i < parties_; ++i) {
      if (!(m >> i & 1u)) continue;
      if (!first) out += ".";
      out += input_name(i, parties_);
      first = false;
    }
  }
  return out;
}

std::vector<std::vector<int>> BooleanForm::monomial_lists() const {
  std::vector<std::vector<int>> lists;
  for (const auto m : monomials_) {
    std::vector<int> mono;
    for (int i = 0; i < parties_; ++i) {
      if (m >> i & 1u) mono.push_back(i);
    }
    lists.push_back(std::move(mono));
  }
  return lists;
}

}  // namespace nlctc
