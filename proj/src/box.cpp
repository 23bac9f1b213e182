#include "nlctc/box.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "nlctc/error.hpp"

namespace nlctc {

PartySet::PartySet(std::initializer_list<int> parties) {
  for (const int p : parties) {
    if (p < 0 || p >= kMaxParties) throw Error(ErrorCode::kInvalidArgument, "party index out of range");
    mask_ |= 1u << p;
  }
}

PartySet PartySet::from_members(std::span<const int> parties) {
  std::uint32_t mask = 0;
  for (const int p : parties) {
    if (p < 0 || p >= kMaxParties) throw Error(ErrorCode::kInvalidArgument, "party index out of range");
    mask |= 1u << p;
  }
  return PartySet(mask);
}

std::vector<int> PartySet::members() const {
  std::vector<int> out;
  for (int i = 0; i < kMaxParties; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string party_name(int party) {
  static constexpr const char* kNames[] = {"alice", "bob", "charlie"};
  if (party >= 0 && party < 3) return kNames[party];
  return "p" + std::to_string(party);
}

std::optional<int> parse_party(std::string_view text) {
  std::string lower;
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  for (int i = 0; i < 3; ++i) {
    if (lower == party_name(i)) return i;
  }
  if (lower.size() > 1 && lower[0] == 'p') lower.erase(0, 1);
  if (lower.empty() || lower.size() > 2 ||
      !std::all_of(lower.begin(), lower.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  const int idx = std::stoi(lower);
  if (idx >= kMaxParties) return std::nullopt;
  return idx;
}

PartySet parse_party_list(std::string_view text) {
  std::uint32_t mask = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const bool blank = std::all_of(item.begin(), item.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank) {
      const auto p = parse_party(item);
      if (!p) throw Error(ErrorCode::kInvalidArgument, "unknown party '" + std::string(item) + "'");
      mask |= 1u << *p;
    } else if (comma != std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument, "empty entry in party list");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return PartySet(mask);
}

std::string format_party_list(PartySet parties) {
  std::string out;
  for (const int p : parties.members()) out += (out.empty() ? "" : ",") + party_name(p);
  return out;
}

TupleIndex project(TupleIndex full, PartySet coalition, int parties) {
  TupleIndex sub = 0;
  for (int i = 0; i < parties; ++i) {
    if (coalition.contains(i)) sub = (sub << 1) | bit_of(full, i, parties);
  }
  return sub;
}

TupleIndex embed(TupleIndex base, TupleIndex sub, PartySet coalition, int parties) {
  int remaining = coalition.size();
  for (int i = 0; i < parties; ++i) {
    if (!coalition.contains(i)) continue;
    --remaining;
    const std::uint32_t bit = sub >> remaining & 1u;
    const std::uint32_t pos = 1u << (parties - 1 - i);
    base = bit ? (base | pos) : (base & ~pos);
  }
  return base;
}

NoSignalBox::NoSignalBox(int parties, std::vector<Rational> table)
    : parties_(parties), table_(std::move(table)) {
  if (parties < 1 || parties > kMaxParties) {
    throw Error(ErrorCode::kInvalidArgument, "party count out of range");
  }
  const std::size_t n = settings();
  if (table_.size() != n * n) {
    throw Error(ErrorCode::kInvariant, "table must have 4^n entries");
  }
  for (TupleIndex in = 0; in < n; ++in) {
    Rational sum = 0;
    for (TupleIndex out = 0; out < n; ++out) {
      const auto& p = table_[in * n + out];
      if (p < 0) {
        throw Error(ErrorCode::kInvariant, "negative probability at input " + std::to_string(in) +
                                               ", output " + std::to_string(out));
      }
      sum += p;
    }
    if (sum != 1) {
      throw Error(ErrorCode::kInvariant, "row for input " + std::to_string(in) + " sums to " +
                                             to_display_string(sum) + ", not 1");
    }
  }
}

Rational NoSignalBox::probability(std::span<const std::uint8_t> inputs,
                                  std::span<const std::uint8_t> outputs) const {
  if (inputs.size() != static_cast<std::size_t>(parties_) ||
      outputs.size() != static_cast<std::size_t>(parties_)) {
    throw Error(ErrorCode::kArity, "tuple length does not match party count");
  }
  return probability(tuple_index(inputs), tuple_index(outputs));
}

NoSignalBox parity_box(const BooleanForm& form) {
  const int n = form.parties();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "parity box needs at least 2 parties");
  const std::uint32_t size = 1u << n;
  const Rational mass(1, std::int64_t{1} << (n - 1));
  std::vector<Rational> table(std::size_t{size} * size, Rational(0));
  for (TupleIndex in = 0; in < size; ++in) {
    const auto rhs = form.evaluate(in);
    for (TupleIndex out = 0; out < size; ++out) {
      if (parity(out) == rhs) table[in * size + out] = mass;
    }
  }
  return NoSignalBox(n, std::move(table));
}

BooleanForm named_form(NamedBox name) {
  switch (name) {
    case NamedBox::kPr:
      return BooleanForm(2, {{0, 1}});
    case NamedBox::kSvetlichny:
      return BooleanForm(3, {{0, 1}, {1, 2}, {2, 0}});
    case NamedBox::kMermin1:
      return BooleanForm(3, {{0, 1}, {0, 2}});
    case NamedBox::kMermin2:
      return BooleanForm(3, {{0, 1, 2}});
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown box");
}

NoSignalBox named_box(NamedBox name) { return parity_box(named_form(name)); }

namespace {
constexpr std::array<std::pair<NamedBox, std::string_view>, 4> kBoxNames{{
    {NamedBox::kPr, "pr"},
    {NamedBox::kSvetlichny, "svetlichny"},
    {NamedBox::kMermin1, "mermin1"},
    {NamedBox::kMermin2, "mermin2"},
}};
}  // namespace

std::string_view box_name(NamedBox name) {
  for (const auto& [box, text] : kBoxNames) {
    if (box == name) return text;
  }
  return "?";
}

std::optional<NamedBox> parse_box_name(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& [box, name] : kBoxNames) {
    if (name == lower) return box;
  }
  return std::nullopt;
}

std::optional<BooleanForm> parity_form_of(const NoSignalBox& box) {
  const int n = box.parties();
  if (n < 2) return std::nullopt;
  const std::uint32_t size = box.settings();
  const Rational mass(1, std::int64_t{1} << (n - 1));
  std::vector<std::uint8_t> truth(size);
  for (TupleIndex in = 0; in < size; ++in) {
    const auto row = box.row(in);
    // The parity of any supported output fixes f(in); the row must then be
    // exactly the uniform distribution on that parity class.
    const auto first = std::find_if(row.begin(), row.end(), [](const Rational& p) { return p != 0; });
    const auto rhs = parity(static_cast<TupleIndex>(first - row.begin()));
    for (TupleIndex out = 0; out < size; ++out) {
      if (row[out] != (parity(out) == rhs ? mass : Rational(0))) return std::nullopt;
    }
    truth[in] = rhs;
  }
  return BooleanForm::from_truth_table(n, truth);
}

MarginalDistribution marginal(const NoSignalBox& box, PartySet coalition, TupleIndex inputs) {
  const int n = box.parties();
  if (coalition.empty()) throw Error(ErrorCode::kInvalidArgument, "marginal over empty coalition");
  if (!coalition.within(n)) throw Error(ErrorCode::kInvalidArgument, "coalition names a missing party");
  if (inputs >= box.settings()) throw Error(ErrorCode::kArity, "input tuple out of range");
  MarginalDistribution m{coalition, inputs, std::vector<Rational>(1u << coalition.size(), Rational(0))};
  const auto row = box.row(inputs);
  for (TupleIndex out = 0; out < box.settings(); ++out) {
    m.probs[project(out, coalition, n)] += row[out];
  }
  return m;
}

NoSignalingVerdict check_no_signaling(const NoSignalBox& box) {
  const int n = box.parties();
  const std::uint32_t size = box.settings();
  std::vector<PartySet> coalitions;
  for (std::uint32_t mask = 1; mask + 1 < size; ++mask) coalitions.emplace_back(mask);
  std::sort(coalitions.begin(), coalitions.end(),
            [](const PartySet& a, const PartySet& b) { return a.members() < b.members(); });

  for (const auto& coalition : coalitions) {
    for (TupleIndex first = 0; first < size; ++first) {
      const auto m1 = marginal(box, coalition, first);
      for (TupleIndex second = first + 1; second < size; ++second) {
        if (project(first, coalition, n) != project(second, coalition, n)) continue;
        auto m2 = marginal(box, coalition, second);
        if (m1.probs != m2.probs) {
          return {false, SignalingWitness{coalition, first, second, m1.probs, std::move(m2.probs)}};
        }
      }
    }
  }
  return {};
}

Rational chsh_value(const NoSignalBox& box) {
  if (box.parties() != 2) throw Error(ErrorCode::kArity, "CHSH value needs a 2-party box");
  auto correlator = [&](TupleIndex inputs) {
    Rational e = 0;
    for (TupleIndex out = 0; out < 4; ++out) {
      e += parity(out) ? -box.probability(inputs, out) : box.probability(inputs, out);
    }
    return e;
  };
  return correlator(0b00) + correlator(0b01) + correlator(0b10) - correlator(0b11);
}

NoSignalBox relabel_parties(const NoSignalBox& box, std::span<const int> permutation) {
  const int n = box.parties();
  if (permutation.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kArity, "permutation length does not match party count");
  }
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (const int p : permutation) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]++) {
      throw Error(ErrorCode::kInvalidArgument, "not a permutation of parties");
    }
  }
  auto move = [&](TupleIndex t) {
    TupleIndex r = 0;
    for (int i = 0; i < n; ++i) {
      if (bit_of(t, i, n)) r |= 1u << (n - 1 - permutation[static_cast<std::size_t>(i)]);
    }
    return r;
  };
  const std::uint32_t size = box.settings();
  std::vector<Rational> table(box.table().size());
  for (TupleIndex in = 0; in < size; ++in) {
    for (TupleIndex out = 0; out < size; ++out) {
      table[move(in) * size + move(out)] = box.probability(in, out);
    }
  }
  return NoSignalBox(n, std::move(table));
}

NoSignalBox flip_output(const NoSignalBox& box, int party) {
  const int n = box.parties();
  if (party < 0 || party >= n) throw Error(ErrorCode::kInvalidArgument, "party index out of range");
  const TupleIndex flip = 1u << (n - 1 - party);
  const std::uint32_t size = box.settings();
  std::vector<Rational> table(box.table().size());
  for (TupleIndex in = 0; in < size; ++in) {
    for (TupleIndex out = 0; out < size; ++out) {
      table[in * size + (out ^ flip)] = box.probability(in, out);
    }
  }
  return NoSignalBox(n, std::move(table));
}

}  // namespace nlctc
