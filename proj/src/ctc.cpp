#include "nlctc/ctc.hpp"

#include <algorithm>
#include <sstream>

#include "nlctc/error.hpp"

namespace nlctc {

ConstrainedBox::ConstrainedBox(int parties, PartySet pattern, std::vector<ConstrainedRow> rows)
    : parties_(parties), pattern_(pattern), rows_(std::move(rows)) {
  if (!pattern.within(parties)) throw Error(ErrorCode::kInvalidArgument, "CTC pattern names a missing party");
  const std::uint32_t size = 1u << parties;
  if (rows_.size() != size) throw Error(ErrorCode::kInvariant, "constrained box needs one row per input");
  for (TupleIndex in = 0; in < size; ++in) {
    const auto& row = rows_[in];
    if (row.inputs != in) throw Error(ErrorCode::kInvariant, "rows must be ordered by input tuple");
    if (row.paradox) {
      if (!row.probs.empty()) throw Error(ErrorCode::kInvariant, "paradox row carries a distribution");
      continue;
    }
    if (row.probs.size() != size) throw Error(ErrorCode::kInvariant, "row has wrong length");
    Rational sum = 0;
    for (TupleIndex out = 0; out < size; ++out) {
      if (row.probs[out] < 0) throw Error(ErrorCode::kInvariant, "negative probability");
      if (row.probs[out] != 0 && project(out, pattern, parties) != project(in, pattern, parties)) {
        throw Error(ErrorCode::kInvariant, "outcome violates the CTC pinning");
      }
      sum += row.probs[out];
    }
    if (sum != 1) throw Error(ErrorCode::kInvariant, "constrained row does not sum to 1");
  }
}

bool ConstrainedBox::has_paradox() const noexcept {
  return std::any_of(rows_.begin(), rows_.end(), [](const ConstrainedRow& r) { return r.paradox; });
}

ConstrainedBox apply_ctc(const NoSignalBox& box, PartySet pattern) {
  const int n = box.parties();
  if (!pattern.within(n)) throw Error(ErrorCode::kInvalidArgument, "CTC pattern names a missing party");
  const std::uint32_t size = box.settings();
  std::vector<ConstrainedRow> rows;
  rows.reserve(size);
  for (TupleIndex in = 0; in < size; ++in) {
    const auto pinned = project(in, pattern, n);
    std::vector<Rational> probs(size, Rational(0));
    Rational mass = 0;
    for (TupleIndex out = 0; out < size; ++out) {
      if (project(out, pattern, n) != pinned) continue;
      probs[out] = box.probability(in, out);
      mass += probs[out];
    }
    if (mass == 0) {
      rows.push_back({in, true, {}});
      continue;
    }
    for (auto& p : probs) p /= mass;
    rows.push_back({in, false, std::move(probs)});
  }
  return ConstrainedBox(n, pattern, std::move(rows));
}

std::string ClosedForm::to_string() const {
  const int n = relation.parties();
  std::string lhs;
  for (const int p : cr_parties.members()) {
    if (!lhs.empty()) lhs += " ^ ";
    lhs += output_name(p, n);
  }
  if (lhs.empty()) lhs = "0";
  return lhs + " = " + relation.to_string();
}

ClosedForm closed_form_check(const NoSignalBox& box, PartySet pattern) {
  const int n = box.parties();
  if (pattern.empty()) throw Error(ErrorCode::kInvalidArgument, "closed form needs a nonempty CTC pattern");
  if (!pattern.within(n)) throw Error(ErrorCode::kInvalidArgument, "CTC pattern names a missing party");
  const auto form = parity_form_of(box);
  if (!form) throw Error(ErrorCode::kNotParity, "box is not of parity form");

  ClosedForm result{pattern, pattern.complement(n), *form ^ BooleanForm::linear(n, pattern.mask()), false};

  // Enumeration side: the constrained support must be exactly the set of
  // pinned outputs whose CR parity equals the relation.
  const auto cbox = apply_ctc(box, pattern);
  bool ok = true;
  for (const auto& row : cbox.rows()) {
    const auto rhs = result.relation.evaluate(row.inputs);
    if (result.cr_parties.empty()) {
      ok = ok && (row.paradox == (rhs == 1));
      continue;
    }
    if (row.paradox) {
      ok = false;
      continue;
    }
    for (TupleIndex out = 0; out < box.settings(); ++out) {
      const bool pinned = project(out, pattern, n) == project(row.inputs, pattern, n);
      const bool law = parity(project(out, result.cr_parties, n)) == rhs;
      ok = ok && ((row.probs[out] > 0) == (pinned && law));
    }
  }
  result.verified = ok;
  return result;
}

std::vector<TableRow> emit_table(const ConstrainedBox& cbox) {
  const int n = cbox.parties();
  std::vector<TableRow> table;
  for (const auto& row : cbox.rows()) {  // already in input order
    TableRow out{tuple_bits(row.inputs, n), row.paradox, {}};
    for (TupleIndex o = 0; o < row.probs.size(); ++o) {
      if (row.probs[o] > 0) out.outcomes.push_back({tuple_bits(o, n), row.probs[o]});
    }
    table.push_back(std::move(out));
  }
  return table;
}

std::string format_table(const ConstrainedBox& cbox) {
  const int n = cbox.parties();
  std::ostringstream os;
  auto bits = [&](const std::vector<std::uint8_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
  };
  std::string header_in, header_out;
  for (int i = 0; i < n; ++i) {
    header_in += (i ? " " : "") + input_name(i, n);
    header_out += (i ? " " : "") + output_name(i, n);
  }
  os << header_in << " | " << header_out << " | p\n";
  for (const auto& row : emit_table(cbox)) {
    if (row.paradox) {
      std::string dashes;
      for (int i = 0; i < n; ++i) dashes += i ? " -" : "-";
      os << bits(row.inputs) << " | " << dashes << " | paradox\n";
      continue;
    }
    for (const auto& o : row.outcomes) {
      os << bits(row.inputs) << " | " << bits(o.outputs) << " | " << to_display_string(o.p) << "\n";
    }
  }
  return os.str();
}

}  // namespace nlctc
