#include "nlctc/reproduce.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "nlctc/serialize.hpp"

namespace nlctc {

namespace {

GoldenRow row(std::initializer_list<std::uint8_t> in, std::initializer_list<std::uint8_t> out) {
  return {std::vector<std::uint8_t>(in), std::vector<std::uint8_t>(out)};
}

std::string bits(const std::vector<std::uint8_t>& v) {
  std::string s;
  for (const auto b : v) s += static_cast<char>('0' + b);
  return s;
}

}  // namespace

const std::vector<ReproductionTarget>& reproduction_manifest() {
  static const std::vector<ReproductionTarget> manifest = {
      {"I",
       "CTC-assisted PR-box",
       NamedBox::kPr,
       PartySet{kBob},
       {row({0, 0}, {0, 0}), row({0, 1}, {1, 1}), row({1, 0}, {0, 0}), row({1, 1}, {0, 1})}},
      // Published with (1,0,0) among the x=0 rows; compared as a set.
      {"II",
       "CTC inputs on Bob's and Charlie's sides",
       NamedBox::kSvetlichny,
       PartySet{kBob, kCharlie},
       {row({0, 0, 0}, {0, 0, 0}), row({0, 0, 1}, {1, 0, 1}), row({0, 1, 0}, {1, 1, 0}),
        row({1, 0, 0}, {0, 0, 0}), row({0, 1, 1}, {1, 1, 1}), row({1, 0, 1}, {0, 0, 1}),
        row({1, 1, 0}, {0, 1, 0}), row({1, 1, 1}, {1, 1, 1})}},
      {"III",
       "CTC inputs on Bob's and Charlie's side",
       NamedBox::kMermin1,
       PartySet{kBob, kCharlie},
       {row({0, 0, 0}, {0, 0, 0}), row({0, 0, 1}, {1, 0, 1}), row({0, 1, 0}, {1, 1, 0}),
        row({1, 0, 0}, {0, 0, 0}), row({0, 1, 1}, {0, 1, 1}), row({1, 0, 1}, {0, 0, 1}),
        row({1, 1, 0}, {0, 1, 0}), row({1, 1, 1}, {0, 1, 1})}},
      {"IV",
       "CTC inputs on Alice's and Bob's side",
       NamedBox::kMermin1,
       PartySet{kAlice, kBob},
       {row({0, 0, 0}, {0, 0, 0}), row({0, 0, 1}, {0, 0, 0}), row({0, 1, 0}, {0, 1, 1}),
        row({1, 0, 0}, {1, 0, 1}), row({0, 1, 1}, {0, 1, 1}), row({1, 0, 1}, {1, 0, 0}),
        row({1, 1, 0}, {1, 1, 1}), row({1, 1, 1}, {1, 1, 0})}},
  };
  return manifest;
}

const ReproductionTarget* find_target(std::string_view id) {
  for (const auto& t : reproduction_manifest()) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

Reproduction reproduce(const ReproductionTarget& target) {
  auto table = apply_ctc(named_box(target.box), target.ctc);
  std::vector<std::string> mismatches;

  std::set<std::pair<std::string, std::string>> expected;
  for (const auto& g : target.golden) expected.emplace(bits(g.inputs), bits(g.outputs));

  std::set<std::pair<std::string, std::string>> actual;
  for (const auto& r : emit_table(table)) {
    if (r.paradox) {
      mismatches.push_back("row " + bits(r.inputs) + " is paradoxical");
      continue;
    }
    if (r.outcomes.size() != 1 || r.outcomes.front().p != 1) {
      mismatches.push_back("row " + bits(r.inputs) + " is not deterministic");
      continue;
    }
    actual.emplace(bits(r.inputs), bits(r.outcomes.front().outputs));
  }
  for (const auto& e : expected) {
    if (!actual.count(e)) mismatches.push_back("missing row " + e.first + " -> " + e.second);
  }
  for (const auto& a : actual) {
    if (!expected.count(a)) mismatches.push_back("unexpected row " + a.first + " -> " + a.second);
  }
  const bool ok = mismatches.empty();
  return {&target, std::move(table), ok, std::move(mismatches)};
}

std::string format_reproduction(const Reproduction& r) {
  std::ostringstream os;
  os << "Table " << r.target->id << ": " << r.target->caption << " [" << box_name(r.target->box)
     << ", ctc=" << format_party_list(r.target->ctc) << "]\n"
     << format_table(r.table);
  os << (r.matches ? "match" : "MISMATCH") << "\n";
  for (const auto& m : r.mismatches) os << "  " << m << "\n";
  return os.str();
}

nlohmann::json reproduction_to_json(const Reproduction& r) {
  auto j = constrained_box_to_json(r.table, box_name(r.target->box));
  j["table"] = r.target->id;
  j["caption"] = r.target->caption;
  j["matches"] = r.matches;
  j["mismatches"] = r.mismatches;
  return j;
}

}  // namespace nlctc
