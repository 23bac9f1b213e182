#include "nlctc/signaling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nlctc/error.hpp"

namespace nlctc {

void validate(const Scenario& s, const ConstrainedBox& box) {
  const int n = box.parties();
  if (s.sender < 0 || s.sender >= n) throw Error(ErrorCode::kInvalidArgument, "sender out of range");
  if (s.coalition.empty() || !s.coalition.within(n)) {
    throw Error(ErrorCode::kInvalidArgument, "coalition must be a nonempty set of existing parties");
  }
  if (s.coalition.contains(s.sender)) throw Error(ErrorCode::kInvalidArgument, "sender inside coalition");
  if (s.prior[0] < 0 || s.prior[1] < 0 || s.prior[0] + s.prior[1] != 1) {
    throw Error(ErrorCode::kInvalidArgument, "prior must be a distribution");
  }
}

std::vector<Rational> observation_distribution(const ConstrainedBox& box, const Scenario& s,
                                               TupleIndex setting, std::uint8_t sender_input) {
  validate(s, box);
  const int n = box.parties();
  if (setting >= (1u << s.coalition.size()) || sender_input > 1) {
    throw Error(ErrorCode::kInvalidArgument, "setting out of range");
  }
  const PartySet others = s.coalition.with(s.sender).complement(n);
  const Rational weight(1, std::int64_t{1} << others.size());
  std::vector<Rational> dist(1u << s.coalition.size(), Rational(0));
  const TupleIndex base = embed(embed(0, setting, s.coalition, n), sender_input, PartySet::single(s.sender), n);
  for (TupleIndex rest = 0; rest < (1u << others.size()); ++rest) {
    const auto& row = box.row(embed(base, rest, others, n));
    if (row.paradox) {
      std::string bits;
      for (const auto b : tuple_bits(row.inputs, n)) bits += static_cast<char>('0' + b);
      throw Error(ErrorCode::kParadox, "paradox row at input tuple (" + bits + ")");
    }
    for (TupleIndex out = 0; out < row.probs.size(); ++out) {
      dist[project(out, s.coalition, n)] += weight * row.probs[out];
    }
  }
  return dist;
}

int SignalingReport::dependent_settings() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                        [](const SignalingEntry& e) { return e.dependent; }));
}

int SignalingReport::recovered_cases() const {
  int total = 0;
  for (const auto& e : entries) total += e.recovered_inputs;
  return total;
}

double mutual_information(std::span<const std::vector<Rational>> distributions,
                          std::span<const Rational> prior) {
  if (distributions.size() != prior.size()) throw Error(ErrorCode::kArity, "one prior weight per distribution");
  if (distributions.empty()) return 0.0;
  const std::size_t outcomes = distributions.front().size();
  auto entropy = [](const std::vector<double>& p) {
    double h = 0.0;
    for (const double v : p) {
      if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
  };
  std::vector<double> mixture(outcomes, 0.0);
  double conditional = 0.0;
  for (std::size_t s = 0; s < distributions.size(); ++s) {
    if (distributions[s].size() != outcomes) throw Error(ErrorCode::kArity, "distributions over different outcome spaces");
    std::vector<double> p(outcomes);
    for (std::size_t o = 0; o < outcomes; ++o) {
      p[o] = to_double(distributions[s][o]);
      mixture[o] += to_double(prior[s]) * p[o];
    }
    conditional += to_double(prior[s]) * entropy(p);
  }
  const double mi = entropy(mixture) - conditional;
  return std::abs(mi) < 1e-12 ? 0.0 : mi;
}

namespace {

SignalingEntry analyze_setting(const ConstrainedBox& box, const Scenario& s, TupleIndex setting) {
  const std::array<std::vector<Rational>, 2> dists{observation_distribution(box, s, setting, 0),
                                                   observation_distribution(box, s, setting, 1)};
  SignalingEntry e;
  e.setting = setting;
  e.dependent = dists[0] != dists[1];
  e.success = 0;
  bool recovered[2] = {true, true};
  for (TupleIndex o = 0; o < dists[0].size(); ++o) {
    const Rational w0 = s.prior[0] * dists[0][o];
    const Rational w1 = s.prior[1] * dists[1][o];
    if (w0 == 0 && w1 == 0) continue;
    const std::uint8_t guess = w1 > w0 ? 1 : 0;
    e.rule[o] = guess;
    e.success += guess ? w1 : w0;
    // An outcome that both inputs can produce leaves either input ambiguous.
    if (dists[0][o] > 0 && dists[1][o] > 0) recovered[0] = recovered[1] = false;
  }
  e.recovered_inputs = static_cast<int>(recovered[0]) + static_cast<int>(recovered[1]);
  e.mi_bits = mutual_information(dists, s.prior);
  for (const int p : s.coalition.members()) e.impractical = e.impractical || box.pattern().contains(p);
  return e;
}

}  // namespace

SignalingReport detect_signaling(const ConstrainedBox& box, const Scenario& s) {
  validate(s, box);
  SignalingReport report{s.sender, s.coalition, box.pattern(), {}, std::nullopt};
  for (TupleIndex setting = 0; setting < (1u << s.coalition.size()); ++setting) {
    report.entries.push_back(analyze_setting(box, s, setting));
  }
  return report;
}

Rational rule_success(const ConstrainedBox& box, const Scenario& s, TupleIndex setting,
                      const std::function<std::uint8_t(TupleIndex)>& rule) {
  Rational success = 0;
  for (std::uint8_t x = 0; x < 2; ++x) {
    const auto dist = observation_distribution(box, s, setting, x);
    for (TupleIndex o = 0; o < dist.size(); ++o) {
      if (rule(o) == x) success += s.prior[x] * dist[o];
    }
  }
  return success;
}

ScanResult full_scan(const ConstrainedBox& box) {
  const int n = box.parties();
  ScanResult result;
  for (int sender = 0; sender < n; ++sender) {
    const PartySet rest = PartySet::single(sender).complement(n);
    std::vector<PartySet> coalitions;
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
      if ((m & ~rest.mask()) == 0) coalitions.emplace_back(m);
    }
    std::sort(coalitions.begin(), coalitions.end(),
              [](const PartySet& a, const PartySet& b) { return a.members() < b.members(); });
    for (const auto& coalition : coalitions) {
      const Scenario scenario{sender, coalition};
      try {
        auto report = detect_signaling(box, scenario);
        result.dependent_pairs += report.dependent_settings();
        result.reports.push_back(std::move(report));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kParadox) throw;
        result.reports.push_back({sender, coalition, box.pattern(), {}, std::string(e.what())});
      }
    }
  }
  return result;
}

std::string format_report(const SignalingReport& r, int parties) {
  std::ostringstream os;
  const auto members = r.coalition.members();
  os << party_name(r.sender) << " -> {" << format_party_list(r.coalition) << "}";
  if (r.error) {
    os << ": " << *r.error << "\n";
    return os.str();
  }
  os << ": " << r.dependent_settings() << "/" << r.total_settings() << " settings dependent, "
     << r.recovered_cases() << "/" << r.total_cases() << " cases recovered\n";
  for (const auto& e : r.entries) {
    os << "  ";
    for (std::size_t i = 0; i < members.size(); ++i) {
      os << input_name(members[i], parties) << "=" << int(bit_of(e.setting, static_cast<int>(i), static_cast<int>(members.size()))) << " ";
    }
    char mi[32];
    std::snprintf(mi, sizeof mi, "%.6f", e.mi_bits);
    os << (e.dependent ? "dependent    " : "independent  ") << "success " << to_display_string(e.success)
       << "  mi " << mi << "  rule";
    for (const auto& [out, guess] : e.rule) {
      os << " ";
      for (std::size_t i = 0; i < members.size(); ++i) os << int(bit_of(out, static_cast<int>(i), static_cast<int>(members.size())));
      os << "->" << int(guess);
    }
    if (e.impractical) os << "  (coalition includes a CTC party)";
    os << "\n";
  }
  return os.str();
}

std::string format_scan(const ScanResult& scan, int parties) {
  std::ostringstream os;
  for (const auto& r : scan.reports) os << format_report(r, parties);
  os << "dependent (setting, direction) pairs: " << scan.dependent_pairs << "\n";
  return os.str();
}

}  // namespace nlctc
