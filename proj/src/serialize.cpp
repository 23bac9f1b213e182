#include "nlctc/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nlctc/error.hpp"

namespace nlctc {

using nlohmann::json;

namespace {

std::vector<std::uint8_t> parse_bits(const json& j, int parties, const std::string& field) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(parties)) {
    throw Error(ErrorCode::kParse, field + ": expected an array of " + std::to_string(parties) + " bits");
  }
  std::vector<std::uint8_t> bits;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer() || (j[i] != 0 && j[i] != 1)) {
      throw Error(ErrorCode::kParse, field + "[" + std::to_string(i) + "]: expected 0 or 1");
    }
    bits.push_back(j[i].get<std::uint8_t>());
  }
  return bits;
}

json bits_json(std::span<const std::uint8_t> bits) {
  json arr = json::array();
  for (const auto b : bits) arr.push_back(static_cast<int>(b));
  return arr;
}

json bits_json(TupleIndex index, int width) { return bits_json(tuple_bits(index, width)); }

std::string bit_key(TupleIndex index, int width) {
  std::string key;
  for (const auto b : tuple_bits(index, width)) key += static_cast<char>('0' + b);
  return key;
}

}  // namespace

NoSignalBox parse_box_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "box spec must be a JSON object");
  if (!doc.contains("parties") || !doc["parties"].is_number_integer()) {
    throw Error(ErrorCode::kParse, "parties: expected an integer");
  }
  const int n = doc["parties"].get<int>();
  if (n < 1 || n > kMaxParties) throw Error(ErrorCode::kParse, "parties: out of range");
  const bool has_constraint = doc.contains("constraint");
  const bool has_table = doc.contains("table");
  if (has_constraint == has_table) {
    throw Error(ErrorCode::kParse, "box spec needs exactly one of \"constraint\" or \"table\"");
  }

  if (has_constraint) {
    const auto& c = doc["constraint"];
    if (!c.is_array()) throw Error(ErrorCode::kParse, "constraint: expected an array of monomials");
    std::vector<std::vector<int>> monomials;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::string field = "constraint[" + std::to_string(i) + "]";
      if (!c[i].is_array()) throw Error(ErrorCode::kParse, field + ": expected an array of party indices");
      std::vector<int> mono;
      for (const auto& idx : c[i]) {
        if (!idx.is_number_integer() || idx.get<int>() < 0 || idx.get<int>() >= n) {
          throw Error(ErrorCode::kParse, field + ": party index out of range");
        }
        mono.push_back(idx.get<int>());
      }
      monomials.push_back(std::move(mono));
    }
    if (n < 2) throw Error(ErrorCode::kInvariant, "parties: a parity box needs at least 2 parties");
    return parity_box(BooleanForm(n, monomials));
  }

  const auto& t = doc["table"];
  if (!t.is_array()) throw Error(ErrorCode::kParse, "table: expected an array of entries");
  const std::uint32_t size = 1u << n;
  std::vector<Rational> table(std::size_t{size} * size, Rational(0));
  std::vector<bool> seen(table.size(), false);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::string field = "table[" + std::to_string(i) + "]";
    const auto& e = t[i];
    if (!e.is_object() || !e.contains("in") || !e.contains("out") || !e.contains("p")) {
      throw Error(ErrorCode::kParse, field + ": expected {\"in\", \"out\", \"p\"}");
    }
    const auto in = tuple_index(parse_bits(e["in"], n, field + ".in"));
    const auto out = tuple_index(parse_bits(e["out"], n, field + ".out"));
    if (!e["p"].is_string()) throw Error(ErrorCode::kParse, field + ".p: expected a \"num/den\" string");
    Rational p;
    try {
      p = parse_rational(e["p"].get<std::string>());
    } catch (const Error& err) {
      throw Error(ErrorCode::kParse, field + ".p: " + err.what());
    }
    if (p < 0) throw Error(ErrorCode::kInvariant, field + ".p: negative probability");
    const std::size_t slot = std::size_t{in} * size + out;
    if (seen[slot]) throw Error(ErrorCode::kInvariant, field + ": duplicate (in, out) entry");
    seen[slot] = true;
    table[slot] = p;
  }
  for (TupleIndex in = 0; in < size; ++in) {
    Rational sum = 0;
    for (TupleIndex out = 0; out < size; ++out) sum += table[std::size_t{in} * size + out];
    if (sum != 1) {
      throw Error(ErrorCode::kInvariant, "table: row in=" + bits_json(in, n).dump() + " sums to " +
                                             to_display_string(sum) + ", not 1");
    }
  }
  return NoSignalBox(n, std::move(table));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

NoSignalBox load_box_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_box_spec(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

json box_to_json(const NoSignalBox& box) {
  const int n = box.parties();
  json table = json::array();
  for (TupleIndex in = 0; in < box.settings(); ++in) {
    for (TupleIndex out = 0; out < box.settings(); ++out) {
      const auto& p = box.probability(in, out);
      if (p == 0) continue;
      table.push_back({{"in", bits_json(in, n)}, {"out", bits_json(out, n)}, {"p", to_fraction_string(p)}});
    }
  }
  return {{"parties", n}, {"table", std::move(table)}};
}

json row_to_json(const TableRow& row) {
  json outcomes = json::array();
  for (const auto& o : row.outcomes) {
    outcomes.push_back({{"out", bits_json(o.outputs)}, {"p", to_fraction_string(o.p)}});
  }
  return {{"inputs", bits_json(row.inputs)}, {"outcomes", std::move(outcomes)}, {"paradox", row.paradox}};
}

json constrained_box_to_json(const ConstrainedBox& cbox, std::string_view name) {
  json rows = json::array();
  for (const auto& row : emit_table(cbox)) rows.push_back(row_to_json(row));
  return {{"box", name}, {"parties", cbox.parties()}, {"ctc", cbox.pattern().members()}, {"rows", std::move(rows)}};
}

json entry_to_json(const SignalingReport& report, const SignalingEntry& entry) {
  const int width = report.coalition.size();
  json rule = json::object();
  for (const auto& [outputs, guess] : entry.rule) rule[bit_key(outputs, width)] = guess;
  return {{"sender", report.sender},
          {"coalition", report.coalition.members()},
          {"setting", bits_json(entry.setting, width)},
          {"dependent", entry.dependent},
          {"rule", std::move(rule)},
          {"success", to_fraction_string(entry.success)},
          {"mi_bits", entry.mi_bits},
          {"impractical", entry.impractical},
          {"recovered_inputs", entry.recovered_inputs}};
}

json scan_to_json(const ScanResult& scan, std::string_view name, PartySet ctc) {
  json entries = json::array();
  json errors = json::array();
  json directions = json::array();
  int settings = 0, recovered = 0, cases = 0;
  for (const auto& report : scan.reports) {
    if (report.error) {
      errors.push_back({{"sender", report.sender}, {"coalition", report.coalition.members()}, {"error", *report.error}});
      continue;
    }
    for (const auto& e : report.entries) entries.push_back(entry_to_json(report, e));
    directions.push_back({{"sender", report.sender},
                          {"coalition", report.coalition.members()},
                          {"dependent_settings", report.dependent_settings()},
                          {"total_settings", report.total_settings()},
                          {"recovered_cases", report.recovered_cases()},
                          {"total_cases", report.total_cases()}});
    settings += report.total_settings();
    recovered += report.recovered_cases();
    cases += report.total_cases();
  }
  json out = {{"box", name},
              {"ctc", ctc.members()},
              {"entries", std::move(entries)},
              {"summary",
               {{"dependent_pairs", scan.dependent_pairs},
                {"total_pairs", settings},
                {"recovered_cases", recovered},
                {"total_cases", cases},
                {"directions", std::move(directions)}}}};
  if (!errors.empty()) out["errors"] = std::move(errors);
  return out;
}

json matrix_to_json(const deutsch::ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return {{"dim", m.rows()}, {"entries", std::move(entries)}};
}

namespace {

std::complex<double> parse_complex(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::kParse, field + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

deutsch::ComplexMatrix matrix_from_json(const json& j) {
  const json* entries = &j;
  if (j.is_object()) {
    if (!j.contains("entries")) throw Error(ErrorCode::kParse, "matrix: missing \"entries\"");
    entries = &j["entries"];
  }
  if (!entries->is_array() || entries->empty()) throw Error(ErrorCode::kParse, "entries: expected a nonempty array");

  // Nested rows: [[[re, im], ...], ...].
  const bool nested = (*entries)[0].is_array() && !(*entries)[0].empty() && (*entries)[0][0].is_array();
  std::vector<std::complex<double>> flat;
  if (nested) {
    for (std::size_t r = 0; r < entries->size(); ++r) {
      const auto& row = (*entries)[r];
      if (!row.is_array() || row.size() != entries->size()) throw Error(ErrorCode::kParse, "entries: rows must form a square matrix");
      for (std::size_t c = 0; c < row.size(); ++c) {
        flat.push_back(parse_complex(row[c], "entries[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      }
    }
  } else {
    for (std::size_t k = 0; k < entries->size(); ++k) {
      flat.push_back(parse_complex((*entries)[k], "entries[" + std::to_string(k) + "]"));
    }
  }
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
  if (dim * dim != static_cast<Eigen::Index>(flat.size())) throw Error(ErrorCode::kDimension, "entries: not a square matrix");
  if (j.is_object() && j.contains("dim") && j["dim"] != dim) throw Error(ErrorCode::kDimension, "dim does not match entries");
  deutsch::ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = flat[static_cast<std::size_t>(r * dim + c)];
  }
  return m;
}

deutsch::UnitaryMatrix unitary_from_json(const json& j) {
  auto m = matrix_from_json(j);
  const int dim = static_cast<int>(m.rows());
  int cr = 0, ctc = 0;
  if (j.is_object() && j.contains("cr_dim") && j.contains("ctc_dim")) {
    cr = j["cr_dim"].get<int>();
    ctc = j["ctc_dim"].get<int>();
  } else {
    cr = ctc = static_cast<int>(std::lround(std::sqrt(dim)));
    if (cr * ctc != dim) throw Error(ErrorCode::kDimension, "give cr_dim and ctc_dim for a non-square split");
  }
  return deutsch::UnitaryMatrix(std::move(m), cr, ctc);
}

deutsch::DensityMatrix density_from_json(const json& j) { return deutsch::DensityMatrix(matrix_from_json(j)); }

json fixed_point_to_json(const deutsch::FixedPointResult& result) {
  return {{"sigma", matrix_to_json(result.sigma.matrix())},
          {"residual", result.residual},
          {"iterations", result.iterations},
          {"cr_output", matrix_to_json(result.cr_output.matrix())}};
}

}  // namespace nlctc
