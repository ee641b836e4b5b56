#pragma once

// The shared domain-description format and plain CSV output.
//
// A description is a JSON object with a "type" field:
//   {"type": "ball", "a": "1"}
//   {"type": "ellipsoid", "a": "1", "b": "2"}
//   {"type": "profile", "vertices": [["0","3"], ["1","1"], ["2","0"]]}
//   {"type": "weights", "weights": [["1/2", "16"], ["1/8", "4096"]]}
//   {"type": "quasiflat", "params": ["64", "4096"], "padding": {"count": "10", "bound": "1/1000"}}
// Rationals are "p/q" strings (plain JSON integers are accepted on input);
// multiplicities are decimal strings.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "symcap/distance_bounds.hpp"
#include "symcap/domain.hpp"
#include "symcap/quasiflat.hpp"

namespace symcap {

using Json = nlohmann::json;

struct DomainSpec {
  std::string type;
  /// Absent only for quasiflat vectors whose weights are irrational.
  std::optional<Domain> domain;
  std::optional<ParameterVector> params;
  std::optional<Padding> padding;
};

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Integer integer_from_json(const Json& j);

Json to_json(const Ellipsoid& e);
Json to_json(const MomentProfile& p);
Json to_json(const WeightMultiset& w);
Json to_json(const Domain& d);
Json to_json(const ParameterVector& v);
Json to_json(const Integer& k, const CapacityResult& r);
Json to_json(const CapacityInterval& c);

/// Throws FormatError naming the offending field.
DomainSpec domain_spec_from_json(const Json& j);
DomainSpec load_domain_spec(const std::filesystem::path& path);

/// Capacities of a spec: exact domain when available, otherwise the weight
/// bracket of its parameter vector.
CapacitySource capacity_source(const DomainSpec& spec, long precision_bits = kDefaultPrecisionBits);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

/// Full-precision decimal for doubles in reports.
std::string format_double(double x);

/// Throws Error naming the path when the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace symcap
