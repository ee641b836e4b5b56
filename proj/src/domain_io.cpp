#include "symcap/domain_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace symcap {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw FormatError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

Point point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("vertex must be a pair [x, y]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

}  // namespace

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>()), 10));
  throw FormatError("expected a rational as a \"p/q\" string, got " + j.dump());
}

Integer integer_from_json(const Json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()), 10);
  throw FormatError("expected an integer as a decimal string, got " + j.dump());
}

Json to_json(const Ellipsoid& e) {
  if (e.is_ball()) return {{"type", "ball"}, {"a", rational_to_json(e.a())}};
  return {{"type", "ellipsoid"}, {"a", rational_to_json(e.a())}, {"b", rational_to_json(e.b())}};
}

Json to_json(const MomentProfile& p) {
  Json vs = Json::array();
  for (const auto& v : p.vertices()) vs.push_back({rational_to_json(v.x), rational_to_json(v.y)});
  return {{"type", "profile"}, {"vertices", vs}};
}

Json to_json(const WeightMultiset& w) {
  Json ws = Json::array();
  for (const auto& e : w.entries()) ws.push_back({rational_to_json(e.weight), to_string(e.multiplicity)});
  return {{"type", "weights"}, {"weights", ws}};
}

Json to_json(const Domain& d) {
  return std::visit([](const auto& x) { return to_json(x); }, d);
}

Json to_json(const ParameterVector& v) {
  Json ps = Json::array();
  for (const auto& b : v.B) ps.push_back(rational_to_json(b));
  return ps;
}

Json to_json(const Integer& k, const CapacityResult& r) {
  return {{"k", to_string(k)},
          {"value", rational_to_json(r.best)},
          {"upper", rational_to_json(r.upper)},
          {"exact", r.exact}};
}

Json to_json(const CapacityInterval& c) {
  return {{"lower", rational_to_json(c.lower)}, {"upper", rational_to_json(c.upper)}, {"exact", c.exact}};
}

DomainSpec domain_spec_from_json(const Json& j) {
  DomainSpec s;
  const Json& type = field(j, "type");
  if (!type.is_string()) throw FormatError("field \"type\" must be a string");
  s.type = type.get<std::string>();
  if (s.type == "ball") {
    s.domain = Ellipsoid::ball(rational_from_json(field(j, "a")));
  } else if (s.type == "ellipsoid") {
    s.domain = Ellipsoid(rational_from_json(field(j, "a")), rational_from_json(field(j, "b")));
  } else if (s.type == "profile") {
    const Json& vs = field(j, "vertices");
    if (!vs.is_array()) throw FormatError("field \"vertices\" must be a list");
    std::vector<Point> pts;
    for (const auto& v : vs) pts.push_back(point_from_json(v));
    s.domain = MomentProfile(std::move(pts));
  } else if (s.type == "weights") {
    const Json& ws = field(j, "weights");
    if (!ws.is_array()) throw FormatError("field \"weights\" must be a list");
    std::vector<WeightEntry> entries;
    for (const auto& w : ws) {
      if (!w.is_array() || w.size() != 2) throw FormatError("weight must be a pair [\"p/q\", \"multiplicity\"]");
      entries.push_back({rational_from_json(w[0]), integer_from_json(w[1])});
    }
    s.domain = WeightMultiset(std::move(entries));
  } else if (s.type == "quasiflat") {
    const Json& ps = field(j, "params");
    if (!ps.is_array()) throw FormatError("field \"params\" must be a list");
    ParameterVector v;
    for (const auto& p : ps) v.B.push_back(rational_from_json(p));
    s.params = v;
    if (j.contains("padding")) {
      const Json& pad = j.at("padding");
      s.padding = Padding{integer_from_json(field(pad, "count")), rational_from_json(field(pad, "bound"))};
    }
    Admissibility a = validate_parameters(v, 0);
    if (a.positive && a.integral && a.representable) s.domain = build_weights(v, s.padding);
  } else {
    throw FormatError("unknown domain type \"" + s.type + "\"");
  }
  return s;
}

DomainSpec load_domain_spec(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  try {
    return domain_spec_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

CapacitySource capacity_source(const DomainSpec& spec, long precision_bits) {
  if (spec.domain) return CapacitySource::of(*spec.domain);
  if (!spec.params) throw FormatError("domain description has neither a domain nor parameters");
  if (spec.padding) throw RepresentabilityError("padding needs exact weights");
  return CapacitySource::from_parameters(*spec.params, precision_bits);
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") == std::string::npos) {
        out << c;
      } else {
        out << '"';
        for (char ch : c) out << (ch == '"' ? "\"\"" : std::string(1, ch));
        out << '"';
      }
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  auto dir = path.parent_path();
  if (!dir.empty() && !std::filesystem::is_directory(dir))
    throw Error("output directory does not exist: " + dir.string());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw Error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace symcap
