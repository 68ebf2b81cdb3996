#include "vspart/partition_io.hpp"

#include <fstream>
#include <sstream>

#include "vspart/error.hpp"

namespace vspart {

using nlohmann::json;

json to_json(const Provenance& p) {
  json parts = json::array();
  for (const auto& c : p.parts) parts.push_back(to_json(c));
  return json{{"rule", p.rule}, {"note", p.note}, {"parts", parts}};
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "header must be an object");
  p.rule = j.value("rule", "");
  p.note = j.value("note", "");
  if (j.contains("parts"))
    for (const auto& c : j.at("parts")) p.parts.push_back(provenance_from_json(c));
  return p;
}

namespace {

void write_row(std::ostream& os, const Vector& row) {
  os << '[';
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
  os << ']';
}

}  // namespace

void write_partition(std::ostream& os, const Partition& p) {
  const Field& f = *p.ambient().field;
  os << "{\n";
  os << "  \"format\": \"vspart-partition\",\n";
  os << "  \"version\": 1,\n";
  os << "  \"p\": " << f.p() << ",\n";
  os << "  \"e\": " << f.e() << ",\n";
  os << "  \"modulus\": ";
  write_row(os, f.modulus());
  os << ",\n";
  os << "  \"n\": " << p.ambient().n << ",\n";
  if (!p.provenance().empty()) os << "  \"header\": " << to_json(p.provenance()).dump() << ",\n";
  os << "  \"components\": [";
  const auto& comps = p.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << '[';
    const auto& rows = comps[i].basis();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r) os << ',';
      write_row(os, rows[r]);
    }
    os << ']';
  }
  os << (comps.empty() ? "]\n" : "\n  ]\n");
  os << "}\n";
}

std::string to_text(const Partition& p) {
  std::ostringstream os;
  write_partition(os, p);
  return os.str();
}

void write_partition_file(const std::string& path, const Partition& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
  write_partition(out, p);
}

ReadResult read_partition(std::istream& is, ReadOptions options) {
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    if (doc.value("format", "") != "vspart-partition")
      throw Error(ErrorCode::ParseError, "not a vspart-partition document");
    if (doc.value("version", 0) != 1) throw Error(ErrorCode::ParseError, "unsupported version");
    const auto p = doc.at("p").get<std::uint32_t>();
    const auto e = doc.at("e").get<std::uint32_t>();
    const auto n = doc.at("n").get<unsigned>();
    FieldPtr field = make_field(p, e);
    if (doc.at("modulus").get<Vector>() != field->modulus())
      throw Error(ErrorCode::ParseError, "modulus does not match the canonical modulus of GF(p^e)");
    const Space space{field, n};

    std::vector<std::string> warnings;
    bool canonical = true;
    std::vector<Subspace> comps;
    for (const auto& jc : doc.at("components")) {
      auto rows = jc.get<std::vector<Vector>>();
      Subspace s = Subspace::span(space, rows);
      if (s.basis() != rows) {
        canonical = false;
        warnings.push_back("component " + std::to_string(comps.size()) + " is not in reduced echelon form");
      }
      comps.push_back(std::move(s));
    }
    for (std::size_t i = 1; i < comps.size(); ++i) {
      if (!(comps[i - 1] < comps[i])) {
        canonical = false;
        warnings.push_back("components are not in strictly increasing canonical order");
        break;
      }
    }
    if (!canonical && !options.force)
      throw Error(ErrorCode::NonCanonicalInput, warnings.front() + " (use force to accept)");

    Provenance prov;
    if (doc.contains("header")) prov = provenance_from_json(doc.at("header"));
    return ReadResult{Partition(space, std::move(comps), std::move(prov)), canonical, std::move(warnings)};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

ReadResult read_partition_text(const std::string& text, ReadOptions options) {
  std::istringstream is(text);
  return read_partition(is, options);
}

ReadResult read_partition_file(const std::string& path, ReadOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  return read_partition(in, options);
}

}  // namespace vspart
