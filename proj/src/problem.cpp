#include "selfsim/problem.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "selfsim/error.hpp"

namespace selfsim {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

const Json& field(const Json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) fail(std::string("missing field '") + name + "'");
  return obj.at(name);
}

Integer integer_of(const Json& v) {
  if (v.is_number_integer()) return Integer(v.dump());
  if (v.is_string()) return parse_integer(v.get<std::string>());
  fail("expected an integer, got " + v.dump());
}

Rational rational_of(const Json& v) {
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  fail("expected a rational \"p/q\" or an integer, got " + v.dump());
}

std::vector<Integer> int_list(const Json& v) {
  if (!v.is_array()) fail("expected an array, got " + v.dump());
  std::vector<Integer> out;
  for (const auto& x : v) out.push_back(integer_of(x));
  return out;
}

}  // namespace

namespace {

ProblemSpec parse_document(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  ProblemSpec spec;

  const Json& model = field(doc, "model");
  const std::string kind = field(model, "kind").get<std::string>();
  if (kind == "unitriangular") {
    spec.model = GroupModel::unitriangular(field(model, "n").get<std::size_t>());
  } else if (kind == "abelian") {
    spec.model = GroupModel::abelian(field(model, "rank").get<std::size_t>());
  } else {
    fail("unknown model kind '" + kind + "'");
  }
  const std::size_t dim = spec.model.coordinate_count();

  const Json& sub = field(doc, "subgroup");
  if (sub.contains("moduli")) {
    spec.subgroup = SubgroupSpec::congruence(int_list(sub.at("moduli")));
  } else if (sub.contains("lattice")) {
    std::vector<std::vector<Integer>> rows;
    for (const auto& r : sub.at("lattice")) rows.push_back(int_list(r));
    spec.subgroup = SubgroupSpec::lattice(rows);
  } else {
    fail("subgroup needs 'moduli' or 'lattice'");
  }
  spec.subgroup.check_against(spec.model);

  const Json& phi = field(doc, "phi");
  if (!phi.is_array() || phi.size() != dim) fail("phi must have " + std::to_string(dim) + " rows");
  spec.phi = RatMatrix(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    if (!phi[r].is_array() || phi[r].size() != dim) fail("phi row " + std::to_string(r + 1) + " has the wrong length");
    for (std::size_t c = 0; c < dim; ++c) spec.phi(r, c) = rational_of(phi[r][c]);
  }

  if (doc.contains("first_letter")) spec.first_letter = doc.at("first_letter").get<long>();

  if (doc.contains("digits")) {
    DigitSet d;
    for (const auto& rep : doc.at("digits")) d.reps.push_back(spec.model.element(int_list(rep)));
    spec.digits = std::move(d);
  }
  if (doc.contains("elements")) {
    const Json& els = doc.at("elements");
    if (!els.is_object()) fail("'elements' must be an object");
    for (auto it = els.begin(); it != els.end(); ++it) {
      if (it.key().empty() || it.key() == "e") fail("element name '" + it.key() + "' is reserved");
      spec.elements.emplace_back(it.key(), spec.model.element(int_list(it.value())));
    }
  }
  if (doc.contains("generators")) {
    for (const auto& g : doc.at("generators")) {
      std::string name = g.get<std::string>();
      bool known = false;
      for (const auto& [n, _] : spec.elements) known = known || n == name;
      if (!known) fail("generator '" + name + "' is not listed in 'elements'");
      spec.generators.push_back(name);
    }
  }
  return spec;
}

}  // namespace

ProblemSpec parse_problem(std::string_view json_text) {
  try {
    return parse_document(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed problem: ") + e.what());
  }
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

VirtualEndomorphism ProblemSpec::endomorphism() const { return VirtualEndomorphism(model, subgroup, phi); }

SelfSimilarAction ProblemSpec::action() const {
  if (!digits) throw Error(ErrorCode::Usage, "the problem has no digit set");
  return action_with(*digits);
}

SelfSimilarAction ProblemSpec::action_with(const DigitSet& d) const {
  return SelfSimilarAction(endomorphism(), d, first_letter);
}

GroupElement ProblemSpec::resolve_element(std::string_view text) const {
  for (const auto& [n, g] : elements)
    if (n == text) return g;
  if (text == "e") return model.identity();
  return model.element(parse_coords(text));
}

std::vector<std::pair<std::string, GroupElement>> ProblemSpec::generator_elements() const {
  std::vector<std::pair<std::string, GroupElement>> out;
  for (const auto& name : generators)
    for (const auto& [n, g] : elements)
      if (n == name) out.emplace_back(n, g);
  return out;
}

ElementNamer ProblemSpec::namer() const { return ElementNamer(model, elements, generators); }

std::string digits_to_json(const DigitSet& digits) {
  Json arr = Json::array();
  for (const auto& r : digits.reps) {
    Json row = Json::array();
    for (const auto& c : r.coords) {
      if (c.fits_slong_p()) {
        row.push_back(c.get_si());
      } else {
        row.push_back(c.get_str());
      }
    }
    arr.push_back(row);
  }
  Json out;
  out["digits"] = arr;
  return out.dump() + "\n";
}

}  // namespace selfsim
