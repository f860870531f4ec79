#include "bmod/meta/interchange.hpp"

#include "bmod/error.hpp"
#include "bmod/meta/bmod_metamodel.hpp"
#include "bmod/meta/conformance.hpp"
#include "json.hpp"

namespace bmod::meta
{

using nlohmann::json;

namespace
{

json literal_to_json(const Literal & literal)
{
  return std::visit([](const auto & v) { return json(v); }, literal);
}

Literal literal_from_json(const json & value, const std::string & where)
{
  if (value.is_boolean()) {
    return value.get<bool>();
  }
  if (value.is_number_integer()) {
    return value.get<std::int64_t>();
  }
  if (value.is_string()) {
    return value.get<std::string>();
  }
  throw Error(ErrorKind::interchange, where + ": unsupported literal " + value.dump());
}

json bound_to_json(std::int32_t bound)
{
  return bound == unbounded ? json("*") : json(bound);
}

std::int32_t bound_from_json(const json & value, const std::string & where)
{
  if (value.is_string() && value.get<std::string>() == "*") {
    return unbounded;
  }
  if (value.is_number_integer()) {
    auto bound = value.get<std::int64_t>();
    if (bound >= unbounded && bound <= std::numeric_limits<std::int32_t>::max()) {
      return static_cast<std::int32_t>(bound);
    }
  }
  throw Error(ErrorKind::invalid_metamodel, where + ": bad bound " + value.dump());
}

const json & member(const json & object, const char * key, const std::string & where, ErrorKind kind)
{
  if (!object.is_object() || !object.contains(key)) {
    throw Error(kind, where + ": missing '" + key + "'");
  }
  return object.at(key);
}

std::string string_member(const json & object, const char * key, const std::string & where, ErrorKind kind)
{
  const json & value = member(object, key, where, kind);
  if (!value.is_string()) {
    throw Error(kind, where + ": '" + key + "' must be a string");
  }
  return value.get<std::string>();
}

ValueKind kind_from_string(const std::string & text, const std::string & where)
{
  if (text == "boolean") return ValueKind::boolean;
  if (text == "integer") return ValueKind::integer;
  if (text == "string") return ValueKind::string;
  if (text == "enum") return ValueKind::enumeration;
  throw Error(ErrorKind::invalid_metamodel, where + ": unknown value kind '" + text + "'");
}

}  // namespace

std::string model_to_json(const Model & model)
{
  json objects = json::array();
  for (const auto & object : model.objects()) {
    json attrs = json::object();
    for (const auto & [name, values] : object.attributes) {
      json list = json::array();
      for (const auto & v : values) {
        list.push_back(literal_to_json(v));
      }
      attrs[name] = std::move(list);
    }
    json refs = json::object();
    for (const auto & [name, ids] : object.references) {
      refs[name] = ids;
    }
    objects.push_back({{"id", object.id}, {"class", object.class_name}, {"attrs", attrs}, {"refs", refs}});
  }
  json doc{{"metamodel", model.metamodel().name()}, {"objects", std::move(objects)}};
  return doc.dump(2) + "\n";
}

namespace
{

Model load_model(std::string_view text)
{
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw Error(ErrorKind::interchange, "model document is not valid JSON");
  }
  const std::string mm_name = string_member(doc, "metamodel", "model", ErrorKind::interchange);
  auto mm = builtin_metamodel(mm_name);
  if (!mm) {
    throw Error(ErrorKind::interchange, "unknown metamodel '" + mm_name + "'");
  }
  const json & objects = member(doc, "objects", "model", ErrorKind::interchange);
  if (!objects.is_array()) {
    throw Error(ErrorKind::interchange, "'objects' must be an array");
  }

  Model model(mm);
  for (const auto & item : objects) {
    ModelObject object;
    object.id = string_member(item, "id", "object", ErrorKind::interchange);
    const std::string where = "object '" + object.id + "'";
    object.class_name = string_member(item, "class", where, ErrorKind::interchange);
    if (item.contains("attrs")) {
      if (!item["attrs"].is_object()) {
        throw Error(ErrorKind::interchange, where + ": 'attrs' must be an object");
      }
      for (const auto & [name, value] : item["attrs"].items()) {
        auto & slot = object.attributes[name];
        if (value.is_array()) {
          for (const auto & v : value) {
            slot.push_back(literal_from_json(v, where + "." + name));
          }
        } else {
          slot.push_back(literal_from_json(value, where + "." + name));
        }
      }
    }
    if (item.contains("refs")) {
      if (!item["refs"].is_object()) {
        throw Error(ErrorKind::interchange, where + ": 'refs' must be an object");
      }
      for (const auto & [name, value] : item["refs"].items()) {
        auto & slot = object.references[name];
        auto push = [&](const json & id) {
          if (!id.is_string()) {
            throw Error(ErrorKind::interchange, where + "." + name + ": ids are strings");
          }
          slot.push_back(id.get<std::string>());
        };
        if (value.is_array()) {
          for (const auto & id : value) {
            push(id);
          }
        } else {
          push(value);
        }
      }
    }
    model.insert_raw(std::move(object));
  }

  Diagnostics findings = check_conformance(model, *mm);
  if (has_errors(findings)) {
    throw Error(ErrorKind::conformance, "model does not conform to '" + mm_name + "'", std::move(findings));
  }
  return model;
}

}  // namespace

Model model_from_json(std::string_view text)
{
  try {
    return load_model(text);
  } catch (const json::exception & e) {
    throw Error(ErrorKind::interchange, std::string("malformed model document: ") + e.what());
  }
}

std::string metamodel_to_json(const MetaModel & mm)
{
  json classes = json::array();
  for (const auto & cls : mm.classes()) {
    json attributes = json::array();
    for (const auto & a : cls.attributes) {
      json item{{"name", a.name},
                {"kind", to_string(a.kind)},
                {"lower", a.bounds.lower},
                {"upper", bound_to_json(a.bounds.upper)}};
      if (a.kind == ValueKind::enumeration) {
        item["literals"] = a.enum_literals;
      }
      if (a.default_value) {
        item["default"] = literal_to_json(*a.default_value);
      }
      attributes.push_back(std::move(item));
    }
    json references = json::array();
    for (const auto & r : cls.references) {
      references.push_back({{"name", r.name},
                            {"target", r.target},
                            {"containment", r.containment},
                            {"lower", r.bounds.lower},
                            {"upper", bound_to_json(r.bounds.upper)}});
    }
    json operations = json::array();
    for (const auto & op : cls.operations) {
      operations.push_back({{"name", op.name}, {"parameters", op.parameters}});
    }
    classes.push_back({{"name", cls.name},
                       {"abstract", cls.is_abstract},
                       {"supertype", cls.supertype ? json(*cls.supertype) : json(nullptr)},
                       {"attributes", std::move(attributes)},
                       {"references", std::move(references)},
                       {"operations", std::move(operations)}});
  }
  json doc{{"name", mm.name()}, {"classes", std::move(classes)}};
  return doc.dump(2) + "\n";
}

namespace
{

MetaModel load_metamodel(std::string_view text)
{
  constexpr auto bad = ErrorKind::invalid_metamodel;
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw Error(bad, "metamodel document is not valid JSON");
  }
  MetaModel mm(string_member(doc, "name", "metamodel", bad));
  const json & classes = member(doc, "classes", "metamodel", bad);
  if (!classes.is_array()) {
    throw Error(bad, "'classes' must be an array");
  }
  for (const auto & c : classes) {
    MetaClass cls;
    cls.name = string_member(c, "name", "class", bad);
    const std::string where = "class '" + cls.name + "'";
    cls.is_abstract = c.value("abstract", false);
    if (c.contains("supertype") && !c["supertype"].is_null()) {
      cls.supertype = string_member(c, "supertype", where, bad);
    }
    for (const auto & a : c.value("attributes", json::array())) {
      MetaAttribute attribute;
      attribute.name = string_member(a, "name", where, bad);
      attribute.kind = kind_from_string(string_member(a, "kind", where, bad), where);
      attribute.bounds.lower = bound_from_json(a.value("lower", json(0)), where);
      attribute.bounds.upper = bound_from_json(a.value("upper", json(1)), where);
      if (a.contains("literals")) {
        attribute.enum_literals = a["literals"].get<std::vector<std::string>>();
      }
      if (a.contains("default") && !a["default"].is_null()) {
        try {
          attribute.default_value = literal_from_json(a["default"], where);
        } catch (const Error & e) {
          throw Error(bad, e.what());
        }
      }
      cls.attributes.push_back(std::move(attribute));
    }
    for (const auto & r : c.value("references", json::array())) {
      MetaReference reference;
      reference.name = string_member(r, "name", where, bad);
      reference.target = string_member(r, "target", where, bad);
      reference.containment = r.value("containment", false);
      reference.bounds.lower = bound_from_json(r.value("lower", json(0)), where);
      reference.bounds.upper = bound_from_json(r.value("upper", json("*")), where);
      cls.references.push_back(std::move(reference));
    }
    for (const auto & o : c.value("operations", json::array())) {
      MetaOperation op;
      op.name = string_member(o, "name", where, bad);
      op.parameters = o.value("parameters", std::vector<std::string>{});
      cls.operations.push_back(std::move(op));
    }
    mm.add_class(std::move(cls));
  }
  Diagnostics problems = mm.check_invariants();
  if (!problems.empty()) {
    const std::string message = "metamodel '" + mm.name() + "' violates its invariants: " + problems.front().message;
    throw Error(bad, message, std::move(problems));
  }
  return mm;
}

}  // namespace

MetaModel metamodel_from_json(std::string_view text)
{
  try {
    return load_metamodel(text);
  } catch (const json::exception & e) {
    throw Error(ErrorKind::invalid_metamodel, std::string("malformed metamodel document: ") + e.what());
  }
}

}  // namespace bmod::meta
