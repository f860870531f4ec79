#include "bmod/codegen/generator.hpp"

#include <algorithm>
#include <cctype>

#include <openssl/evp.h>

#include "bmod/error.hpp"
#include "json.hpp"

namespace bmod::codegen
{

using Vars = std::map<std::string, std::string, std::less<>>;

std::string lower_camel(std::string_view name)
{
  std::string out;
  bool upper_next = false;
  for (char c : name) {
    if (c == '_' || c == '-' || c == ' ') {
      upper_next = !out.empty();
      continue;
    }
    if (out.empty()) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (upper_next) {
      out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    } else {
      out.push_back(c);
    }
    upper_next = false;
  }
  return out;
}

std::string upper_camel(std::string_view name)
{
  std::string out = lower_camel(name);
  if (!out.empty()) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

std::string sha256_hex(std::string_view content)
{
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(content.data(), content.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::template_error, "SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0x0F]);
  }
  return out;
}

namespace
{

std::string upper_case(std::string_view text)
{
  std::string out(text);
  for (auto & c : out) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

class Generator
{
public:
  Generator(const meta::MetaModel & mm, const GenTemplate & t) : mm_(mm), t_(t)
  {
    for (const auto & cls : mm_.classes()) {
      class_names_[cls.name] = safe(cls.name, "class '" + cls.name + "'");
    }
  }

  GenerationResult run()
  {
    for (const auto & cls : mm_.classes()) {
      result_.files.push_back(GeneratedFile{class_names_[cls.name] + "." + t_.extension, render_class(cls)});
    }
    std::sort(result_.files.begin(), result_.files.end(),
              [](const GeneratedFile & a, const GeneratedFile & b) { return a.filename < b.filename; });
    return std::move(result_);
  }

private:
  std::string safe(const std::string & name, const std::string & what)
  {
    if (std::find(t_.reserved_words.begin(), t_.reserved_words.end(), name) == t_.reserved_words.end()) {
      return name;
    }
    result_.warnings.push_back(Diagnostic{Severity::warning, std::string(name_collision),
                                          what + " collides with a reserved word of template '" + t_.name +
                                            "'; renamed to '" + name + "_'",
                                          name, {}, false});
    return name + "_";
  }

  std::string frag(std::string_view key, const Vars & vars) const { return render(t_.fragment(key), vars); }

  std::string scalar_type(const meta::MetaAttribute & a, bool boxed) const
  {
    switch (a.kind) {
      case meta::ValueKind::boolean: return t_.fragment(boxed ? "box_boolean" : "type_boolean");
      case meta::ValueKind::integer: return t_.fragment(boxed ? "box_integer" : "type_integer");
      case meta::ValueKind::string: return t_.fragment(boxed ? "box_string" : "type_string");
      case meta::ValueKind::enumeration: return upper_camel(a.name);
    }
    return {};
  }

  std::string format_literal(const meta::MetaAttribute & a, const meta::Literal & value) const
  {
    if (a.kind == meta::ValueKind::enumeration) {
      const auto & literal = std::get<std::string>(value);
      return frag("enum_value", {{"Enum", upper_camel(a.name)}, {"LITERAL", upper_case(literal)}, {"literal", literal}});
    }
    if (const auto * text = std::get_if<std::string>(&value)) {
      const std::string & q = t_.fragment("string_quote");
      std::string out = q;
      for (char c : *text) {
        if (c == '\\' || c == '"') out.push_back('\\');
        if (c == '\n') { out += "\\n"; continue; }
        out.push_back(c);
      }
      return out + q;
    }
    return meta::literal_to_string(value);
  }

  std::string render_class(const meta::MetaClass & cls)
  {
    const std::string class_name = class_names_[cls.name];
    Vars base{{"metamodel", mm_.name()}, {"class", class_name}};
    if (cls.supertype) {
      auto it = class_names_.find(*cls.supertype);
      base["super"] = it != class_names_.end() ? it->second : *cls.supertype;
    } else {
      base["super"] = "";
    }

    std::string enums, fields, accessors, operations;

    for (const auto & a : cls.attributes) {
      Vars v = base;
      v["name"] = a.name;
      v["Name"] = upper_camel(a.name);
      v["field"] = safe(lower_camel(a.name), "attribute '" + cls.name + "." + a.name + "'");
      v["feature_kind"] = "attribute";
      v["lower"] = std::to_string(a.bounds.lower);
      v["upper"] = meta::format_bound(a.bounds.upper);
      v["modifiers"] = "";
      v["item"] = scalar_type(a, true);
      v["Enum"] = upper_camel(a.name);

      if (a.kind == meta::ValueKind::enumeration) {
        std::string literals;
        for (const auto & literal : a.enum_literals) {
          if (!literals.empty()) literals += t_.fragment("enum_separator");
          literals += frag("enum_literal", {{"LITERAL", upper_case(literal)}, {"literal", literal}});
        }
        Vars ev = v;
        ev["literals"] = literals;
        enums += frag("enum_decl", ev);
      }

      if (a.bounds.is_many()) {
        v["type"] = frag("list_type", v);
        v["init"] = frag("list_init", v);
        fields += frag("field", v);
        accessors += frag("getter", v);
        accessors += frag("setter", v);
        continue;
      }
      v["type"] = scalar_type(a, false);
      v["init"] = a.default_value ? frag("field_init", Vars{{"value", format_literal(a, *a.default_value)}}) : "";
      fields += frag("field", v);
      accessors += frag(a.kind == meta::ValueKind::boolean ? "bool_getter" : "getter", v);
      accessors += frag("setter", v);
    }

    for (const auto & r : cls.references) {
      Vars v = base;
      auto target = class_names_.find(r.target);
      v["name"] = r.name;
      v["Name"] = upper_camel(r.name);
      v["field"] = safe(lower_camel(r.name), "reference '" + cls.name + "." + r.name + "'");
      v["feature_kind"] = "reference";
      v["lower"] = std::to_string(r.bounds.lower);
      v["upper"] = meta::format_bound(r.bounds.upper);
      v["modifiers"] = r.containment ? " containment" : "";
      v["item"] = target != class_names_.end() ? target->second : r.target;
      v["target"] = v["item"];
      if (r.bounds.is_many()) {
        v["type"] = frag("list_type", v);
        v["init"] = frag("list_init", v);
        fields += frag("field", v);
        accessors += frag("list_getter", v);
        accessors += frag("adder", v);
        accessors += frag("remover", v);
      } else {
        v["type"] = v["item"];
        v["init"] = "";
        fields += frag("field", v);
        accessors += frag("getter", v);
        accessors += frag("setter", v);
      }
    }

    for (const auto & op : cls.operations) {
      std::string params;
      for (const auto & p : op.parameters) {
        if (!params.empty()) params += t_.fragment("parameter_separator");
        params += frag("parameter", {{"param", safe(p, "parameter '" + cls.name + "." + op.name + "(" + p + ")'")}});
      }
      Vars v = base;
      v["op"] = safe(op.name, "operation '" + cls.name + "." + op.name + "'");
      v["params"] = params;
      operations += frag("operation", v);
    }

    Vars file = base;
    file["header"] = frag("header", base);
    file["class_doc"] = frag("class_doc", base);
    file["abstract"] = cls.is_abstract ? t_.fragment("abstract") : "";
    file["extends"] = cls.supertype ? frag("extends", base) : "";
    file["enums"] = enums;
    file["fields"] = fields.empty() ? "" : "\n" + fields;
    file["constructor"] = frag("constructor", base);
    file["accessors"] = accessors;
    file["operations"] = operations;
    return frag("file", file);
  }

  const meta::MetaModel & mm_;
  const GenTemplate & t_;
  std::map<std::string, std::string, std::less<>> class_names_;
  GenerationResult result_;
};

}  // namespace

GenerationResult generate(const meta::MetaModel & mm, const GenTemplate & tmpl) { return Generator(mm, tmpl).run(); }

std::string manifest_json(const meta::MetaModel & mm, const GenTemplate & tmpl, const GenerationResult & result)
{
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto & f : result.files) {
    files.push_back({{"path", f.filename}, {"sha256", sha256_hex(f.content)}, {"bytes", f.content.size()}});
  }
  nlohmann::ordered_json doc{{"template", tmpl.name}, {"metamodel", mm.name()}, {"files", std::move(files)}};
  return doc.dump(2) + "\n";
}

}  // namespace bmod::codegen
