#include "bmod/codegen/template.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bmod/error.hpp"
#include "json.hpp"

namespace bmod::codegen
{

namespace
{

GenTemplate java_template()
{
  GenTemplate t;
  t.name = "java";
  t.extension = "java";
  t.reserved_words = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "false", "final", "finally",
    "float", "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "null", "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws", "transient", "true", "try",
    "void", "volatile", "while", "var", "record", "yield",
  };
  t.fragments = {
    {"type_boolean", "boolean"},
    {"type_integer", "long"},
    {"type_string", "String"},
    {"box_boolean", "Boolean"},
    {"box_integer", "Long"},
    {"box_string", "String"},
    {"list_type", "java.util.List<{{item}}>"},
    {"list_init", " = new java.util.ArrayList<>()"},
    {"field_init", " = {{value}}"},
    {"string_quote", "\""},
    {"enum_value", "{{Enum}}.{{LITERAL}}"},
    {"enum_literal", "{{LITERAL}}"},
    {"enum_separator", ", "},
    {"parameter", "Object {{param}}"},
    {"parameter_separator", ", "},
    {"extends", " extends {{super}}"},
    {"abstract", "abstract "},
    {"header", "// Generated by bmod codegen from metamodel '{{metamodel}}'. Do not edit.\n\n"},
    {"class_doc",
     "/**\n"
     " * A representation of the model object '<em><b>{{class}}</b></em>'.\n"
     " * @generated\n"
     " */\n"},
    {"file",
     "{{header}}{{class_doc}}public {{abstract}}class {{class}}{{extends}} {\n"
     "{{enums}}{{fields}}{{constructor}}{{accessors}}{{operations}}}\n"},
    {"enum_decl",
     "\n"
     "  /**\n"
     "   * The literals of the '<em>{{name}}</em>' attribute.\n"
     "   * @generated\n"
     "   */\n"
     "  public enum {{Enum}} { {{literals}} }\n"},
    {"field", "  protected {{type}} {{field}}{{init}};\n"},
    {"constructor",
     "\n"
     "  /**\n"
     "   * Creates a new '<em><b>{{class}}</b></em>' with default feature values.\n"
     "   * @generated\n"
     "   */\n"
     "  public {{class}}() {\n"
     "    super();\n"
     "  }\n"},
    {"getter",
     "\n"
     "  /**\n"
     "   * Returns the value of the '<em>{{name}}</em>' {{feature_kind}}.\n"
     "   * @return the value of the '<em>{{name}}</em>' {{feature_kind}}.\n"
     "   * @generated\n"
     "   */\n"
     "  public {{type}} get{{Name}}() {\n"
     "    return {{field}};\n"
     "  }\n"},
    {"bool_getter",
     "\n"
     "  /**\n"
     "   * Returns the value of the '<em>{{name}}</em>' {{feature_kind}}.\n"
     "   * @return the value of the '<em>{{name}}</em>' {{feature_kind}}.\n"
     "   * @generated\n"
     "   */\n"
     "  public {{type}} is{{Name}}() {\n"
     "    return {{field}};\n"
     "  }\n"},
    {"setter",
     "\n"
     "  /**\n"
     "   * Sets the value of the '<em>{{name}}</em>' {{feature_kind}}.\n"
     "   * @param value the new value of the '<em>{{name}}</em>' {{feature_kind}}.\n"
     "   * @generated\n"
     "   */\n"
     "  public void set{{Name}}({{type}} value) {\n"
     "    this.{{field}} = value;\n"
     "  }\n"},
    {"list_getter",
     "\n"
     "  /**\n"
     "   * Returns the '<em>{{name}}</em>' {{feature_kind}} list.\n"
     "   * @return the live list of '<em>{{name}}</em>' values.\n"
     "   * @generated\n"
     "   */\n"
     "  public {{type}} get{{Name}}() {\n"
     "    return {{field}};\n"
     "  }\n"},
    {"adder",
     "\n"
     "  /**\n"
     "   * Adds an element to the '<em>{{name}}</em>' {{feature_kind}} list.\n"
     "   * @param value the element to add.\n"
     "   * @generated\n"
     "   */\n"
     "  public void add{{Name}}({{item}} value) {\n"
     "    {{field}}.add(value);\n"
     "  }\n"},
    {"remover",
     "\n"
     "  /**\n"
     "   * Removes an element from the '<em>{{name}}</em>' {{feature_kind}} list.\n"
     "   * @param value the element to remove.\n"
     "   * @return whether the list contained the element.\n"
     "   * @generated\n"
     "   */\n"
     "  public boolean remove{{Name}}({{item}} value) {\n"
     "    return {{field}}.remove(value);\n"
     "  }\n"},
    {"operation",
     "\n"
     "  /**\n"
     "   * Declared operation '<em>{{op}}</em>'; the behaviour is supplied by hand-written code.\n"
     "   * @generated\n"
     "   */\n"
     "  public Object {{op}}({{params}}) {\n"
     "    throw new UnsupportedOperationException(\"{{op}}\");\n"
     "  }\n"},
  };
  return t;
}

GenTemplate neutral_template()
{
  GenTemplate t;
  t.name = "neutral";
  t.extension = "model";
  t.reserved_words = {"abstract", "class", "constructor", "end", "enum", "extends", "field", "get", "op", "set"};
  t.fragments = {
    {"type_boolean", "boolean"},
    {"type_integer", "integer"},
    {"type_string", "string"},
    {"box_boolean", "boolean"},
    {"box_integer", "integer"},
    {"box_string", "string"},
    {"list_type", "list<{{item}}>"},
    {"list_init", ""},
    {"field_init", " = {{value}}"},
    {"string_quote", "\""},
    {"enum_value", "{{literal}}"},
    {"enum_literal", "{{literal}}"},
    {"enum_separator", " | "},
    {"parameter", "{{param}}"},
    {"parameter_separator", ", "},
    {"extends", " extends {{super}}"},
    {"abstract", "abstract "},
    {"header", "# Generated by bmod codegen from metamodel '{{metamodel}}'. Do not edit.\n\n"},
    {"class_doc", "## Model class {{class}}.\n"},
    {"file", "{{header}}{{class_doc}}{{abstract}}class {{class}}{{extends}}\n"
             "{{enums}}{{fields}}{{constructor}}{{accessors}}{{operations}}end\n"},
    {"enum_decl", "\n  ## Literals of '{{name}}'.\n  enum {{Enum}} = {{literals}}\n"},
    {"field", "  field {{field}}: {{type}} [{{lower}}..{{upper}}]{{modifiers}}{{init}}\n"},
    {"constructor", "\n  ## Creates a new {{class}} with default feature values.\n  constructor {{class}}()\n"},
    {"getter", "\n  ## Returns the value of '{{name}}'.\n  get get{{Name}}(): {{type}}\n"},
    {"bool_getter", "\n  ## Returns the value of '{{name}}'.\n  get get{{Name}}(): {{type}}\n"},
    {"setter", "\n  ## Sets the value of '{{name}}'.\n  set set{{Name}}(value: {{type}})\n"},
    {"list_getter", "\n  ## Returns the '{{name}}' list.\n  get get{{Name}}(): {{type}}\n"},
    {"adder", "\n  ## Adds an element to '{{name}}'.\n  op add{{Name}}(value: {{item}})\n"},
    {"remover", "\n  ## Removes an element from '{{name}}'.\n  op remove{{Name}}(value: {{item}})\n"},
    {"operation", "\n  ## Declared operation '{{op}}'; no body is generated.\n  op {{op}}({{params}})\n"},
  };
  return t;
}

std::string available(const std::vector<std::string> & names)
{
  std::string out;
  for (const auto & n : names) {
    out += (out.empty() ? "" : ", ") + n;
  }
  return out;
}

}  // namespace

const std::string & GenTemplate::fragment(std::string_view key) const
{
  auto it = fragments.find(key);
  if (it == fragments.end()) {
    throw Error(ErrorKind::template_error, "template '" + name + "' lacks fragment '" + std::string(key) + "'");
  }
  return it->second;
}

const std::vector<std::string> & builtin_template_names()
{
  static const std::vector<std::string> names{"java", "neutral"};
  return names;
}

std::optional<GenTemplate> builtin_template(std::string_view name)
{
  if (name == "java") return java_template();
  if (name == "neutral") return neutral_template();
  return std::nullopt;
}

TemplateListing list_templates(const std::optional<std::filesystem::path> & user_dir)
{
  TemplateListing listing{builtin_template_names(), {}};
  if (!user_dir) {
    return listing;
  }
  std::error_code ec;
  std::vector<std::string> user;
  std::filesystem::directory_iterator it(*user_dir, ec);
  for (; !ec && it != std::filesystem::directory_iterator(); it.increment(ec)) {
    const auto & path = it->path();
    if (path.extension() == ".json") {
      user.push_back(path.stem().string());
    }
  }
  if (ec) {
    listing.warnings.push_back(Diagnostic{Severity::warning, "GEN_TEMPLATE_DIR",
                                          "cannot read template directory '" + user_dir->string() + "': " +
                                            ec.message(),
                                          {}, {}, false});
    return listing;
  }
  std::sort(user.begin(), user.end());
  for (auto & name : user) {
    if (std::find(listing.names.begin(), listing.names.end(), name) == listing.names.end()) {
      listing.names.push_back(std::move(name));
    }
  }
  return listing;
}

GenTemplate load_template(std::string_view name, const std::optional<std::filesystem::path> & user_dir)
{
  if (auto builtin = builtin_template(name)) {
    return *builtin;
  }
  const auto listing = list_templates(user_dir);
  if (!user_dir || std::find(listing.names.begin(), listing.names.end(), name) == listing.names.end()) {
    throw Error(ErrorKind::unknown_template,
                "unknown template '" + std::string(name) + "' (available: " + available(listing.names) + ")");
  }

  const auto path = *user_dir / (std::string(name) + ".json");
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto doc = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (!in || doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorKind::template_error, "template file '" + path.string() + "' is not a JSON object");
  }
  try {
    const std::string base_name = doc.value("base", std::string("neutral"));
    auto base = builtin_template(base_name);
    if (!base) {
      throw Error(ErrorKind::template_error, "template '" + std::string(name) + "' has unknown base '" + base_name + "'");
    }
    GenTemplate t = std::move(*base);
    t.name = std::string(name);
    t.extension = doc.value("extension", t.extension);
    if (doc.contains("reserved_words")) {
      t.reserved_words = doc["reserved_words"].get<std::vector<std::string>>();
    }
    if (doc.contains("fragments")) {
      for (const auto & [key, value] : doc["fragments"].items()) {
        t.fragments[key] = value.get<std::string>();
      }
    }
    if (t.extension.empty() || t.extension.find_first_of("/\\") != std::string::npos) {
      throw Error(ErrorKind::template_error, "template '" + t.name + "' has an invalid extension");
    }
    return t;
  } catch (const nlohmann::json::exception & e) {
    throw Error(ErrorKind::template_error, "template '" + std::string(name) + "': " + e.what());
  }
}

std::string render(std::string_view text, const std::map<std::string, std::string, std::less<>> & vars)
{
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, open - pos));
    const std::size_t close = text.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw Error(ErrorKind::template_error, "unterminated placeholder in template text");
    }
    const std::string_view key = text.substr(open + 2, close - open - 2);
    auto it = vars.find(key);
    if (it == vars.end()) {
      throw Error(ErrorKind::template_error, "unknown placeholder '{{" + std::string(key) + "}}'");
    }
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

}  // namespace bmod::codegen
