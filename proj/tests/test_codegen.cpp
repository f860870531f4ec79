#include <gtest/gtest.h>

#include <filesystem>
#include <functional>
#include <regex>
#include <set>

#include "bmod/codegen/generator.hpp"
#include "bmod/codegen/template.hpp"
#include "bmod/error.hpp"
#include "bmod/meta/bmod_metamodel.hpp"
#include "bmod/meta/interchange.hpp"
#include "json.hpp"
#include "support/files.hpp"

using namespace bmod;
using namespace bmod::codegen;
namespace fs = std::filesystem;

namespace
{

GenerationResult generate_builtin(const std::string & name)
{
  return generate(*meta::bmod_metamodel(), *builtin_template(name));
}

ErrorKind error_kind_of(const std::function<void()> & f)
{
  try {
    f();
  } catch (const Error & e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected bmod::Error";
  return ErrorKind::unknown_class;
}

// Accessor names follow get/set + UpperCamel; an independent spelling of the
// camel-case rule so a bug in lower_camel/upper_camel does not cancel out.
std::string capitalized(const std::string & name)
{
  std::string out;
  bool up = true;
  for (char c : name) {
    if (c == '_' || c == '-') {
      up = true;
      continue;
    }
    out.push_back(up ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
    up = false;
  }
  return out;
}

bool has_word(const std::string & text, const std::string & word)
{
  return std::regex_search(text, std::regex("\\b" + word + "\\b"));
}

}  // namespace

class GoldenTest : public ::testing::TestWithParam<std::string>
{
};

TEST_P(GoldenTest, MatchesCheckedInFilesByteForByte)
{
  const std::string name = GetParam();
  const fs::path dir = test_support::source_dir() / "tests" / "golden" / name;
  const auto result = generate_builtin(name);

  std::set<std::string> expected;
  for (const auto & entry : fs::directory_iterator(dir)) {
    if (entry.path().filename() != "manifest.json") {
      expected.insert(entry.path().filename().string());
    }
  }
  std::set<std::string> produced;
  for (const auto & file : result.files) {
    produced.insert(file.filename);
    EXPECT_EQ(file.content, test_support::slurp(dir / file.filename)) << file.filename;
  }
  EXPECT_EQ(produced, expected);

  const auto manifest = manifest_json(*meta::bmod_metamodel(), *builtin_template(name), result);
  EXPECT_EQ(manifest, test_support::slurp(dir / "manifest.json"));
  EXPECT_TRUE(result.warnings.empty());
}

INSTANTIATE_TEST_SUITE_P(Builtins, GoldenTest, ::testing::Values("java", "neutral"));

TEST(Codegen, OneFilePerClassSortedByName)
{
  const auto & mm = *meta::bmod_metamodel();
  for (const auto & name : builtin_template_names()) {
    const auto result = generate_builtin(name);
    ASSERT_EQ(result.files.size(), mm.classes().size());
    for (std::size_t i = 1; i < result.files.size(); ++i) {
      EXPECT_LT(result.files[i - 1].filename, result.files[i].filename);
    }
    for (const auto & cls : mm.classes()) {
      const std::string filename = cls.name + "." + builtin_template(name)->extension;
      EXPECT_TRUE(std::any_of(result.files.begin(), result.files.end(),
                              [&](const GeneratedFile & f) { return f.filename == filename; }))
        << filename;
    }
  }
}

TEST(Codegen, EveryFeatureHasItsAccessors)
{
  const auto & mm = *meta::bmod_metamodel();
  for (const auto & tmpl_name : builtin_template_names()) {
    const auto tmpl = *builtin_template(tmpl_name);
    const auto result = generate(mm, tmpl);
    for (const auto & cls : mm.classes()) {
      const auto & file = *std::find_if(result.files.begin(), result.files.end(), [&](const GeneratedFile & f) {
        return f.filename == cls.name + "." + tmpl.extension;
      });
      SCOPED_TRACE(tmpl_name + "/" + file.filename);
      EXPECT_TRUE(has_word(file.content, cls.name)) << "class name";
      for (const auto & a : cls.attributes) {
        const std::string upper = capitalized(a.name);
        const bool is_prefix = tmpl_name == "java" && a.kind == meta::ValueKind::boolean && !a.bounds.is_many();
        EXPECT_TRUE(has_word(file.content, (is_prefix ? "is" : "get") + upper)) << a.name;
        EXPECT_TRUE(has_word(file.content, "set" + upper)) << a.name;
      }
      for (const auto & r : cls.references) {
        const std::string upper = capitalized(r.name);
        EXPECT_TRUE(has_word(file.content, "get" + upper)) << r.name;
        if (r.bounds.is_many()) {
          EXPECT_TRUE(has_word(file.content, "add" + upper)) << r.name;
          EXPECT_TRUE(has_word(file.content, "remove" + upper)) << r.name;
        } else {
          EXPECT_TRUE(has_word(file.content, "set" + upper)) << r.name;
        }
      }
      for (const auto & op : cls.operations) {
        EXPECT_TRUE(has_word(file.content, op.name)) << op.name;
      }
    }
  }
}

TEST(Codegen, ByteDeterministicAcrossRuns)
{
  for (const auto & name : builtin_template_names()) {
    const auto first = generate_builtin(name);
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(generate_builtin(name).files, first.files);
    }
    // A metamodel rebuilt from its own JSON generates the same bytes.
    const auto round_tripped = meta::metamodel_from_json(meta::metamodel_to_json(*meta::bmod_metamodel()));
    EXPECT_EQ(generate(round_tripped, *builtin_template(name)).files, first.files);
  }
}

TEST(Codegen, EmptyMetamodelProducesNoFiles)
{
  meta::MetaModel mm("empty");
  const auto result = generate(mm, *builtin_template("java"));
  EXPECT_TRUE(result.files.empty());
  const auto manifest = nlohmann::json::parse(manifest_json(mm, *builtin_template("java"), result));
  EXPECT_EQ(manifest["files"], nlohmann::json::array());
  EXPECT_EQ(manifest["metamodel"], "empty");
}

TEST(Codegen, ClassWithoutFeaturesGetsConstructorOnly)
{
  meta::MetaModel mm("tiny");
  mm.add_class(meta::MetaClass{"Marker", false, std::nullopt, {}, {}, {}});
  const auto result = generate(mm, *builtin_template("java"));
  ASSERT_EQ(result.files.size(), 1u);
  const auto & text = result.files[0].content;
  EXPECT_NE(text.find("public class Marker {"), std::string::npos);
  EXPECT_NE(text.find("public Marker()"), std::string::npos);
  EXPECT_EQ(text.find(" get"), std::string::npos);
  EXPECT_EQ(text.find(" set"), std::string::npos);
  EXPECT_EQ(text.find("private "), std::string::npos);
}

TEST(Codegen, AbstractAndSupertypeAreRendered)
{
  const auto result = generate_builtin("java");
  auto content_of = [&](const std::string & filename) {
    return std::find_if(result.files.begin(), result.files.end(),
                        [&](const GeneratedFile & f) { return f.filename == filename; })
      ->content;
  };
  EXPECT_NE(content_of("Wall.java").find("public class Wall extends Cell"), std::string::npos);
  for (const auto & cls : meta::bmod_metamodel()->classes()) {
    if (cls.is_abstract) {
      EXPECT_NE(content_of(cls.name + ".java").find("public abstract class " + cls.name), std::string::npos);
    }
  }
}

TEST(Codegen, ReservedWordsAreSuffixedWithAWarning)
{
  meta::MetaModel mm("clash");
  meta::MetaClass cls{"class", false, std::nullopt, {}, {}, {}};
  cls.attributes.push_back(meta::MetaAttribute{"default", meta::ValueKind::integer, {}, {1, 1}, std::nullopt});
  cls.attributes.push_back(meta::MetaAttribute{"size", meta::ValueKind::integer, {}, {1, 1}, std::nullopt});
  cls.operations.push_back(meta::MetaOperation{"open", {"new"}});
  mm.add_class(std::move(cls));

  const auto result = generate(mm, *builtin_template("java"));
  ASSERT_EQ(result.files.size(), 1u);
  EXPECT_EQ(result.files[0].filename, "class_.java");
  const auto & text = result.files[0].content;
  EXPECT_NE(text.find("public class class_"), std::string::npos);
  EXPECT_NE(text.find("default_"), std::string::npos);
  EXPECT_NE(text.find("new_"), std::string::npos);
  EXPECT_EQ(text.find("default;"), std::string::npos);

  ASSERT_EQ(result.warnings.size(), 3u);
  for (const auto & w : result.warnings) {
    EXPECT_EQ(w.code, name_collision);
    EXPECT_EQ(w.severity, Severity::warning);
  }
  std::set<std::string> subjects;
  for (const auto & w : result.warnings) {
    subjects.insert(w.object);
  }
  EXPECT_EQ(subjects, (std::set<std::string>{"class", "default", "new"}));

  // The same names are fine for a template that does not reserve them.
  meta::MetaModel plain("plain");
  plain.add_class(meta::MetaClass{"Default", false, std::nullopt, {}, {}, {}});
  EXPECT_TRUE(generate(plain, *builtin_template("java")).warnings.empty());
}

TEST(Codegen, CamelCaseConversion)
{
  EXPECT_EQ(lower_camel("on_fire"), "onFire");
  EXPECT_EQ(lower_camel("on-fire"), "onFire");
  EXPECT_EQ(lower_camel("OnFire"), "onFire");
  EXPECT_EQ(upper_camel("on_fire"), "OnFire");
  EXPECT_EQ(upper_camel("x"), "X");
  EXPECT_EQ(lower_camel("name"), "name");
}

TEST(Codegen, Sha256KnownVectors)
{
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"),
            "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST(Codegen, ManifestListsEveryFileWithSizeAndDigest)
{
  const auto result = generate_builtin("neutral");
  const auto manifest = nlohmann::json::parse(manifest_json(*meta::bmod_metamodel(), *builtin_template("neutral"), result));
  EXPECT_EQ(manifest["template"], "neutral");
  EXPECT_EQ(manifest["metamodel"], "bmod");
  ASSERT_EQ(manifest["files"].size(), result.files.size());
  for (std::size_t i = 0; i < result.files.size(); ++i) {
    const auto & entry = manifest["files"][i];
    EXPECT_EQ(entry["path"], result.files[i].filename);
    EXPECT_EQ(entry["bytes"], result.files[i].content.size());
    EXPECT_EQ(entry["sha256"], sha256_hex(result.files[i].content));
  }
}

TEST(Templates, BuiltinsAreListedFirst)
{
  const auto listing = list_templates(std::nullopt);
  EXPECT_EQ(listing.names, (std::vector<std::string>{"java", "neutral"}));
  EXPECT_TRUE(listing.warnings.empty());
}

TEST(Templates, UserTemplateDirectoryIsScanned)
{
  test_support::TempDir dir;
  test_support::spit(dir.path() / "csharp-like.json",
                     R"({"base": "java", "extension": "cs", "reserved_words": ["string", "object"],
                         "fragments": {"header": "// C#-ish output for {{metamodel}}\n"}})");
  test_support::spit(dir.path() / "notes.txt", "ignored");

  const auto listing = list_templates(dir.path());
  EXPECT_EQ(listing.names, (std::vector<std::string>{"java", "neutral", "csharp-like"}));

  const auto tmpl = load_template("csharp-like", dir.path());
  EXPECT_EQ(tmpl.extension, "cs");
  const auto result = generate(*meta::bmod_metamodel(), tmpl);
  ASSERT_FALSE(result.files.empty());
  EXPECT_EQ(result.files.front().filename, "Cell.cs");
}

TEST(Templates, UnreadableDirectoryWarnsAndKeepsBuiltins)
{
  test_support::TempDir dir;
  const auto listing = list_templates(dir.path() / "missing");
  EXPECT_EQ(listing.names, (std::vector<std::string>{"java", "neutral"}));
  ASSERT_EQ(listing.warnings.size(), 1u);
  EXPECT_EQ(listing.warnings[0].code, "GEN_TEMPLATE_DIR");
}

TEST(Templates, UnknownNameListsAvailableTemplates)
{
  try {
    (void)load_template("nope", std::nullopt);
    FAIL() << "expected an error";
  } catch (const Error & e) {
    EXPECT_EQ(e.kind(), ErrorKind::unknown_template);
    EXPECT_NE(std::string(e.what()).find("java, neutral"), std::string::npos);
  }
}

TEST(Templates, MalformedUserTemplatesAreRejected)
{
  test_support::TempDir dir;
  test_support::spit(dir.path() / "broken.json", "{not json");
  test_support::spit(dir.path() / "badbase.json", R"({"base": "cobol"})");
  test_support::spit(dir.path() / "badext.json", R"({"extension": "../x"})");
  test_support::spit(dir.path() / "badfrag.json", R"({"fragments": {"file": 3}})");
  for (const char * name : {"broken", "badbase", "badext", "badfrag"}) {
    EXPECT_EQ(error_kind_of([&] { (void)load_template(name, dir.path()); }), ErrorKind::template_error) << name;
  }
}

TEST(Templates, RenderSubstitutesAndRejectsUnknownPlaceholders)
{
  EXPECT_EQ(render("a {{x}} b {{x}}{{y}}", {{"x", "1"}, {"y", "2"}}), "a 1 b 12");
  EXPECT_EQ(render("no slots", {}), "no slots");
  EXPECT_EQ(error_kind_of([] { (void)render("{{missing}}", {}); }), ErrorKind::template_error);
  EXPECT_EQ(error_kind_of([] { (void)render("{{open", {{"open", ""}}); }), ErrorKind::template_error);
}

TEST(Templates, BrokenFragmentSurfacesAsTemplateError)
{
  auto tmpl = *builtin_template("neutral");
  tmpl.fragments["constructor"] = "{{nonsense}}";
  EXPECT_EQ(error_kind_of([&] { (void)generate(*meta::bmod_metamodel(), tmpl); }), ErrorKind::template_error);
  tmpl.fragments.erase("constructor");
  EXPECT_EQ(error_kind_of([&] { (void)generate(*meta::bmod_metamodel(), tmpl); }), ErrorKind::template_error);
}
