#include <gtest/gtest.h>

#include <sstream>

#include "bmod/cli/cli.hpp"
#include "bmod/lang/parser.hpp"
#include "bmod/lang/serializer.hpp"
#include "json.hpp"
#include "support/files.hpp"

using namespace bmod;
using nlohmann::json;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
  int code = -1;
  std::string out;
  std::string err;
};

Outcome bmod_cli(std::vector<std::string> args)
{
  std::ostringstream out;
  std::ostringstream err;
  Outcome r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string corpus(const char * name)
{
  return (test_support::source_dir() / "corpus" / name).string();
}

std::size_t line_count(const std::string & text)
{
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST(CliCheck, ValidFileIsSilent)
{
  const auto r = bmod_cli({"check", corpus("corridor.bmod")});
  EXPECT_EQ(r.code, cli::exit_ok);
  EXPECT_EQ(r.out, "");
  EXPECT_EQ(r.err, "");
}

TEST(CliCheck, ValidationErrorExitsOneWithOneLine)
{
  const auto path = (test_support::source_dir() / "tests" / "data" / "bad_door.bmod").string();
  const auto r = bmod_cli({"check", path});
  EXPECT_EQ(r.code, cli::exit_semantic);
  const std::string all = r.out + r.err;
  EXPECT_EQ(line_count(all), 1u) << all;
  EXPECT_NE(all.find("VAL_DOOR_SAME_ROOM"), std::string::npos);
  EXPECT_NE(all.find("bad_door.bmod:"), std::string::npos);
}

TEST(CliCheck, ParseErrorExitsTwo)
{
  test_support::TempDir dir;
  test_support::spit(dir.path() / "broken.bmod", "floor \"G\" { room \"R\" 2 x { } }");
  const auto r = bmod_cli({"check", dir.str("broken.bmod")});
  EXPECT_EQ(r.code, cli::exit_usage);
  EXPECT_NE(r.err.find("PARSE_"), std::string::npos);
}

TEST(CliCheck, MissingFileExitsThree)
{
  const auto r = bmod_cli({"check", "/definitely/not/here.bmod"});
  EXPECT_EQ(r.code, cli::exit_io);
  EXPECT_NE(r.err.find("cannot read"), std::string::npos);
}

TEST(CliCheck, WorstExitCodeWins)
{
  const auto bad = (test_support::source_dir() / "tests" / "data" / "bad_door.bmod").string();
  EXPECT_EQ(bmod_cli({"check", corpus("corridor.bmod"), bad}).code, cli::exit_semantic);
  EXPECT_EQ(bmod_cli({"check", bad, "/definitely/not/here.bmod"}).code, cli::exit_io);
  EXPECT_EQ(bmod_cli({"validate", corpus("corridor.bmod")}).code, cli::exit_ok);
}

TEST(CliCheck, JsonFormat)
{
  const auto bad = (test_support::source_dir() / "tests" / "data" / "bad_door.bmod").string();
  const auto r = bmod_cli({"check", "--format", "json", bad});
  EXPECT_EQ(r.code, cli::exit_semantic);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["file"], bad);
  EXPECT_EQ(doc["exit"], 1);
  ASSERT_EQ(doc["diagnostics"].size(), 1u);
  EXPECT_EQ(doc["diagnostics"][0]["code"], "VAL_DOOR_SAME_ROOM");
}

TEST(CliSimulate, SummaryAndArtifacts)
{
  test_support::TempDir dir;
  const auto r = bmod_cli({"--out", dir.str(), "simulate", corpus("corridor.bmod")});
  EXPECT_EQ(r.code, cli::exit_ok) << r.err;
  EXPECT_EQ(r.out, "ticks=2 evacuated=1 dead=0 trapped=0\n");

  const auto result = json::parse(test_support::slurp(dir.path() / "result.json"));
  EXPECT_EQ(result["ticks"], 2);
  EXPECT_EQ(result["people"][0]["name"], "alice");
  EXPECT_EQ(result["people"][0]["outcome"], "evacuated");

  std::istringstream trace(test_support::slurp(dir.path() / "trace.jsonl"));
  std::string line;
  std::size_t events = 0;
  std::uint64_t last_tick = 0;
  while (std::getline(trace, line)) {
    const auto event = json::parse(line);
    EXPECT_GE(event["tick"].get<std::uint64_t>(), last_tick);
    last_tick = event["tick"];
    ++events;
  }
  EXPECT_EQ(events, 3u);
}

TEST(CliSimulate, ZeroTicksLeavesEveryoneTrapped)
{
  test_support::TempDir dir;
  const auto r = bmod_cli({"--out", dir.str(), "simulate", "--max-ticks", "0", corpus("corridor.bmod")});
  EXPECT_EQ(r.code, cli::exit_ok);
  EXPECT_EQ(r.out, "ticks=0 evacuated=0 dead=0 trapped=1\n");
}

TEST(CliSimulate, JsonFormatAndFlags)
{
  test_support::TempDir dir;
  const auto r = bmod_cli({"--out", dir.str(), "simulate", "--format", "json", "--policy", "shortest_path",
                           "--fire-period", "2", "--seed", "9", corpus("two_rooms.bmod")});
  EXPECT_EQ(r.code, cli::exit_ok) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["evacuated"].get<int>() + doc["dead"].get<int>() + doc["trapped"].get<int>(), 2);
}

TEST(CliSimulate, InvalidScenarioAndBadFlags)
{
  test_support::TempDir dir;
  const auto bad = (test_support::source_dir() / "tests" / "data" / "bad_door.bmod").string();
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "simulate", bad}).code, cli::exit_semantic);
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "simulate", "--policy", "random", corpus("corridor.bmod")}).code,
            cli::exit_usage);
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "simulate", "--max-ticks", "-4", corpus("corridor.bmod")}).code,
            cli::exit_usage);
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "simulate"}).code, cli::exit_usage);
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "simulate", "/no/such.bmod"}).code, cli::exit_io);
}

TEST(CliSimulate, SweepRunsEveryScenario)
{
  test_support::TempDir dir;
  const auto r = bmod_cli({"--out", dir.str(), "simulate", "--sweep", (test_support::source_dir() / "corpus").string()});
  EXPECT_EQ(r.code, cli::exit_ok) << r.err;
  std::size_t scenarios = 0;
  for (const auto & entry : fs::directory_iterator(test_support::source_dir() / "corpus")) {
    if (entry.path().extension() == ".bmod") {
      ++scenarios;
      const auto stem = entry.path().stem().string();
      EXPECT_TRUE(fs::exists(dir.path() / stem / "result.json")) << stem;
      EXPECT_NE(r.out.find(stem + ": ticks="), std::string::npos) << stem;
    }
  }
  EXPECT_EQ(line_count(r.out), scenarios);
  // Same output on a second run, independent of thread scheduling.
  test_support::TempDir again;
  EXPECT_EQ(bmod_cli({"--out", again.str(), "simulate", "--sweep", (test_support::source_dir() / "corpus").string()}).out,
            r.out);
}

TEST(CliCodegen, WritesFilesAndManifest)
{
  test_support::TempDir dir;
  const auto r = bmod_cli({"--out", dir.str(), "codegen", "--builtin", "bmod"});
  EXPECT_EQ(r.code, cli::exit_ok) << r.err;
  EXPECT_NE(r.out.find("generated 9 files"), std::string::npos) << r.out;

  const fs::path target = dir.path() / "java";
  const auto manifest = json::parse(test_support::slurp(target / "manifest.json"));
  ASSERT_EQ(manifest["files"].size(), 9u);
  for (const auto & entry : manifest["files"]) {
    const auto golden = test_support::source_dir() / "tests" / "golden" / "java" / entry["path"].get<std::string>();
    EXPECT_EQ(test_support::slurp(target / entry["path"].get<std::string>()), test_support::slurp(golden));
  }

  const std::string first = test_support::slurp(target / "manifest.json");
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "codegen", "--builtin", "bmod"}).code, cli::exit_ok);
  EXPECT_EQ(test_support::slurp(target / "manifest.json"), first);
}

TEST(CliCodegen, MetamodelFromFile)
{
  test_support::TempDir dir;
  test_support::spit(dir.path() / "mm.json",
                     R"({"name": "shop", "classes": [{"name": "Item", "attributes": [{"name": "price", "kind": "integer"}]}]})");
  const auto r = bmod_cli({"--out", dir.str("gen"), "codegen", "--template", "neutral", dir.str("mm.json")});
  EXPECT_EQ(r.code, cli::exit_ok) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "gen" / "neutral" / "Item.model"));
}

TEST(CliCodegen, Errors)
{
  test_support::TempDir dir;
  const auto unknown = bmod_cli({"--out", dir.str(), "codegen", "--builtin", "bmod", "--template", "nope"});
  EXPECT_EQ(unknown.code, cli::exit_usage);
  EXPECT_NE(unknown.err.find("unknown template 'nope' (available: java, neutral)"), std::string::npos) << unknown.err;

  test_support::spit(dir.path() / "bad.json", R"({"name": "x", "classes": [{"name": "A", "supertype": "A"}]})");
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "codegen", dir.str("bad.json")}).code, cli::exit_semantic);
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "codegen", dir.str("missing.json")}).code, cli::exit_io);
}

TEST(CliCodegen, ListsUserTemplates)
{
  test_support::TempDir dir;
  test_support::spit(dir.path() / "tpl" / "csharp-like.json", R"({"base": "java", "extension": "cs"})");
  const auto r = bmod_cli({"codegen", "--list-templates", "--template-dir", dir.str("tpl")});
  EXPECT_EQ(r.code, cli::exit_ok);
  EXPECT_EQ(r.out, "java\nneutral\ncsharp-like\n");

  const auto gen = bmod_cli({"--out", dir.str("o"), "codegen", "--builtin", "bmod", "--template", "csharp-like",
                             "--template-dir", dir.str("tpl")});
  EXPECT_EQ(gen.code, cli::exit_ok) << gen.err;
  EXPECT_TRUE(fs::exists(dir.path() / "o" / "csharp-like" / "Cell.cs"));
}

TEST(CliExport, AllViews)
{
  test_support::TempDir dir;
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "export", "--view", "classes", "--builtin", "bmod"}).code, cli::exit_ok);
  EXPECT_EQ(test_support::slurp(dir.path() / "bmod.dot").rfind("digraph", 0), 0u);
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "export", "--view", "spreadsheet", "--builtin", "bmod"}).code,
            cli::exit_ok);
  EXPECT_EQ(test_support::slurp(dir.path() / "bmod.csv").rfind("class,feature", 0), 0u);

  const auto r = bmod_cli({"--out", dir.str(), "export", "--view", "scenario", "--at-tick", "3", corpus("two_rooms.bmod")});
  EXPECT_EQ(r.code, cli::exit_ok) << r.err;
  EXPECT_NE(r.out.find("wrote "), std::string::npos);
  EXPECT_NE(test_support::slurp(dir.path() / "two_rooms.svg").find("<desc>tick 3</desc>"), std::string::npos);
}

TEST(CliExport, StyleFileIsApplied)
{
  test_support::TempDir dir;
  test_support::spit(dir.path() / "style.json", R"({"elements": {"wall": {"fill": "#010203"}}})");
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "export", "--view", "scenario", "--style", dir.str("style.json"),
                      corpus("two_rooms.bmod")})
              .code,
            cli::exit_ok);
  EXPECT_NE(test_support::slurp(dir.path() / "two_rooms.svg").find("#010203"), std::string::npos);

  test_support::spit(dir.path() / "bad.json", R"({"elements": {"wall": {"fill": "nope"}}})");
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "export", "--view", "scenario", "--style", dir.str("bad.json"),
                      corpus("two_rooms.bmod")})
              .code,
            cli::exit_usage);
}

TEST(CliExport, InvalidViewExitsTwo)
{
  test_support::TempDir dir;
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "export", "--view", "pie", "--builtin", "bmod"}).code, cli::exit_usage);
  EXPECT_EQ(bmod_cli({"--out", dir.str(), "export", "--builtin", "bmod"}).code, cli::exit_usage);
}

TEST(CliFmt, PrintsChecksAndWrites)
{
  test_support::TempDir dir;
  const auto path = dir.path() / "s.bmod";
  test_support::spit(path, test_support::slurp(corpus("two_rooms.bmod")));

  const auto printed = bmod_cli({"fmt", path.string()});
  EXPECT_EQ(printed.code, cli::exit_ok);
  auto reparsed = lang::parse(printed.out);
  ASSERT_TRUE(reparsed.ok());
  EXPECT_EQ(lang::serialize(*reparsed.scenario), printed.out);

  EXPECT_EQ(bmod_cli({"fmt", "--check", path.string()}).code, cli::exit_semantic);
  EXPECT_EQ(bmod_cli({"fmt", "--write", path.string()}).code, cli::exit_ok);
  EXPECT_EQ(test_support::slurp(path), printed.out);
  EXPECT_EQ(bmod_cli({"fmt", "--check", path.string()}).code, cli::exit_ok);
  EXPECT_EQ(bmod_cli({"fmt", "--check", "--write", path.string()}).code, cli::exit_usage);
}

TEST(CliConfig, FileSuppliesDefaultsAndFlagsOverride)
{
  test_support::TempDir dir;
  test_support::spit(dir.path() / "cfg.json", json{{"out", dir.str("from-config")}, {"max_ticks", 0}}.dump());

  auto r = bmod_cli({"--config", dir.str("cfg.json"), "simulate", corpus("corridor.bmod")});
  EXPECT_EQ(r.code, cli::exit_ok) << r.err;
  EXPECT_EQ(r.out, "ticks=0 evacuated=0 dead=0 trapped=1\n");
  EXPECT_TRUE(fs::exists(dir.path() / "from-config" / "result.json"));

  r = bmod_cli({"--config", dir.str("cfg.json"), "--out", dir.str("from-flag"), "simulate", "--max-ticks", "50",
                corpus("corridor.bmod")});
  EXPECT_EQ(r.code, cli::exit_ok) << r.err;
  EXPECT_EQ(r.out, "ticks=2 evacuated=1 dead=0 trapped=0\n");
  EXPECT_TRUE(fs::exists(dir.path() / "from-flag" / "result.json"));
}

TEST(CliConfig, BadConfigs)
{
  test_support::TempDir dir;
  test_support::spit(dir.path() / "unknown.json", R"({"colour": "red"})");
  test_support::spit(dir.path() / "typed.json", R"({"max_ticks": "many"})");
  test_support::spit(dir.path() / "broken.json", "{");
  for (const char * name : {"unknown.json", "typed.json", "broken.json"}) {
    EXPECT_EQ(bmod_cli({"--config", dir.str(name), "check", corpus("corridor.bmod")}).code, cli::exit_usage) << name;
  }
  EXPECT_EQ(bmod_cli({"--config", dir.str("absent.json"), "check", corpus("corridor.bmod")}).code, cli::exit_io);
}

TEST(CliGeneral, HelpVersionAndUsageErrors)
{
  auto r = bmod_cli({"--help"});
  EXPECT_EQ(r.code, cli::exit_ok);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
  EXPECT_EQ(bmod_cli({"--version"}).code, cli::exit_ok);
  EXPECT_EQ(bmod_cli({}).code, cli::exit_usage);
  EXPECT_EQ(bmod_cli({"frobnicate"}).code, cli::exit_usage);
  EXPECT_EQ(bmod_cli({"check", "--bogus", corpus("corridor.bmod")}).code, cli::exit_usage);
  EXPECT_EQ(bmod_cli({"-q", "-v", "check", corpus("corridor.bmod")}).code, cli::exit_usage);
}

TEST(CliGeneral, WriteAtomicallyCreatesParents)
{
  test_support::TempDir dir;
  const auto path = dir.path() / "a" / "b" / "c.txt";
  cli::write_atomically(path.string(), "one");
  cli::write_atomically(path.string(), "two");
  EXPECT_EQ(test_support::slurp(path), "two");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto & e : fs::directory_iterator(path.parent_path())) {
    ++entries;
  }
  EXPECT_EQ(entries, 1u);
}

TEST(CliGeneral, QuietKeepsErrorsAndDropsWarnings)
{
  const auto locked = bmod_cli({"check", corpus("locked_in.bmod")});
  EXPECT_EQ(locked.code, cli::exit_ok);
  EXPECT_NE(locked.err.find("warning VAL_NO_EXIT"), std::string::npos);
  EXPECT_EQ(bmod_cli({"-q", "check", corpus("locked_in.bmod")}).err, "");

  const auto bad = (test_support::source_dir() / "tests" / "data" / "bad_door.bmod").string();
  const auto r = bmod_cli({"-q", "check", bad});
  EXPECT_EQ(r.code, cli::exit_semantic);
  EXPECT_NE(r.err.find("VAL_DOOR_SAME_ROOM"), std::string::npos);
}
