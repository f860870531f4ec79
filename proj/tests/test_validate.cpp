#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bmod/error.hpp"
#include "bmod/lang/parser.hpp"
#include "bmod/sim/simulator.hpp"
#include "bmod/validate/validator.hpp"
#include "support/files.hpp"
#include "support/generator.hpp"

using namespace bmod;
using bmod::validate::catalogue;
using bmod::validate::RuleInfo;
namespace rule = bmod::validate::rule;

namespace
{
Diagnostics check(const lang::Scenario & s) { return bmod::validate::validate(s); }
}  // namespace

namespace
{

lang::Scenario scenario(std::string_view text)
{
  auto r = lang::parse(text);
  EXPECT_TRUE(r.ok());
  return r.ok() ? *r.scenario : lang::Scenario{};
}

std::vector<std::string> codes(const Diagnostics & ds)
{
  std::vector<std::string> out;
  for (const auto & d : ds) out.push_back(d.code);
  return out;
}

std::size_t count(const Diagnostics & ds, std::string_view code)
{
  return static_cast<std::size_t>(std::count_if(ds.begin(), ds.end(), [&](const Diagnostic & d) { return d.code == code; }));
}

// Scenario with items dropped anywhere, including on walls and off-grid.
lang::Scenario scattered(std::mt19937_64 & rng)
{
  lang::Scenario s;
  lang::FloorDecl floor{"F", {}, {}};
  const int rooms = 1 + static_cast<int>(rng() % 3);
  for (int r = 0; r < rooms; ++r) {
    lang::RoomDecl room;
    room.name = "R" + std::to_string(r);
    room.width = 1 + static_cast<int>(rng() % 5);
    room.height = 1 + static_cast<int>(rng() % 5);
    const int items = static_cast<int>(rng() % 12);
    for (int i = 0; i < items; ++i) {
      lang::Item item;
      item.kind = static_cast<lang::ItemKind>(rng() % 5);
      item.at = {static_cast<std::int64_t>(rng() % 6), static_cast<std::int64_t>(rng() % 6)};
      item.name = (item.kind == lang::ItemKind::door ? "d" : "p") + std::to_string(rng() % 4);
      item.exit = rng() % 2 == 0;
      if (rng() % 3 == 0) item.target = "R" + std::to_string(rng() % 3);
      room.items.push_back(item);
    }
    floor.rooms.push_back(std::move(room));
  }
  s.floors.push_back(std::move(floor));
  return s;
}

}  // namespace

TEST(Validator, CatalogueIsComplete)
{
  std::vector<std::string> listed;
  for (const auto & rule : catalogue()) listed.emplace_back(rule.code);
  const std::vector<std::string> expected{"VAL_DUP_NAME",      "VAL_OOB_COORD", "VAL_ON_WALL",
                                          "VAL_DOOR_SAME_ROOM", "VAL_DOOR_UNPAIRED", "VAL_NO_EXIT",
                                          "VAL_EMPTY",          "VAL_OVERLAP_WALL_DOOR"};
  EXPECT_EQ(listed, expected);
  for (const auto & rule : catalogue()) {
    const bool warning = rule.code == rule::no_exit || rule.code == rule::empty;
    EXPECT_EQ(rule.severity, warning ? Severity::warning : Severity::error) << rule.code;
  }
}

TEST(Validator, DoorToOwnRoom)
{
  const auto ds = check(scenario(R"(floor "G" { room "A" 2 x 1 { door "d" at (0,0) to "A" door "e" at (1,0) exit } })"));
  EXPECT_EQ(codes(ds), std::vector<std::string>{"VAL_DOOR_SAME_ROOM"});
  EXPECT_EQ(ds[0].severity, Severity::error);
}

TEST(Validator, PersonOnWall)
{
  const auto ds =
    check(scenario(R"(floor "G" { room "A" 2 x 1 { wall at (0,0) person "p" at (0,0) door "e" at (1,0) exit } })"));
  EXPECT_EQ(codes(ds), std::vector<std::string>{"VAL_ON_WALL"});
}

TEST(Validator, NoExitIsAWarning)
{
  const auto ds = check(scenario(R"(floor "G" { room "A" 2 x 1 { person "p" at (0,0) } })"));
  EXPECT_EQ(codes(ds), std::vector<std::string>{"VAL_NO_EXIT"});
  EXPECT_EQ(ds[0].severity, Severity::warning);
  EXPECT_FALSE(has_errors(ds));
}

TEST(Validator, NoExitWhenTheOnlyPathIsWalledOff)
{
  const auto ds = check(
    scenario(R"(floor "G" { room "A" 3 x 1 { person "p" at (0,0) wall at (1,0) door "e" at (2,0) exit } })"));
  EXPECT_EQ(codes(ds), std::vector<std::string>{"VAL_NO_EXIT"});
}

TEST(Validator, OutOfBounds)
{
  const auto ds = check(scenario(R"(floor "G" { room "A" 3 x 1 { fire at (5,0) door "e" at (2,0) exit } })"));
  EXPECT_EQ(codes(ds), std::vector<std::string>{"VAL_OOB_COORD"});
}

TEST(Validator, UnpairedDoor)
{
  const auto ds = check(scenario(R"(floor "G" {
    room "A" 2 x 1 { door "d" at (0,0) to "B" door "e" at (1,0) exit }
    room "B" 2 x 1 { door "other" at (0,0) to "A" }
  })"));
  EXPECT_EQ(count(ds, rule::door_unpaired), 2u);
  EXPECT_TRUE(has_errors(ds));
}

TEST(Validator, DuplicateNames)
{
  const auto ds = check(scenario(R"(floor "G" {
    room "A" 3 x 1 { person "p" at (0,0) person "p" at (1,0) door "e" at (2,0) exit }
    room "A" 1 x 1 { }
  })"));
  EXPECT_EQ(count(ds, rule::dup_name), 2u);
}

TEST(Validator, DoorOnWall)
{
  const auto ds = check(scenario(R"(floor "G" { room "A" 1 x 1 { wall at (0,0) door "e" at (0,0) exit } })"));
  EXPECT_EQ(count(ds, rule::overlap_wall_door), 1u);
}

TEST(Validator, EmptyScenarioAndFloor)
{
  EXPECT_EQ(codes(check(scenario(""))), std::vector<std::string>{"VAL_EMPTY"});
  EXPECT_EQ(codes(check(scenario(R"(floor "G" { })"))), std::vector<std::string>{"VAL_EMPTY"});
}

TEST(Validator, WellFormedCorpusScenariosAreClean)
{
  for (const char * name : {"two_rooms.bmod", "corridor.bmod", "office_tower.bmod", "center_fire.bmod"}) {
    const auto text = test_support::slurp(test_support::source_dir() / "corpus" / name);
    EXPECT_TRUE(check(scenario(text)).empty()) << name;
  }
}

TEST(Validator, OrderedByFloorRoomRowColumnCode)
{
  const auto ds = check(scenario(R"(floor "G" {
    room "A" 3 x 2 { person "p" at (9,9) wall at (0,1) fire at (0,1) wall at (2,0) person "q" at (2,0) }
    room "B" 1 x 1 { fire at (3,3) }
  })"));
  ASSERT_GE(ds.size(), 4u);
  EXPECT_EQ(codes(ds),
            (std::vector<std::string>{"VAL_ON_WALL", "VAL_ON_WALL", "VAL_OOB_COORD", "VAL_OOB_COORD"}));
}

TEST(Validator, PureAndDeterministic)
{
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto s = scattered(rng);
    EXPECT_EQ(check(s), check(s));
    for (const auto & d : check(s)) {
      const auto & cat = catalogue();
      EXPECT_TRUE(std::any_of(cat.begin(), cat.end(), [&](const RuleInfo & r) { return r.code == d.code; }));
    }
  }
}

TEST(Validator, RemovingWallsRemovesOnWallFindings)
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto s = scattered(rng);
    for (auto & room : s.floors[0].rooms) {
      std::erase_if(room.items, [](const lang::Item & it) { return it.kind == lang::ItemKind::wall; });
    }
    EXPECT_EQ(count(check(s), rule::on_wall), 0u);
    EXPECT_EQ(count(check(s), rule::overlap_wall_door), 0u);
  }
}

TEST(Validator, ErrorFreeScenariosInitialize)
{
  std::mt19937_64 rng(13);
  int clean = 0;
  for (int i = 0; i < 400; ++i) {
    const auto s = i % 2 == 0 ? scattered(rng) : test_support::random_scenario(rng);
    if (has_errors(check(s))) {
      EXPECT_THROW(sim::init(s, {}), Error);
      continue;
    }
    ++clean;
    EXPECT_NO_THROW(sim::init(s, {}));
  }
  EXPECT_GT(clean, 200);
}

TEST(Validator, GeneratorProducesValidScenarios)
{
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto ds = check(test_support::random_scenario(rng));
    EXPECT_FALSE(has_errors(ds)) << (ds.empty() ? "" : ds.front().message);
  }
}
