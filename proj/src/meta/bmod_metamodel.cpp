#include "bmod/meta/bmod_metamodel.hpp"

namespace bmod::meta
{

namespace
{

MetaAttribute attr(std::string name, ValueKind kind, std::optional<Literal> default_value = std::nullopt)
{
  MetaAttribute a;
  a.name = std::move(name);
  a.kind = kind;
  a.bounds = {1, 1};
  a.default_value = std::move(default_value);
  return a;
}

MetaReference contains(std::string name, std::string target)
{
  return MetaReference{std::move(name), std::move(target), true, {0, unbounded}};
}

}  // namespace

MetaModel build_bmod_metamodel()
{
  MetaModel mm("bmod");

  MetaClass floor{"Floor", false, std::nullopt, {}, {}, {}};
  floor.attributes.push_back(attr("name", ValueKind::string));
  floor.references.push_back(contains("rooms", "Room"));
  mm.add_class(std::move(floor));

  MetaClass room{"Room", false, std::nullopt, {}, {}, {}};
  room.attributes.push_back(attr("name", ValueKind::string));
  room.attributes.push_back(attr("width", ValueKind::integer));
  room.attributes.push_back(attr("height", ValueKind::integer));
  room.references.push_back(contains("cells", "Cell"));
  mm.add_class(std::move(room));

  MetaClass cell{"Cell", false, std::nullopt, {}, {}, {}};
  cell.attributes.push_back(attr("x", ValueKind::integer));
  cell.attributes.push_back(attr("y", ValueKind::integer));
  cell.attributes.push_back(attr("onFire", ValueKind::boolean, Literal{false}));
  cell.references.push_back(contains("people", "Person"));
  cell.references.push_back(contains("doors", "Door"));
  cell.references.push_back(contains("signs", "EMSign"));
  mm.add_class(std::move(cell));

  mm.add_class(MetaClass{"Wall", false, std::string("Cell"), {}, {}, {}});

  MetaClass door{"Door", false, std::nullopt, {}, {}, {}};
  door.attributes.push_back(attr("name", ValueKind::string));
  door.attributes.push_back(attr("locked", ValueKind::boolean, Literal{false}));
  door.attributes.push_back(attr("exit", ValueKind::boolean, Literal{false}));
  door.references.push_back(MetaReference{"targetRoom", "Room", false, {0, 1}});
  mm.add_class(std::move(door));

  MetaClass person{"Person", false, std::nullopt, {}, {}, {}};
  person.attributes.push_back(attr("name", ValueKind::string));
  person.attributes.push_back(attr("alive", ValueKind::boolean, Literal{true}));
  person.attributes.push_back(attr("evacuated", ValueKind::boolean, Literal{false}));
  mm.add_class(std::move(person));

  MetaClass sign{"EMSign", false, std::nullopt, {}, {}, {}};
  MetaAttribute direction = attr("direction", ValueKind::enumeration);
  direction.enum_literals = {"north", "south", "east", "west"};
  sign.attributes.push_back(std::move(direction));
  mm.add_class(std::move(sign));

  MetaClass navigation{"CellNavigationManager", false, std::nullopt, {}, {}, {}};
  navigation.operations = {
    {"neighbors", {"cell"}},
    {"distanceToExit", {"cell"}},
    {"nextCell", {"person"}},
  };
  mm.add_class(std::move(navigation));

  MetaClass simulation{"SimulationManager", false, std::nullopt, {}, {}, {}};
  simulation.attributes.push_back(attr("time", ValueKind::integer, Literal{std::int64_t{0}}));
  simulation.attributes.push_back(attr("paused", ValueKind::boolean, Literal{false}));
  simulation.operations = {
    {"step", {}},
    {"run", {"maxTicks"}},
    {"pause", {}},
    {"resume", {}},
  };
  mm.add_class(std::move(simulation));

  return mm;
}

std::shared_ptr<const MetaModel> bmod_metamodel()
{
  static const auto instance = std::make_shared<const MetaModel>(build_bmod_metamodel());
  return instance;
}

std::shared_ptr<const MetaModel> builtin_metamodel(std::string_view name)
{
  if (name == "bmod") {
    return bmod_metamodel();
  }
  return nullptr;
}

}  // namespace bmod::meta
