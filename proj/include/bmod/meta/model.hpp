#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "bmod/meta/metamodel.hpp"

namespace bmod::meta
{

/// Reference slot entry: the id of the referenced object.
struct ObjectRef
{
  std::string id;

  friend bool operator==(const ObjectRef &, const ObjectRef &) = default;
  friend auto operator<=>(const ObjectRef &, const ObjectRef &) = default;
};

/// A single slot entry: an attribute literal or an object reference.
using Value = std::variant<bool, std::int64_t, std::string, ObjectRef>;
using ValueList = std::vector<Value>;

std::string value_to_string(const Value & value);

struct ModelObject
{
  std::string id;
  std::string class_name;
  std::map<std::string, std::vector<Literal>, std::less<>> attributes;
  std::map<std::string, std::vector<std::string>, std::less<>> references;

  friend bool operator==(const ModelObject &, const ModelObject &) = default;
};

enum class ChangeKind { create, set };

/// One entry of a model's change log. `create` events carry the class name as
/// the single new value and an empty feature.
struct ChangeEvent
{
  std::uint64_t sequence = 0;
  ChangeKind kind = ChangeKind::set;
  std::string object_id;
  std::string feature;
  ValueList old_value;
  ValueList new_value;

  friend bool operator==(const ChangeEvent &, const ChangeEvent &) = default;
};

/// Reflective object store over a shared, immutable metamodel.
///
/// Every mutation goes through `instantiate`, `set_feature` or `add_feature`
/// and appends exactly one ChangeEvent. Single writer; copies are independent.
class Model
{
public:
  explicit Model(std::shared_ptr<const MetaModel> metamodel);

  [[nodiscard]] const MetaModel & metamodel() const noexcept { return *metamodel_; }
  [[nodiscard]] const std::shared_ptr<const MetaModel> & metamodel_ptr() const noexcept
  {
    return metamodel_;
  }

  /// Creates an object with a fresh id ("<Class>#<n>") and default slots.
  /// Throws unknown_class or abstract_class.
  const ModelObject & instantiate(std::string_view class_name);

  /// Replaces the whole slot. Attributes take literals, references take
  /// ObjectRefs. Throws unknown_object, unknown_feature, type_mismatch,
  /// upper_bound_exceeded or containment_violation.
  ChangeEvent set_feature(std::string_view object_id, std::string_view feature, ValueList values);
  ChangeEvent set_feature(std::string_view object_id, std::string_view feature, Value value);

  /// Appends one value to the slot.
  ChangeEvent add_feature(std::string_view object_id, std::string_view feature, Value value);

  /// Slot contents; no event is emitted. Throws unknown_object/unknown_feature.
  [[nodiscard]] ValueList get_feature(std::string_view object_id, std::string_view feature) const;

  [[nodiscard]] const ModelObject * find(std::string_view object_id) const noexcept;
  [[nodiscard]] const std::vector<ModelObject> & objects() const noexcept { return objects_; }
  [[nodiscard]] const std::vector<ChangeEvent> & change_log() const noexcept { return log_; }

  /// Id of the object holding `object_id` in a containment slot, if any.
  [[nodiscard]] std::optional<std::string> container_of(std::string_view object_id) const;

  /// Applies a recorded event without validation. Used for log replay.
  void apply(const ChangeEvent & event);

  /// Raw object insertion bypassing all checks; for loaders and for tests that
  /// need to build non-conforming models. Appends no event.
  ModelObject & insert_raw(ModelObject object);
  /// Raw mutable access, same caveats as insert_raw.
  ModelObject * find_mutable(std::string_view object_id) noexcept;

  /// Same objects in the same order (logs and counters are ignored).
  [[nodiscard]] bool same_state(const Model & other) const;

private:
  ModelObject * lookup(std::string_view object_id) noexcept;
  ModelObject & require(std::string_view object_id);
  void rebuild_container_index() const;
  [[nodiscard]] const ModelObject & require(std::string_view object_id) const;
  void check_values(const ModelObject & object, const FeatureRef & feature, const ValueList & values) const;
  void check_containment(const ModelObject & parent, const ValueList & old_values, const ValueList & values) const;
  ChangeEvent record(ChangeKind kind, std::string object_id, std::string feature, ValueList old_value,
                     ValueList new_value);
  void write_slot(ModelObject & object, std::string_view feature, const ValueList & values);

  std::shared_ptr<const MetaModel> metamodel_;
  std::vector<ModelObject> objects_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<ChangeEvent> log_;
  // child id -> container id; rebuilt lazily after raw edits
  mutable std::unordered_map<std::string, std::string> container_index_;
  mutable bool container_index_dirty_ = false;
  std::uint64_t next_sequence_ = 1;
  std::uint64_t next_id_ = 1;
};

/// Rebuilds a model by replaying `log` onto a copy of `initial`.
Model replay(const Model & initial, const std::vector<ChangeEvent> & log);

}  // namespace bmod::meta
