#include "bmod/meta/model.hpp"

#include <algorithm>
#include <unordered_set>

#include "bmod/error.hpp"

namespace bmod::meta
{

namespace
{

Value to_value(const Literal & literal)
{
  return std::visit([](const auto & v) -> Value { return v; }, literal);
}

std::optional<Literal> to_literal(const Value & value)
{
  if (const auto * b = std::get_if<bool>(&value)) return Literal{*b};
  if (const auto * i = std::get_if<std::int64_t>(&value)) return Literal{*i};
  if (const auto * s = std::get_if<std::string>(&value)) return Literal{*s};
  return std::nullopt;
}

}  // namespace

std::string value_to_string(const Value & value)
{
  if (const auto * ref = std::get_if<ObjectRef>(&value)) {
    return "@" + ref->id;
  }
  return literal_to_string(*to_literal(value));
}

Model::Model(std::shared_ptr<const MetaModel> metamodel) : metamodel_(std::move(metamodel)) {}

const ModelObject * Model::find(std::string_view object_id) const noexcept
{
  auto it = index_.find(std::string(object_id));
  return it == index_.end() ? nullptr : &objects_[it->second];
}

ModelObject * Model::lookup(std::string_view object_id) noexcept
{
  auto it = index_.find(std::string(object_id));
  return it == index_.end() ? nullptr : &objects_[it->second];
}

ModelObject * Model::find_mutable(std::string_view object_id) noexcept
{
  container_index_dirty_ = true;
  return lookup(object_id);
}

ModelObject & Model::require(std::string_view object_id)
{
  if (auto * object = lookup(object_id)) {
    return *object;
  }
  throw Error(ErrorKind::unknown_object, "no object with id '" + std::string(object_id) + "'");
}

const ModelObject & Model::require(std::string_view object_id) const
{
  if (const auto * object = find(object_id)) {
    return *object;
  }
  throw Error(ErrorKind::unknown_object, "no object with id '" + std::string(object_id) + "'");
}

ModelObject & Model::insert_raw(ModelObject object)
{
  for (const auto & [name, ids] : object.references) {
    if (!ids.empty()) {
      container_index_dirty_ = true;
    }
  }
  index_[object.id] = objects_.size();
  objects_.push_back(std::move(object));
  return objects_.back();
}

const ModelObject & Model::instantiate(std::string_view class_name)
{
  const MetaClass * cls = metamodel_->find_class(class_name);
  if (cls == nullptr) {
    throw Error(ErrorKind::unknown_class, "unknown class '" + std::string(class_name) + "'");
  }
  if (cls->is_abstract) {
    throw Error(ErrorKind::abstract_class, "class '" + cls->name + "' is abstract");
  }

  std::string id;
  do {
    id = cls->name + "#" + std::to_string(next_id_++);
  } while (find(id) != nullptr);

  ChangeEvent event = record(ChangeKind::create, id, "", {}, {Value{cls->name}});
  apply(event);
  return objects_.back();
}

void Model::check_values(const ModelObject & object, const FeatureRef & feature, const ValueList & values) const
{
  const std::string where = object.id + "." + (feature.attribute ? feature.attribute->name : feature.reference->name);
  const Multiplicity & bounds = feature.attribute ? feature.attribute->bounds : feature.reference->bounds;
  if (bounds.upper != unbounded && values.size() > static_cast<std::size_t>(bounds.upper)) {
    throw Error(ErrorKind::upper_bound_exceeded,
                where + " holds at most " + std::to_string(bounds.upper) + " value(s)");
  }

  for (const auto & value : values) {
    if (feature.attribute != nullptr) {
      auto literal = to_literal(value);
      if (!literal || !feature.attribute->accepts(*literal)) {
        throw Error(ErrorKind::type_mismatch, where + " expects " +
                                                std::string(to_string(feature.attribute->kind)) +
                                                ", got " + value_to_string(value));
      }
      continue;
    }
    const auto * ref = std::get_if<ObjectRef>(&value);
    if (ref == nullptr) {
      throw Error(ErrorKind::type_mismatch, where + " expects an object reference, got " + value_to_string(value));
    }
    const ModelObject * target = find(ref->id);
    if (target == nullptr) {
      throw Error(ErrorKind::unknown_object, where + " references unknown object '" + ref->id + "'");
    }
    if (!metamodel_->is_kind_of(target->class_name, feature.reference->target)) {
      throw Error(ErrorKind::type_mismatch,
                  where + " expects " + feature.reference->target + ", got " + target->class_name);
    }
  }
}

void Model::rebuild_container_index() const
{
  container_index_.clear();
  for (const auto & candidate : objects_) {
    const MetaClass * cls = metamodel_->find_class(candidate.class_name);
    if (cls == nullptr) {
      continue;
    }
    for (const auto & [name, ids] : candidate.references) {
      auto feature = metamodel_->find_feature(*cls, name);
      if (feature.reference == nullptr || !feature.reference->containment) {
        continue;
      }
      for (const auto & id : ids) {
        container_index_.emplace(id, candidate.id);
      }
    }
  }
  container_index_dirty_ = false;
}

std::optional<std::string> Model::container_of(std::string_view object_id) const
{
  if (container_index_dirty_) {
    rebuild_container_index();
  }
  auto it = container_index_.find(std::string(object_id));
  if (it == container_index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

void Model::check_containment(const ModelObject & parent, const ValueList & old_values, const ValueList & values) const
{
  std::unordered_set<std::string> seen;
  std::unordered_set<std::string> previous;
  for (const auto & value : old_values) {
    previous.insert(std::get<ObjectRef>(value).id);
  }
  for (const auto & value : values) {
    const auto & child = std::get<ObjectRef>(value).id;
    if (!seen.insert(child).second) {
      throw Error(ErrorKind::containment_violation, "'" + child + "' listed twice in a containment slot");
    }
    if (previous.count(child) != 0) {
      continue;
    }
    if (auto holder = container_of(child)) {
      throw Error(ErrorKind::containment_violation,
                  "'" + child + "' is already contained by '" + *holder + "'");
    }
    // The new child must not be the parent or one of its ancestors.
    std::optional<std::string> cur = parent.id;
    for (std::size_t guard = 0; cur && guard <= objects_.size(); ++guard) {
      if (*cur == child) {
        throw Error(ErrorKind::containment_violation,
                    "containing '" + child + "' under '" + parent.id + "' would create a cycle");
      }
      cur = container_of(*cur);
    }
  }
}

ChangeEvent Model::set_feature(std::string_view object_id, std::string_view feature, ValueList values)
{
  ModelObject & object = require(object_id);
  const MetaClass * cls = metamodel_->find_class(object.class_name);
  if (cls == nullptr) {
    throw Error(ErrorKind::unknown_class, "unknown class '" + object.class_name + "'");
  }
  FeatureRef ref = metamodel_->find_feature(*cls, feature);
  if (!ref) {
    throw Error(ErrorKind::unknown_feature,
                "class '" + cls->name + "' has no feature '" + std::string(feature) + "'");
  }
  check_values(object, ref, values);
  ValueList old_values = get_feature(object_id, feature);
  if (ref.reference != nullptr && ref.reference->containment) {
    check_containment(object, old_values, values);
  }
  ChangeEvent event = record(ChangeKind::set, object.id, std::string(feature), std::move(old_values), std::move(values));
  apply(event);
  return event;
}

ChangeEvent Model::set_feature(std::string_view object_id, std::string_view feature, Value value)
{
  return set_feature(object_id, feature, ValueList{std::move(value)});
}

ChangeEvent Model::add_feature(std::string_view object_id, std::string_view feature, Value value)
{
  ValueList values = get_feature(object_id, feature);
  values.push_back(std::move(value));
  return set_feature(object_id, feature, std::move(values));
}

ValueList Model::get_feature(std::string_view object_id, std::string_view feature) const
{
  const ModelObject & object = require(object_id);
  const MetaClass * cls = metamodel_->find_class(object.class_name);
  FeatureRef ref = cls ? metamodel_->find_feature(*cls, feature) : FeatureRef{};
  if (!ref) {
    throw Error(ErrorKind::unknown_feature,
                "class '" + object.class_name + "' has no feature '" + std::string(feature) + "'");
  }
  ValueList out;
  if (ref.attribute != nullptr) {
    if (auto it = object.attributes.find(feature); it != object.attributes.end()) {
      for (const auto & literal : it->second) {
        out.push_back(to_value(literal));
      }
    }
  } else if (auto it = object.references.find(feature); it != object.references.end()) {
    for (const auto & id : it->second) {
      out.push_back(ObjectRef{id});
    }
  }
  return out;
}

ChangeEvent Model::record(ChangeKind kind, std::string object_id, std::string feature, ValueList old_value,
                          ValueList new_value)
{
  ChangeEvent event{next_sequence_++, kind, std::move(object_id), std::move(feature), std::move(old_value),
                    std::move(new_value)};
  log_.push_back(event);
  return event;
}

void Model::write_slot(ModelObject & object, std::string_view feature, const ValueList & values)
{
  const MetaClass * cls = metamodel_->find_class(object.class_name);
  FeatureRef ref = cls ? metamodel_->find_feature(*cls, feature) : FeatureRef{};
  if (ref.reference != nullptr) {
    auto & slot = object.references[std::string(feature)];
    if (ref.reference->containment && !container_index_dirty_) {
      for (const auto & id : slot) {
        auto it = container_index_.find(id);
        if (it != container_index_.end() && it->second == object.id) {
          container_index_.erase(it);
        }
      }
    }
    slot.clear();
    for (const auto & v : values) {
      slot.push_back(std::get<ObjectRef>(v).id);
      if (ref.reference->containment && !container_index_dirty_) {
        container_index_.emplace(slot.back(), object.id);
      }
    }
    return;
  }
  auto & slot = object.attributes[std::string(feature)];
  slot.clear();
  for (const auto & v : values) {
    slot.push_back(*to_literal(v));
  }
}

void Model::apply(const ChangeEvent & event)
{
  if (event.kind == ChangeKind::create) {
    const auto & class_name = std::get<std::string>(event.new_value.at(0));
    const MetaClass * cls = metamodel_->find_class(class_name);
    ModelObject object{event.object_id, class_name, {}, {}};
    if (cls != nullptr) {
      for (const MetaAttribute * a : metamodel_->all_attributes(*cls)) {
        auto & slot = object.attributes[a->name];
        if (a->default_value) {
          slot.push_back(*a->default_value);
        }
      }
      for (const MetaReference * r : metamodel_->all_references(*cls)) {
        object.references[r->name];
      }
    }
    insert_raw(std::move(object));
  } else {
    write_slot(require(event.object_id), event.feature, event.new_value);
  }
  next_sequence_ = std::max(next_sequence_, event.sequence + 1);
}

bool Model::same_state(const Model & other) const { return objects_ == other.objects_; }

Model replay(const Model & initial, const std::vector<ChangeEvent> & log)
{
  Model out = initial;
  for (const auto & event : log) {
    out.apply(event);
  }
  return out;
}

}  // namespace bmod::meta
