#include "bmod/meta/conformance.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace bmod::meta
{

namespace
{

Diagnostic finding(std::string_view code, const std::string & object, std::string message)
{
  return Diagnostic{Severity::error, std::string(code), std::move(message), object, {}, false};
}

/// Objects lying on a containment cycle (members of a non-trivial strongly
/// connected component, or with a self edge). Iterative Tarjan.
std::vector<std::size_t> cycle_members(const std::vector<std::vector<std::size_t>> & edges)
{
  const std::size_t n = edges.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> members;
  std::size_t counter = 0;

  struct Frame
  {
    std::size_t node;
    std::size_t next_edge;
  };

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) {
      continue;
    }
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame & f = frames.back();
      if (f.next_edge < edges[f.node].size()) {
        std::size_t to = edges[f.node][f.next_edge++];
        if (index[to] == unvisited) {
          index[to] = low[to] = counter++;
          stack.push_back(to);
          on_stack[to] = true;
          frames.push_back({to, 0});
        } else if (on_stack[to]) {
          low[f.node] = std::min(low[f.node], index[to]);
        }
        continue;
      }

      const std::size_t node = f.node;
      frames.pop_back();
      if (!frames.empty()) {
        low[frames.back().node] = std::min(low[frames.back().node], low[node]);
      }
      if (low[node] != index[node]) {
        continue;
      }
      std::vector<std::size_t> component;
      std::size_t w = 0;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != node);
      const bool self_loop =
        std::find(edges[node].begin(), edges[node].end(), node) != edges[node].end();
      if (component.size() > 1 || self_loop) {
        members.insert(members.end(), component.begin(), component.end());
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

Diagnostics check_conformance(const Model & model, const MetaModel & mm)
{
  Diagnostics out;
  const auto & objects = model.objects();

  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!position.emplace(objects[i].id, i).second) {
      out.push_back(finding(conf::duplicate_id, objects[i].id, "object id '" + objects[i].id + "' is not unique"));
    }
  }

  std::vector<std::vector<std::size_t>> containment(objects.size());
  std::vector<std::size_t> container_count(objects.size(), 0);

  for (std::size_t i = 0; i < objects.size(); ++i) {
    const ModelObject & object = objects[i];
    const MetaClass * cls = mm.find_class(object.class_name);
    if (cls == nullptr) {
      out.push_back(finding(conf::unknown_class, object.id, "unknown class '" + object.class_name + "'"));
      continue;
    }
    if (cls->is_abstract) {
      out.push_back(finding(conf::abstract_class, object.id, "instance of abstract class '" + cls->name + "'"));
    }

    for (const auto & [name, values] : object.attributes) {
      FeatureRef feature = mm.find_feature(*cls, name);
      if (feature.attribute == nullptr) {
        out.push_back(finding(feature ? conf::type_mismatch : conf::unknown_feature, object.id,
                              "'" + name + "' is not an attribute of " + cls->name));
        continue;
      }
      for (const auto & literal : values) {
        if (!feature.attribute->accepts(literal)) {
          out.push_back(finding(conf::type_mismatch, object.id,
                                "'" + name + "' expects " + std::string(to_string(feature.attribute->kind)) +
                                  ", got " + literal_to_string(literal)));
        }
      }
    }

    for (const auto & [name, ids] : object.references) {
      FeatureRef feature = mm.find_feature(*cls, name);
      if (feature.reference == nullptr) {
        out.push_back(finding(feature ? conf::type_mismatch : conf::unknown_feature, object.id,
                              "'" + name + "' is not a reference of " + cls->name));
        continue;
      }
      for (const auto & id : ids) {
        auto it = position.find(id);
        if (it == position.end()) {
          out.push_back(finding(conf::dangling_ref, object.id, "'" + name + "' refers to missing object '" + id + "'"));
          continue;
        }
        const ModelObject & target = objects[it->second];
        if (!mm.is_kind_of(target.class_name, feature.reference->target)) {
          out.push_back(finding(conf::target_class, object.id,
                                "'" + name + "' expects " + feature.reference->target + ", got " +
                                  target.class_name + " '" + id + "'"));
        }
        if (feature.reference->containment) {
          containment[i].push_back(it->second);
          ++container_count[it->second];
        }
      }
    }

    auto slot_size = [&](const std::string & name, bool attribute) -> std::size_t {
      if (attribute) {
        auto it = object.attributes.find(name);
        return it == object.attributes.end() ? 0 : it->second.size();
      }
      auto it = object.references.find(name);
      return it == object.references.end() ? 0 : it->second.size();
    };
    auto check_bounds = [&](const std::string & name, const Multiplicity & bounds, bool attribute) {
      const std::size_t count = slot_size(name, attribute);
      if (count < static_cast<std::size_t>(bounds.lower)) {
        out.push_back(finding(conf::lower_bound, object.id,
                              "'" + name + "' needs at least " + std::to_string(bounds.lower) + " value(s), has " +
                                std::to_string(count)));
      } else if (bounds.upper != unbounded && count > static_cast<std::size_t>(bounds.upper)) {
        out.push_back(finding(conf::upper_bound, object.id,
                              "'" + name + "' allows at most " + std::to_string(bounds.upper) + " value(s), has " +
                                std::to_string(count)));
      }
    };
    for (const MetaAttribute * a : mm.all_attributes(*cls)) {
      check_bounds(a->name, a->bounds, true);
    }
    for (const MetaReference * r : mm.all_references(*cls)) {
      check_bounds(r->name, r->bounds, false);
    }
  }

  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (container_count[i] > 1) {
      out.push_back(finding(conf::multiple_containers, objects[i].id,
                            "object is contained " + std::to_string(container_count[i]) + " times"));
    }
  }
  for (std::size_t member : cycle_members(containment)) {
    out.push_back(finding(conf::containment_cycle, objects[member].id, "object lies on a containment cycle"));
  }
  return out;
}

}  // namespace bmod::meta
