#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlim/weighted_graph.hpp"

namespace graphlim {

// One labeled observation: a set of named weighted graphs over the same
// nodes (e.g. one graph per measurement modality).
struct DatasetItem {
  std::string id;
  int label = 0;  // binary, {0, 1}
  std::map<std::string, WeightedGraph> channels;
};

struct Dataset {
  std::vector<DatasetItem> items;

  int size() const { return static_cast<int>(items.size()); }

  std::vector<std::string> channel_names() const {
    std::vector<std::string> names;
    if (items.empty()) return names;
    for (const auto& [name, g] : items.front().channels) names.push_back(name);
    return names;
  }

  std::vector<int> labels() const {
    std::vector<int> y(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) y[i] = items[i].label;
    return y;
  }

  // Checks the cross-item invariants: two label values at most, identical
  // channel sets, and per-channel consistent node counts.
  void validate() const {
    if (items.empty()) throw std::invalid_argument("dataset: no items");
    const std::vector<std::string> names = channel_names();
    if (names.empty()) throw std::invalid_argument("dataset: items carry no channels");
    for (const auto& item : items) {
      if (item.label != 0 && item.label != 1) {
        throw std::invalid_argument("dataset: item '" + item.id + "' has label " +
                                    std::to_string(item.label) + ", expected 0 or 1");
      }
      if (item.channels.size() != names.size()) {
        throw std::invalid_argument("dataset: item '" + item.id +
                                    "' has an inconsistent channel set");
      }
      for (const auto& name : names) {
        if (item.channels.find(name) == item.channels.end()) {
          throw std::invalid_argument("dataset: item '" + item.id + "' is missing channel '" +
                                      name + "'");
        }
      }
    }
    for (const auto& name : names) {
      const int k = items.front().channels.at(name).size();
      for (const auto& item : items) {
        if (item.channels.at(name).size() != k) {
          throw std::invalid_argument("dataset: channel '" + name +
                                      "' has mixed node counts (item '" + item.id + "')");
        }
      }
    }
  }
};

}  // namespace graphlim
