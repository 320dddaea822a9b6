#pragma once

#include <initializer_list>
#include <vector>

#include "chipfire/errors.hpp"

namespace chipfire {

/// Subset of the vertex range 0..n-1 of a fixed graph.
class VertexSet {
 public:
  explicit VertexSet(int universe) : in_(check_universe(universe), 0) {}

  VertexSet(int universe, std::initializer_list<int> members)
      : VertexSet(universe) {
    for (int v : members) add(v);
  }

  static VertexSet all(int universe) {
    VertexSet s(universe);
    s.in_.assign(static_cast<std::size_t>(universe), 1);
    s.count_ = universe;
    return s;
  }

  int universe() const { return static_cast<int>(in_.size()); }
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(int v) const {
    check_vertex(v);
    return in_[static_cast<std::size_t>(v)] != 0;
  }

  void add(int v) {
    check_vertex(v);
    if (!in_[static_cast<std::size_t>(v)]) {
      in_[static_cast<std::size_t>(v)] = 1;
      ++count_;
    }
  }

  void remove(int v) {
    check_vertex(v);
    if (in_[static_cast<std::size_t>(v)]) {
      in_[static_cast<std::size_t>(v)] = 0;
      --count_;
    }
  }

  VertexSet complement() const {
    VertexSet s(universe());
    for (int v = 0; v < universe(); ++v)
      s.in_[static_cast<std::size_t>(v)] = in_[static_cast<std::size_t>(v)] ? 0 : 1;
    s.count_ = universe() - count_;
    return s;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count_));
    for (int v = 0; v < universe(); ++v)
      if (in_[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
  }

  bool operator==(const VertexSet&) const = default;

 private:
  static int check_universe(int universe) {
    if (universe < 0) throw domain_error("vertex set universe must be >= 0");
    return universe;
  }

  void check_vertex(int v) const {
    if (v < 0 || v >= universe())
      throw domain_error("vertex index out of range");
  }

  std::vector<char> in_;
  int count_ = 0;
};

}  // namespace chipfire
