#pragma once
#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ksys/numeric.hpp"

namespace ksys {

using EdgeId = int;
using FaceId = int;

// One side of a face: traverses `edge` forward (dir=+1) or backward (dir=-1).
struct Slot {
  EdgeId edge = -1;
  int dir = +1;
  bool operator==(const Slot&) const = default;
};

// An occurrence of an edge on a face boundary.
struct Dart {
  FaceId face = -1;
  int pos = -1;
  bool operator==(const Dart&) const = default;
  auto operator<=>(const Dart&) const = default;
};

struct EdgeInfo {
  std::vector<Dart> darts;  // 1 (boundary) or 2 (interior)
  bool boundary = false;
};

// A closed oriented surface (or one with boundary circles left by cutting),
// given as polygonal faces glued along paired edge slots. Faces are stored
// with counterclockwise boundary walks; construction normalizes orientation
// and rejects non-surface or non-orientable gluings. Instances are immutable
// after construction; surgery returns new surfaces sharing the id space.
class CombinatorialSurface {
 public:
  CombinatorialSurface() = default;

  // `boundary_edges`: edges that carry a boundary mark (must be exactly the
  // edges used by a single slot).
  static CombinatorialSurface build(std::map<FaceId, std::vector<Slot>> faces,
                                    std::set<EdgeId> boundary_edges = {},
                                    int next_face_id = -1, int next_edge_id = -1) {
    CombinatorialSurface s;
    s.faces_ = std::move(faces);
    require(!s.faces_.empty(), "surface: empty face list");
    for (auto& [f, sides] : s.faces_) require(!sides.empty(), "surface: empty face");
    s.index_edges(boundary_edges);
    s.normalize_orientation();
    s.index_edges(boundary_edges);  // darts moved by flips
    s.compute_vertices();
    s.compute_components();
    s.compute_boundary_circles();
    s.next_face_id_ = next_face_id >= 0 ? next_face_id : s.max_face_id() + 1;
    s.next_edge_id_ = next_edge_id >= 0 ? next_edge_id : s.max_edge_id() + 1;
    return s;
  }

  const std::map<FaceId, std::vector<Slot>>& faces() const { return faces_; }
  const std::map<EdgeId, EdgeInfo>& edges() const { return edges_; }

  const std::vector<Slot>& face_sides(FaceId f) const {
    auto it = faces_.find(f);
    require(it != faces_.end(), "surface: unknown face " + std::to_string(f));
    return it->second;
  }
  const EdgeInfo& edge(EdgeId e) const {
    auto it = edges_.find(e);
    require(it != edges_.end(), "surface: unknown edge " + std::to_string(e));
    return it->second;
  }
  bool has_face(FaceId f) const { return faces_.count(f) > 0; }

  Slot slot_at(Dart d) const { return face_sides(d.face)[d.pos]; }
  int face_degree(FaceId f) const { return static_cast<int>(face_sides(f).size()); }

  std::optional<Dart> twin(Dart d) const {
    const auto& info = edge(slot_at(d).edge);
    if (info.darts.size() < 2) return std::nullopt;
    return info.darts[0] == d ? info.darts[1] : info.darts[0];
  }
  Dart next(Dart d) const { return {d.face, (d.pos + 1) % face_degree(d.face)}; }
  Dart prev(Dart d) const {
    int n = face_degree(d.face);
    return {d.face, (d.pos + n - 1) % n};
  }

  // Canonical dart of an edge: darts[0]. A curve crossing with dir=+1 passes
  // from the side of darts[0] into the side of darts[1].
  Dart dart0(EdgeId e) const { return edge(e).darts[0]; }
  Dart dart1(EdgeId e) const {
    const auto& info = edge(e);
    require(info.darts.size() == 2, "edge " + std::to_string(e) + " is boundary");
    return info.darts[1];
  }

  // --- derived topology ---

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int euler_characteristic() const { return vertex_count_ - edge_count() + face_count(); }

  int component_count() const { return static_cast<int>(component_faces_.size()); }
  int component_of_face(FaceId f) const { return component_of_.at(f); }
  const std::vector<std::vector<FaceId>>& component_faces() const { return component_faces_; }

  // Boundary circles, each a cyclic list of boundary darts.
  const std::vector<std::vector<Dart>>& boundary_circles() const { return boundary_circles_; }
  int boundary_count() const { return static_cast<int>(boundary_circles_.size()); }

  struct ComponentInfo {
    int euler = 0;
    int boundaries = 0;
    int genus = 0;
    std::vector<FaceId> faces;
  };
  std::vector<ComponentInfo> components() const {
    std::vector<ComponentInfo> out(component_faces_.size());
    for (size_t c = 0; c < component_faces_.size(); ++c) {
      auto& ci = out[c];
      ci.faces = component_faces_[c];
      std::set<EdgeId> es;
      std::set<int> vs;
      for (FaceId f : ci.faces) {
        const auto& sides = faces_.at(f);
        for (int i = 0; i < static_cast<int>(sides.size()); ++i) {
          es.insert(sides[i].edge);
          vs.insert(corner_vertex(Dart{f, i}));
        }
      }
      ci.euler = static_cast<int>(vs.size()) - static_cast<int>(es.size()) +
                 static_cast<int>(ci.faces.size());
      for (const auto& circ : boundary_circles_)
        if (component_of_.at(circ.front().face) == static_cast<int>(c)) ci.boundaries++;
      int twice_genus = 2 - ci.euler - ci.boundaries;
      require(twice_genus >= 0 && twice_genus % 2 == 0,
              "surface: inconsistent genus data (internal corruption)");
      ci.genus = twice_genus / 2;
    }
    return out;
  }

  // Genus of a connected surface.
  int genus() const {
    require(component_count() == 1, "genus: surface not connected");
    return components()[0].genus;
  }

  // Vertex class id at the corner where slot d.pos begins.
  int corner_vertex(Dart d) const { return vertex_of_corner_.at(corner_key(d)); }

  // --- labels ---
  void set_face_label(const std::string& key, FaceId f) { face_labels_[key].insert(f); }
  const std::set<FaceId>& faces_with_label(const std::string& key) const {
    static const std::set<FaceId> kEmpty;
    auto it = face_labels_.find(key);
    return it == face_labels_.end() ? kEmpty : it->second;
  }
  const std::map<std::string, std::set<FaceId>>& face_labels() const { return face_labels_; }
  std::map<std::string, std::set<FaceId>>& mutable_face_labels() { return face_labels_; }

  int next_face_id() const { return next_face_id_; }
  int next_edge_id() const { return next_edge_id_; }

  // Structural equality (cells and labels; used by determinism tests).
  bool same_cells(const CombinatorialSurface& o) const {
    return faces_ == o.faces_ && boundary_edge_set() == o.boundary_edge_set() &&
           face_labels_ == o.face_labels_;
  }

  std::set<EdgeId> boundary_edge_set() const {
    std::set<EdgeId> out;
    for (const auto& [e, info] : edges_)
      if (info.boundary) out.insert(e);
    return out;
  }

 private:
  int max_face_id() const { return faces_.empty() ? -1 : faces_.rbegin()->first; }
  int max_edge_id() const { return edges_.empty() ? -1 : edges_.rbegin()->first; }

  long corner_key(Dart d) const { return static_cast<long>(d.face) * 1000003L + d.pos; }

  void index_edges(const std::set<EdgeId>& boundary_edges) {
    edges_.clear();
    for (const auto& [f, sides] : faces_) {
      for (int i = 0; i < static_cast<int>(sides.size()); ++i) {
        require(sides[i].dir == 1 || sides[i].dir == -1, "surface: slot dir must be +-1");
        edges_[sides[i].edge].darts.push_back({f, i});
      }
    }
    for (auto& [e, info] : edges_) {
      std::sort(info.darts.begin(), info.darts.end());
      info.boundary = boundary_edges.count(e) > 0;
      if (info.boundary)
        require(info.darts.size() == 1, "surface: boundary edge " + std::to_string(e) +
                                            " used by " + std::to_string(info.darts.size()) +
                                            " slots");
      else
        require(info.darts.size() == 2, "surface: edge " + std::to_string(e) + " used by " +
                                            std::to_string(info.darts.size()) +
                                            " slots without a boundary mark");
    }
  }

  // Choose face orientations so that the two slots of every interior edge
  // traverse it in opposite directions; reject if impossible.
  void normalize_orientation() {
    std::map<FaceId, int> flip;  // 0 keep, 1 flip
    for (const auto& [f0, _] : faces_) {
      if (flip.count(f0)) continue;
      flip[f0] = 0;
      std::vector<FaceId> stack{f0};
      while (!stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        const auto& sides = faces_.at(f);
        for (int i = 0; i < static_cast<int>(sides.size()); ++i) {
          const auto& info = edges_.at(sides[i].edge);
          if (info.darts.size() != 2) continue;
          Dart me{f, i};
          Dart other = info.darts[0] == me ? info.darts[1] : info.darts[0];
          int d_me = sides[i].dir * (flip[f] ? -1 : 1);
          int d_other_raw = faces_.at(other.face)[other.pos].dir;
          if (other.face == f && other.pos == i) continue;
          // need effective dirs opposite
          int want_flip_other = (d_other_raw == d_me) ? 1 : 0;
          auto it = flip.find(other.face);
          if (it == flip.end()) {
            flip[other.face] = want_flip_other;
            stack.push_back(other.face);
          } else {
            require(it->second == want_flip_other,
                    "surface: orientation inconsistency (non-orientable gluing)");
          }
        }
      }
    }
    // self-paired edges within one face must already be opposite
    for (const auto& [e, info] : edges_) {
      if (info.darts.size() == 2 && info.darts[0].face == info.darts[1].face) {
        const auto& sides = faces_.at(info.darts[0].face);
        require(sides[info.darts[0].pos].dir != sides[info.darts[1].pos].dir,
                "surface: orientation inconsistency on self-glued edge " + std::to_string(e));
      }
    }
    for (auto& [f, do_flip] : flip) {
      if (!do_flip) continue;
      auto& sides = faces_.at(f);
      std::reverse(sides.begin(), sides.end());
      for (auto& s : sides) s.dir = -s.dir;
    }
  }

  void compute_vertices() {
    // union-find over corners: tail(d) ~ head(twin(d))
    std::map<long, long> parent;
    std::function<long(long)> find = [&](long x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    for (const auto& [f, sides] : faces_)
      for (int i = 0; i < static_cast<int>(sides.size()); ++i) {
        long k = corner_key({f, i});
        parent[k] = k;
      }
    auto unite = [&](long a, long b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[a] = b;
    };
    for (const auto& [f, sides] : faces_) {
      for (int i = 0; i < static_cast<int>(sides.size()); ++i) {
        Dart d{f, i};
        auto t = twin(d);
        if (!t) continue;
        // head of twin: corner after twin slot
        Dart th = next(*t);
        unite(corner_key(d), corner_key(th));
      }
    }
    vertex_of_corner_.clear();
    std::map<long, int> root_id;
    for (auto& [k, _] : parent) {
      long r = find(k);
      auto it = root_id.find(r);
      if (it == root_id.end()) it = root_id.emplace(r, static_cast<int>(root_id.size())).first;
      vertex_of_corner_[k] = it->second;
    }
    vertex_count_ = static_cast<int>(root_id.size());
  }

  void compute_components() {
    std::map<FaceId, int> comp;
    int nc = 0;
    for (const auto& [f0, _] : faces_) {
      if (comp.count(f0)) continue;
      std::vector<FaceId> stack{f0};
      comp[f0] = nc;
      while (!stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        const auto& sides = faces_.at(f);
        for (int i = 0; i < static_cast<int>(sides.size()); ++i) {
          auto t = twin({f, i});
          if (t && !comp.count(t->face)) {
            comp[t->face] = nc;
            stack.push_back(t->face);
          }
        }
      }
      nc++;
    }
    component_of_ = std::move(comp);
    component_faces_.assign(nc, {});
    for (const auto& [f, c] : component_of_) component_faces_[c].push_back(f);
  }

  void compute_boundary_circles() {
    boundary_circles_.clear();
    std::set<Dart> seen;
    for (const auto& [e, info] : edges_) {
      if (!info.boundary) continue;
      Dart start = info.darts[0];
      if (seen.count(start)) continue;
      std::vector<Dart> circle;
      Dart d = start;
      do {
        circle.push_back(d);
        seen.insert(d);
        // advance to the next boundary dart around the circle
        Dart n = next(d);
        while (true) {
          auto t = twin(n);
          if (!t) break;
          n = next(*t);
        }
        d = n;
      } while (!(d == start));
      boundary_circles_.push_back(std::move(circle));
    }
  }

  std::map<FaceId, std::vector<Slot>> faces_;
  std::map<EdgeId, EdgeInfo> edges_;
  std::map<std::string, std::set<FaceId>> face_labels_;
  std::map<long, int> vertex_of_corner_;
  std::map<FaceId, int> component_of_;
  std::vector<std::vector<FaceId>> component_faces_;
  std::vector<std::vector<Dart>> boundary_circles_;
  int vertex_count_ = 0;
  int next_face_id_ = 0;
  int next_edge_id_ = 0;
};

// -- convenience builders used across tests and the scaffold --

// One-square torus: a b a^-1 b^-1.
inline CombinatorialSurface square_torus() {
  std::map<FaceId, std::vector<Slot>> faces;
  faces[0] = {{0, +1}, {1, +1}, {0, -1}, {1, -1}};
  return CombinatorialSurface::build(std::move(faces));
}

// Standard 4g-gon with identification a b a^-1 b^-1 c d c^-1 d^-1 ...
inline CombinatorialSurface polygon_surface_4g(int g) {
  require(g >= 1, "polygon_surface_4g: g >= 1");
  std::map<FaceId, std::vector<Slot>> faces;
  std::vector<Slot> w;
  for (int i = 0; i < g; ++i) {
    EdgeId a = 2 * i, b = 2 * i + 1;
    w.push_back({a, +1});
    w.push_back({b, +1});
    w.push_back({a, -1});
    w.push_back({b, -1});
  }
  faces[0] = std::move(w);
  return CombinatorialSurface::build(std::move(faces));
}

}  // namespace ksys
