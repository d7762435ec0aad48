#include "bongard/scene.hpp"

#include <algorithm>
#include <cmath>

#include "bongard/error.hpp"
#include "geometry.hpp"

namespace bongard {

PixelBox bounding_box(const Shape& shape) {
  const int x0 = shape.cx - shape.size / 2;
  const int y0 = shape.cy - shape.size / 2;
  return {x0, y0, x0 + shape.size, y0 + shape.size};
}

double inside_depth(const Shape& shape, double x, double y) {
  const PixelBox box = bounding_box(shape);
  switch (shape.kind) {
    case ShapeKind::Circle: {
      const double r = shape.size / 2.0;
      const double cx = box.x0 + r;
      const double cy = box.y0 + r;
      return r - std::hypot(x - cx, y - cy);
    }
    case ShapeKind::Square:
      return std::min({x - box.x0, box.x1 - x, y - box.y0, box.y1 - y});
    case ShapeKind::Triangle: {
      // Apex at the top center, base along the bottom edge of the box.
      const double apex_x = box.x0 + shape.size / 2.0;
      const double slant = ((y - box.y0) / 2.0 - std::abs(x - apex_x)) / std::sqrt(1.25);
      return std::min(box.y1 - y, slant);
    }
  }
  return -1.0;
}

bool covers(const Shape& shape, double x, double y) { return inside_depth(shape, x, y) >= 0.0; }

bool encloses(const Shape& outer, const Shape& inner) {
  const PixelBox o = bounding_box(outer);
  const PixelBox i = bounding_box(inner);
  const bool strictly_inside = o.x0 < i.x0 && i.x1 < o.x1 && o.y0 < i.y0 && i.y1 < o.y1;
  return strictly_inside && covers(outer, inner.cx, inner.cy);
}

SceneDescription make_scene(std::vector<Shape> shapes) {
  SceneDescription scene;
  scene.shapes = std::move(shapes);
  const int n = static_cast<int>(scene.shapes.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && encloses(scene.shapes[a], scene.shapes[b])) scene.containment.emplace_back(a, b);
    }
  }
  return scene;
}

Factor factor_of(const Atom& atom) {
  return std::visit(
      [](const auto& a) -> Factor {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, NumerosityAtom>) return Factor::Numerosity;
        else if constexpr (std::is_same_v<T, ShapeClassAtom>) return Factor::ShapeClass;
        else if constexpr (std::is_same_v<T, FillAtom>) return Factor::Fill;
        else if constexpr (std::is_same_v<T, SizeAtom>) return Factor::Size;
        else return Factor::Enclosure;
      },
      atom);
}

bool Concept::uses(Factor factor) const {
  return std::any_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return factor_of(a) == factor; });
}

void validate(const Concept& rule) {
  if (rule.atoms.empty()) throw Error(ErrorCode::InvalidArgument, "concept needs at least one factor");
  for (std::size_t a = 0; a < rule.atoms.size(); ++a) {
    for (std::size_t b = a + 1; b < rule.atoms.size(); ++b) {
      if (factor_of(rule.atoms[a]) == factor_of(rule.atoms[b])) {
        throw Error(ErrorCode::InvalidArgument, "concept repeats a factor");
      }
    }
  }
}

std::string_view to_string(Factor factor) {
  switch (factor) {
    case Factor::Numerosity: return "numerosity";
    case Factor::ShapeClass: return "shape";
    case Factor::Fill: return "fill";
    case Factor::Size: return "size";
    case Factor::Enclosure: return "enclosure";
  }
  return "unknown";
}

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Circle: return "circle";
    case ShapeKind::Square: return "square";
    case ShapeKind::Triangle: return "triangle";
  }
  return "unknown";
}

std::optional<ShapeKind> parse_shape_kind(std::string_view name) {
  if (name == "circle") return ShapeKind::Circle;
  if (name == "square") return ShapeKind::Square;
  if (name == "triangle") return ShapeKind::Triangle;
  return std::nullopt;
}

}  // namespace bongard
