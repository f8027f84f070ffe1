#pragma once

#include <string>
#include <vector>

namespace sensilab::constructions {

/// GF(q) for prime powers q via addition and multiplication tables.
class FiniteField {
 public:
  explicit FiniteField(int q);
  int order() const noexcept { return q_; }
  int add(int a, int b) const { return add_[a * q_ + b]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int inverse(int a) const;

 private:
  int q_;
  std::vector<int> add_;
  std::vector<int> mul_;
};

/// Orders with an implemented field (plus the degenerate order 1).
const std::vector<int>& supported_plane_orders();

/// Projective plane of order q with k = q + 1 points per line and
/// n = k^2 - k + 1 points and lines. Points and lines are 0-based.
struct ProjectivePlane {
  int q = 0;
  int k = 0;
  int n = 0;
  std::vector<std::vector<int>> lines;        // sorted points of each line
  std::vector<std::vector<int>> point_lines;  // sorted lines through each point
  /// slot_line[p][i] is the line that pointer symbol i + 1 at point p refers to.
  std::vector<std::vector<int>> slot_line;

  /// Slot (0-based) of line l at point p, or -1 when p is not on l.
  int slot_of(int p, int l) const;
};

/// Homogeneous-coordinate construction over GF(q), the triangle for q = 1.
/// Axioms and the rainbow ordering are verified before returning.
ProjectivePlane projective_plane(int q);

/// Decomposes the point-line incidence graph into k perfect matchings; slot
/// i of each point is its partner in matching i.
std::vector<std::vector<int>> rainbow_ordering(const ProjectivePlane& plane);

bool verify_plane_axioms(const ProjectivePlane& plane, std::string* why = nullptr);
bool verify_rainbow(const ProjectivePlane& plane, std::string* why = nullptr);

}  // namespace sensilab::constructions
