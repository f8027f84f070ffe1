#include "sensilab/constructions/plane.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

#include "sensilab/core/errors.hpp"

namespace sensilab::constructions {

namespace {

struct FieldSpec {
  int q;
  int p;
  std::vector<int> modulus;  // monic irreducible, lowest coefficient first
};

const std::vector<FieldSpec>& field_specs() {
  static const std::vector<FieldSpec> specs = {
      {2, 2, {}},  {3, 3, {}},  {4, 2, {1, 1, 1}}, {5, 5, {}},  {7, 7, {}},
      {8, 2, {1, 1, 0, 1}}, {9, 3, {1, 0, 1}}, {11, 11, {}}, {13, 13, {}}, {16, 2, {1, 1, 0, 0, 1}},
  };
  return specs;
}

std::vector<int> digits(int a, int p, int e) {
  std::vector<int> d(static_cast<std::size_t>(e));
  for (auto& x : d) {
    x = a % p;
    a /= p;
  }
  return d;
}

int undigits(const std::vector<int>& d, int p) {
  int a = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * p + *it;
  return a;
}

std::string orders_text() {
  std::string s;
  for (int q : supported_plane_orders()) s += (s.empty() ? "" : ", ") + std::to_string(q);
  return s;
}

}  // namespace

FiniteField::FiniteField(int q) : q_(q) {
  const auto& specs = field_specs();
  const auto it = std::find_if(specs.begin(), specs.end(), [q](const FieldSpec& s) { return s.q == q; });
  if (it == specs.end()) throw InputError("no field of order " + std::to_string(q) + " (supported: " + orders_text() + ")");
  add_.assign(static_cast<std::size_t>(q * q), 0);
  mul_.assign(static_cast<std::size_t>(q * q), 0);
  const int p = it->p;
  if (it->modulus.empty()) {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        add_[a * q + b] = (a + b) % q;
        mul_[a * q + b] = (a * b) % q;
      }
  } else {
    const int e = static_cast<int>(it->modulus.size()) - 1;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        const auto da = digits(a, p, e), db = digits(b, p, e);
        std::vector<int> sum(static_cast<std::size_t>(e));
        for (int i = 0; i < e; ++i) sum[i] = (da[i] + db[i]) % p;
        add_[a * q + b] = undigits(sum, p);
        std::vector<int> prod(static_cast<std::size_t>(2 * e - 1), 0);
        for (int i = 0; i < e; ++i)
          for (int j = 0; j < e; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        for (int d = 2 * e - 2; d >= e; --d) {
          const int c = prod[d];
          if (c == 0) continue;
          for (int i = 0; i <= e; ++i) {
            auto& slot = prod[d - e + i];
            slot = ((slot - c * it->modulus[i]) % p + p) % p;
          }
        }
        prod.resize(static_cast<std::size_t>(e));
        mul_[a * q + b] = undigits(prod, p);
      }
  }
  for (int a = 1; a < q; ++a) inverse(a);
}

int FiniteField::inverse(int a) const {
  if (a <= 0 || a >= q_) throw InputError("zero has no inverse");
  for (int b = 1; b < q_; ++b)
    if (mul(a, b) == 1) return b;
  throw InvariantError("GF(" + std::to_string(q_) + ") table is not a field");
}

const std::vector<int>& supported_plane_orders() {
  static const std::vector<int> orders = [] {
    std::vector<int> o{1};
    for (const auto& s : field_specs()) o.push_back(s.q);
    return o;
  }();
  return orders;
}

int ProjectivePlane::slot_of(int p, int l) const {
  const auto& slots = slot_line.at(static_cast<std::size_t>(p));
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (slots[i] == l) return static_cast<int>(i);
  return -1;
}

std::vector<std::vector<int>> rainbow_ordering(const ProjectivePlane& plane) {
  const int n = plane.n;
  std::vector<std::set<int>> remaining(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p)
    remaining[p].insert(plane.point_lines[p].begin(),
                                                  plane.point_lines[p].end());
  std::vector<std::vector<int>> slots(static_cast<std::size_t>(n));
  for (int round = 0; round < plane.k; ++round) {
    std::vector<int> line_mate(static_cast<std::size_t>(n), -1);
    std::vector<char> seen;
    std::function<bool(int)> augment = [&](int p) {
      for (int l : remaining[p]) {
        if (seen[l]) continue;
        seen[l] = 1;
        if (line_mate[l] < 0 || augment(line_mate[l])) {
          line_mate[l] = p;
          return true;
        }
      }
      return false;
    };
    for (int p = 0; p < n; ++p) {
      seen.assign(static_cast<std::size_t>(n), 0);
      if (!augment(p)) throw InvariantError("incidence graph has no perfect matching in round " + std::to_string(round));
    }
    std::vector<int> point_mate(static_cast<std::size_t>(n), -1);
    for (int l = 0; l < n; ++l) point_mate[static_cast<std::size_t>(line_mate[l])] = l;
    for (int p = 0; p < n; ++p) {
      const int l = point_mate[p];
      slots[p].push_back(l);
      remaining[p].erase(l);
    }
  }
  return slots;
}

bool verify_plane_axioms(const ProjectivePlane& plane, std::string* why) {
  auto fail = [why](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const int n = plane.n, k = plane.k;
  if (n != k * k - k + 1) return fail("point count is not k^2 - k + 1");
  if (static_cast<int>(plane.lines.size()) != n) return fail("line count differs from point count");
  std::vector<std::vector<char>> inc(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (int l = 0; l < n; ++l) {
    const auto& pts = plane.lines[l];
    if (static_cast<int>(pts.size()) != k) return fail("line " + std::to_string(l) + " does not have k points");
    for (int p : pts) {
      if (p < 0 || p >= n) return fail("line " + std::to_string(l) + " has an invalid point");
      inc[p][l] = 1;
    }
  }
  for (int p = 0; p < n; ++p) {
    const int deg = static_cast<int>(std::count(inc[p].begin(), inc[p].end(), 1));
    if (deg != k) return fail("point " + std::to_string(p) + " lies on " + std::to_string(deg) + " lines");
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int lines = 0, points = 0;
      for (int c = 0; c < n; ++c) {
        lines += inc[a][c] && inc[b][c];
        points += inc[c][a] && inc[c][b];
      }
      if (lines != 1) return fail("points " + std::to_string(a) + " and " + std::to_string(b) + " share " + std::to_string(lines) + " lines");
      if (points != 1) return fail("lines " + std::to_string(a) + " and " + std::to_string(b) + " meet in " + std::to_string(points) + " points");
    }
  return true;
}

bool verify_rainbow(const ProjectivePlane& plane, std::string* why) {
  auto fail = [why](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (static_cast<int>(plane.slot_line.size()) != plane.n) return fail("missing slot table");
  for (int p = 0; p < plane.n; ++p) {
    auto s = plane.slot_line[p];
    std::sort(s.begin(), s.end());
    if (s != plane.point_lines[p]) return fail("slots of point " + std::to_string(p) + " are not its lines");
  }
  for (int l = 0; l < plane.n; ++l) {
    std::vector<char> used(static_cast<std::size_t>(plane.k), 0);
    for (int p : plane.lines[l]) {
      const int s = plane.slot_of(p, l);
      if (s < 0) return fail("point " + std::to_string(p) + " has no slot for line " + std::to_string(l));
      if (used[s]) return fail("line " + std::to_string(l) + " receives slot " + std::to_string(s + 1) + " twice");
      used[s] = 1;
    }
  }
  return true;
}

ProjectivePlane projective_plane(int q) {
  const auto& orders = supported_plane_orders();
  if (std::find(orders.begin(), orders.end(), q) == orders.end())
    throw InputError("unsupported plane order " + std::to_string(q) + " (supported: " + orders_text() + ")");
  ProjectivePlane plane;
  plane.q = q;
  plane.k = q + 1;
  plane.n = plane.k * plane.k - plane.k + 1;
  if (q == 1) {
    plane.lines = {{0, 1}, {1, 2}, {0, 2}};
  } else {
    const FiniteField field(q);
    std::vector<std::array<int, 3>> pts;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c) {
          const int lead = a ? a : (b ? b : c);
          if (lead == 1) pts.push_back({a, b, c});
        }
    for (const auto& line : pts) {
      std::vector<int> on;
      for (std::size_t p = 0; p < pts.size(); ++p) {
        int dot = 0;
        for (int i = 0; i < 3; ++i) dot = field.add(dot, field.mul(line[i], pts[p][i]));
        if (dot == 0) on.push_back(static_cast<int>(p));
      }
      plane.lines.push_back(std::move(on));
    }
  }
  plane.point_lines.assign(static_cast<std::size_t>(plane.n), {});
  for (int l = 0; l < plane.n; ++l)
    for (int p : plane.lines[l]) plane.point_lines[p].push_back(l);
  std::string why;
  if (!verify_plane_axioms(plane, &why)) throw InvariantError("plane of order " + std::to_string(q) + ": " + why);
  plane.slot_line = rainbow_ordering(plane);
  if (!verify_rainbow(plane, &why)) throw InvariantError("plane of order " + std::to_string(q) + ": " + why);
  return plane;
}

}  // namespace sensilab::constructions
