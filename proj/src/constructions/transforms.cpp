#include "sensilab/constructions/transforms.hpp"

#include <algorithm>
#include <functional>

#include "sensilab/core/errors.hpp"
#include "sensilab/measures/unambiguous.hpp"
#include "sensilab/parallel/kernels.hpp"

namespace sensilab::constructions {

weighted::WeightedFunction round_weights(const weighted::WeightedFunction& wf) {
  return weighted::WeightedFunction(wf.function, wf.weight.ceiled());
}

std::vector<Cube> subcube_decomposition(const std::vector<unsigned>& codes, int bits) {
  std::vector<char> in(std::size_t{1} << bits, 0);
  for (unsigned c : codes) {
    if (c >= in.size()) throw InputError("code out of range");
    in[c] = 1;
  }
  std::vector<Cube> out;
  std::function<void(Cube, int)> split = [&](Cube cube, int bit) {
    bool any = false, all = true;
    for (unsigned c = 0; c < in.size(); ++c)
      if (cube.contains(c)) {
        if (in[c]) any = true;
        else all = false;
      }
    if (!any) return;
    if (all) {
      out.push_back(cube);
      return;
    }
    const std::uint32_t b = 1u << bit;
    split(Cube{cube.fixed | b, cube.values}, bit + 1);
    split(Cube{cube.fixed | b, cube.values | b}, bit + 1);
  };
  split(Cube{}, 0);
  return out;
}

std::vector<int> symbol_bits(int symbol, int alphabet) {
  const int b = bits_per_symbol(alphabet);
  std::vector<int> out;
  for (int i = 0; i < b; ++i) out.push_back((symbol >> i) & 1);
  return out;
}

std::vector<PartialAssignment> booleanize_collection(const CertificateCollection& c) {
  const int a = c.alphabet;
  const int b = bits_per_symbol(a);
  std::vector<PartialAssignment> out;
  for (const auto& box : c.certificates) {
    const int n = box.arity();
    std::vector<std::vector<Cube>> parts;
    for (int j = 0; j < n; ++j) {
      std::vector<unsigned> codes;
      for (unsigned code = 0; code < (1u << b); ++code)
        if (box[j].contains(decode_code(code, a))) codes.push_back(code);
      parts.push_back(subcube_decomposition(codes, b));
    }
    std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
    for (;;) {
      PartialAssignment p(n * b);
      for (int j = 0; j < n; ++j) {
        const Cube& q = parts[j][choice[j]];
        for (int t = 0; t < b; ++t)
          if ((q.fixed >> t) & 1u) p.set(j * b + t, static_cast<int>((q.values >> t) & 1u));
      }
      out.push_back(std::move(p));
      int j = 0;
      for (; j < n; ++j) {
        if (++choice[j] < parts[j].size()) break;
        choice[j] = 0;
      }
      if (j == n) break;
    }
  }
  return out;
}

Desensitized desensitize(const BooleanFunction& f, const std::vector<PartialAssignment>& u, int repetitions,
                         const Budget& budget) {
  if (repetitions < 3 || repetitions % 2 == 0) throw InputError("repetitions must be odd and at least 3");
  std::string why;
  if (!measures::is_unambiguous_collection(f, 1, u, &why))
    throw PreconditionError("desensitization needs an unambiguous covering 1-collection: " + why);
  const int n = f.arity();
  const int total = n * repetitions;
  if (total > BooleanFunction::kMaxArity || (std::uint64_t{1} << total) > budget.boolean_bits)
    throw SizeError("desensitized function on " + std::to_string(total) + " bits exceeds the bit-table limit");
  std::vector<std::uint32_t> owner(f.size(), 0);  // 1 + index of the member containing x, 0 for 0-inputs
  std::vector<Cube> cubes;
  for (const auto& p : u) cubes.push_back(p.to_cube());
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (!f(x)) continue;
    for (std::size_t k = 0; k < cubes.size(); ++k)
      if (cubes[k].contains(x)) {
        owner[x] = static_cast<std::uint32_t>(k + 1);
        break;
      }
  }
  const std::uint64_t block = (std::uint64_t{1} << n) - 1;
  Desensitized d;
  d.repetitions = repetitions;
  d.function = BooleanFunction::from_predicate(
      total,
      [&](std::uint64_t x) {
        const auto first = owner[x & block];
        if (!first) return false;
        for (int j = 1; j < repetitions; ++j)
          if (owner[(x >> (j * n)) & block] != first) return false;
        return true;
      },
      "desensitized(" + f.name() + ")");
  for (const auto& p : u) {
    std::vector<int> entries;
    for (int j = 0; j < repetitions; ++j) entries.insert(entries.end(), p.entries().begin(), p.entries().end());
    d.collection.emplace_back(std::move(entries));
  }
  if (!measures::is_unambiguous_collection(d.function, 1, d.collection, &why))
    throw InvariantError("replicated collection failed verification: " + why);
  return d;
}

BooleanFunction outer_compose(const BooleanFunction& outer, const BooleanFunction& inner, const Budget& budget) {
  std::vector<std::uint32_t> table(inner.size());
  for (std::uint64_t x = 0; x < inner.size(); ++x) table[x] = inner(x);
  auto g = par::compose_bits(outer, table, inner.arity(), 1, outer.arity(), par::Exec::parallel, budget);
  g.set_name(outer.name() + "o" + inner.name());
  return g;
}

TightFamily tight_family(int k, const Budget& budget) {
  if (k < 1) throw InputError("tight family needs k >= 1");
  const int n = 2 * k + 1;
  if (n > BooleanFunction::kMaxArity || (std::uint64_t{1} << n) > budget.boolean_bits)
    throw SizeError("tight family on " + std::to_string(n) + " bits exceeds the bit-table limit");
  TightFamily t;
  t.k = k;
  for (int s = 0; s < n; ++s) {
    PartialAssignment p(n);
    for (int j = 0; j <= k; ++j) p.set((j + s) % n, j == k ? 1 : 0);
    t.collection.push_back(std::move(p));
  }
  std::vector<Cube> cubes;
  for (const auto& p : t.collection) cubes.push_back(p.to_cube());
  t.function = BooleanFunction::from_predicate(
      n, [&](std::uint64_t x) { return std::any_of(cubes.begin(), cubes.end(), [x](const Cube& c) { return c.contains(x); }); },
      "tight-family-k" + std::to_string(k));
  std::string why;
  if (!measures::is_unambiguous_collection(t.function, 1, t.collection, &why))
    throw InvariantError("tight family shifts are not unambiguous: " + why);
  return t;
}

}  // namespace sensilab::constructions
