#include "sensilab/parallel/kernels.hpp"

#include <string>

#include "sensilab/core/errors.hpp"

namespace sensilab::par {
namespace {

constexpr std::uint64_t kLowMask[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
};

std::uint64_t words_for(int arity) { return arity <= 6 ? 1 : (std::uint64_t{1} << (arity - 6)); }

/// Parallel loops only pay off on large tables.
Exec effective(Exec exec, std::uint64_t words) {
  return words >= 1024 ? exec : Exec::serial;
}

std::uint64_t permute_in_word(std::uint64_t w, unsigned low) {
  for (int b = 0; b < 6; ++b) {
    if (((low >> b) & 1u) == 0) continue;
    const unsigned s = 1u << b;
    w = ((w >> s) & kLowMask[b]) | ((w & kLowMask[b]) << s);
  }
  return w;
}

/// Word loops have uniform cost, so they use static scheduling.
template <typename Body>
void for_each_word(std::uint64_t n, Exec exec, Body&& body) {
  if (exec == Exec::parallel) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::uint64_t>(i));
  } else {
    for (std::uint64_t i = 0; i < n; ++i) body(i);
  }
}

void check_size(std::span<const std::uint64_t> t, int arity) {
  if (t.size() != words_for(arity)) throw InputError("bit table size does not match arity");
}

}  // namespace

void xor_permute(std::span<const std::uint64_t> in, int arity, std::uint64_t mask,
                 std::span<std::uint64_t> out, Exec exec) {
  check_size(in, arity);
  check_size(out, arity);
  const std::uint64_t words = words_for(arity);
  const std::uint64_t high = mask >> 6;
  const unsigned low = static_cast<unsigned>(mask & 63u);
  for_each_word(words, effective(exec, words),
                 [&](std::uint64_t w) { out[w] = permute_in_word(in[w ^ high], low); });
}

void zeta_or_subsets(std::span<std::uint64_t> t, int arity, Exec exec) {
  check_size(t, arity);
  const std::uint64_t words = words_for(arity);
  const Exec e = effective(exec, words);
  for (int i = 0; i < arity; ++i) {
    if (i < 6) {
      const unsigned s = 1u << i;
      for_each_word(words, e, [&](std::uint64_t w) { t[w] |= (t[w] & kLowMask[i]) << s; });
    } else {
      const std::uint64_t bit = std::uint64_t{1} << (i - 6);
      for_each_word(words, e, [&](std::uint64_t w) {
        if (w & bit) t[w] |= t[w ^ bit];
      });
    }
  }
}

void or_shift_up(std::span<const std::uint64_t> in, int arity, int i, std::span<std::uint64_t> out,
                 Exec exec) {
  check_size(in, arity);
  check_size(out, arity);
  if (i < 0 || i >= arity) throw InputError("coordinate out of range");
  const std::uint64_t words = words_for(arity);
  const Exec e = effective(exec, words);
  if (i < 6) {
    const unsigned s = 1u << i;
    for_each_word(words, e, [&](std::uint64_t w) { out[w] |= (in[w] & kLowMask[i]) << s; });
  } else {
    const std::uint64_t bit = std::uint64_t{1} << (i - 6);
    for_each_word(words, e, [&](std::uint64_t w) {
      if (w & bit) out[w] |= in[w ^ bit];
    });
  }
}

BooleanFunction materialize_boolean(const LazyFunction& f, Exec exec, const Budget& budget) {
  if (!f.is_boolean()) throw UnsupportedError("'" + f.name() + "' is not Boolean");
  if (f.arity() > BooleanFunction::kMaxArity || (std::uint64_t{1} << f.arity()) > budget.boolean_bits)
    throw SizeError("'" + f.name() + "' has 2^" + std::to_string(f.arity()) +
                    " points, over the bit-table limit of " + std::to_string(budget.boolean_bits));
  BooleanFunction g(f.arity(), f.name());
  auto words = g.mutable_words();
  const int n = f.arity();
  const std::uint64_t total = g.size();
  for_each_word(words.size(), effective(exec, words.size()), [&](std::uint64_t w) {
    std::vector<Symbol> point(static_cast<std::size_t>(n), 0);
    const std::uint64_t start = w * 64;
    for (int i = 0; i < n; ++i) point[i] = static_cast<Symbol>((start >> i) & 1u);
    std::uint64_t word = 0;
    const std::uint64_t count = total < 64 ? total : 64;
    for (std::uint64_t b = 0; b < count; ++b) {
      if (f.evaluate_unchecked(point.data())) word |= std::uint64_t{1} << b;
      next_point(point, 2);
    }
    words[w] = word;
  });
  return g;
}

BooleanFunction compose_bits(const BooleanFunction& outer, const std::vector<std::uint32_t>& inner,
                             int inner_bits, int out_bits, int copies, Exec exec, const Budget& budget) {
  if (outer.arity() != copies * out_bits) throw InputError("outer arity must equal copies * output bits");
  if (inner.size() != (std::size_t{1} << inner_bits)) throw InputError("inner table has the wrong size");
  for (auto v : inner)
    if (v >= (1u << out_bits)) throw InputError("inner output exceeds its bit width");
  const int n = copies * inner_bits;
  if (n > BooleanFunction::kMaxArity || (std::uint64_t{1} << n) > budget.boolean_bits)
    throw SizeError("composed table of 2^" + std::to_string(n) + " bits exceeds the bit-table limit");
  BooleanFunction g(n);
  auto words = g.mutable_words();
  const std::uint64_t block_mask = (std::uint64_t{1} << inner_bits) - 1;
  const std::uint64_t total = g.size();
  for_each_word(words.size(), effective(exec, words.size()), [&](std::uint64_t w) {
    std::uint64_t word = 0;
    const std::uint64_t count = total < 64 ? total : 64;
    for (std::uint64_t b = 0; b < count; ++b) {
      const std::uint64_t x = w * 64 + b;
      std::uint64_t idx = 0;
      for (int j = 0; j < copies; ++j)
        idx |= static_cast<std::uint64_t>(inner[(x >> (j * inner_bits)) & block_mask]) << (j * out_bits);
      if (outer(idx)) word |= std::uint64_t{1} << b;
    }
    words[w] = word;
  });
  return g;
}

}  // namespace sensilab::par
