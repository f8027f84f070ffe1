#include "sensilab/core/lazy_function.hpp"

#include <string>

#include "sensilab/core/errors.hpp"

namespace sensilab {
namespace {

/// Scratch space for intermediate points; stack storage for the common case.
class Scratch {
 public:
  explicit Scratch(std::size_t n) {
    if (n > sizeof(inline_)) heap_.resize(n);
  }
  Symbol* data() { return heap_.empty() ? inline_ : heap_.data(); }

 private:
  Symbol inline_[512];
  std::vector<Symbol> heap_;
};

class CompositeNode : public FunctionNode {
 public:
  std::vector<LazyFunction> kids;
};

class DenseNode final : public FunctionNode {
 public:
  explicit DenseNode(DenseFunction f) : f_(std::move(f)) {
    arity = f_.arity();
    input_alphabet = f_.input_alphabet();
    output_alphabet = f_.output_alphabet();
    name = f_.name();
  }
  LazyKind kind() const override { return LazyKind::dense; }
  Symbol eval(const Symbol* point) const override {
    std::uint64_t index = 0;
    for (int i = arity - 1; i >= 0; --i)
      index = index * static_cast<std::uint64_t>(input_alphabet) + point[i];
    return f_.table()[index];
  }
  const DenseFunction& function() const { return f_; }

 private:
  DenseFunction f_;
};

class ComposeNode final : public CompositeNode {
 public:
  ComposeNode(LazyFunction outer, std::vector<LazyFunction> inners, LazyKind k) : kind_(k) {
    if (!outer.valid()) throw InputError("composition needs an outer function");
    if (static_cast<int>(inners.size()) != outer.arity())
      throw InputError("composition needs " + std::to_string(outer.arity()) + " inner functions, got " +
                       std::to_string(inners.size()));
    int total = 0;
    for (const auto& g : inners) {
      if (!g.valid()) throw InputError("invalid inner function");
      if (g.output_alphabet() > outer.input_alphabet())
        throw InputError("inner output alphabet (" + std::to_string(g.output_alphabet()) +
                         ") exceeds outer input alphabet (" + std::to_string(outer.input_alphabet()) + ")");
      if (g.input_alphabet() != inners.front().input_alphabet())
        throw InputError("inner functions must share one input alphabet");
      offsets_.push_back(total);
      total += g.arity();
    }
    arity = total;
    input_alphabet = inners.empty() ? 2 : inners.front().input_alphabet();
    output_alphabet = outer.output_alphabet();
    kids.push_back(std::move(outer));
    for (auto& g : inners) kids.push_back(std::move(g));
  }
  LazyKind kind() const override { return kind_; }
  Symbol eval(const Symbol* point) const override {
    const std::size_t c = kids.size() - 1;
    Scratch buf(c);
    Symbol* y = buf.data();
    for (std::size_t j = 0; j < c; ++j) y[j] = kids[j + 1].evaluate_unchecked(point + offsets_[j]);
    return kids[0].evaluate_unchecked(y);
  }

 private:
  LazyKind kind_;
  std::vector<int> offsets_;
};

class BooleanizeNode final : public CompositeNode {
 public:
  explicit BooleanizeNode(LazyFunction f) {
    bits_ = bits_per_symbol(f.input_alphabet());
    arity = f.arity() * bits_;
    input_alphabet = 2;
    output_alphabet = f.output_alphabet();
    kids.push_back(std::move(f));
  }
  LazyKind kind() const override { return LazyKind::booleanized; }
  Symbol eval(const Symbol* point) const override {
    const LazyFunction& f = kids[0];
    const int n = f.arity();
    Scratch buf(static_cast<std::size_t>(n));
    Symbol* y = buf.data();
    for (int i = 0; i < n; ++i) {
      unsigned code = 0;
      for (int b = 0; b < bits_; ++b) code |= static_cast<unsigned>(point[i * bits_ + b] & 1u) << b;
      y[i] = decode_code(code, f.input_alphabet());
    }
    return f.evaluate_unchecked(y);
  }

 private:
  int bits_ = 1;
};

class TildeNode final : public CompositeNode {
 public:
  TildeNode(LazyFunction f, std::vector<BoxCertificate> certs, int sigma0)
      : certs_(std::move(certs)), sigma0_(sigma0) {
    if (f.output_alphabet() != 2) throw InputError("output extension needs a Boolean-valued function");
    if (sigma0 < 1) throw InputError("Sigma_0 must be non-empty");
    const int sigma = f.input_alphabet() - 1;
    if (1 + sigma * sigma0 > kMaxAlphabet)
      throw SizeError("extended alphabet " + std::to_string(1 + sigma * sigma0) + " exceeds 256 symbols");
    for (const auto& c : certs_) {
      if (c.arity() != f.arity() || c.alphabet() != f.input_alphabet())
        throw InputError("certificate shape does not match the function");
      if (!c.is_simple()) throw PreconditionError("output extension needs simple certificates");
      std::vector<std::pair<int, Symbol>> fixed;
      for (int i = 0; i < c.arity(); ++i)
        if (!c[i].is_full(c.alphabet())) fixed.emplace_back(i, static_cast<Symbol>(c[i].only()));
      fixed_.push_back(std::move(fixed));
    }
    arity = f.arity();
    input_alphabet = 1 + sigma * sigma0;
    output_alphabet = 1 + sigma0;
    kids.push_back(std::move(f));
  }
  LazyKind kind() const override { return LazyKind::tilde_extension; }
  Symbol eval(const Symbol* point) const override {
    const LazyFunction& f = kids[0];
    Scratch buf(static_cast<std::size_t>(arity));
    Symbol* p1 = buf.data();
    for (int i = 0; i < arity; ++i)
      p1[i] = point[i] == 0 ? 0 : static_cast<Symbol>(1 + (point[i] - 1) / sigma0_);
    if (f.evaluate_unchecked(p1) == 0) return 0;
    for (const auto& fixed : fixed_) {
      bool inside = true;
      for (const auto& [i, s] : fixed)
        if (p1[i] != s) { inside = false; break; }
      if (!inside) continue;
      int label = -1;
      for (const auto& [i, s] : fixed) {
        const int second = 1 + (point[i] - 1) % sigma0_;
        if (label == -1) label = second;
        else if (label != second) return 0;
      }
      return static_cast<Symbol>(label == -1 ? 0 : label);
    }
    throw InvariantError("output extension: 1-input not covered by the certificate collection");
  }

 private:
  std::vector<BoxCertificate> certs_;
  std::vector<std::vector<std::pair<int, Symbol>>> fixed_;
  int sigma0_;
};

}  // namespace

const char* to_string(LazyKind kind) {
  switch (kind) {
    case LazyKind::dense: return "dense";
    case LazyKind::gadget: return "gadget";
    case LazyKind::outer_compose: return "outer-compose";
    case LazyKind::tilde_extension: return "tilde-extension";
    case LazyKind::realizer_compose: return "realizer-compose";
    case LazyKind::booleanized: return "booleanized";
  }
  return "unknown";
}

int bits_per_symbol(int alphabet) {
  if (alphabet < 1) throw InputError("alphabet must be non-empty");
  int b = 0;
  while ((1 << b) < alphabet) ++b;
  return b;
}

LazyFunction::LazyFunction(std::shared_ptr<const FunctionNode> node) : node_(std::move(node)) {}

LazyFunction LazyFunction::dense(DenseFunction f) {
  return LazyFunction(std::make_shared<DenseNode>(std::move(f)));
}

LazyFunction LazyFunction::dense(const BooleanFunction& f) { return dense(f.to_dense()); }

LazyFunction LazyFunction::compose(LazyFunction outer, std::vector<LazyFunction> inners, LazyKind kind,
                                   std::string name) {
  auto node = std::make_shared<ComposeNode>(std::move(outer), std::move(inners), kind);
  node->name = std::move(name);
  return LazyFunction(std::move(node));
}

LazyFunction LazyFunction::compose_copies(LazyFunction outer, const LazyFunction& inner, LazyKind kind,
                                          std::string name) {
  std::vector<LazyFunction> inners(static_cast<std::size_t>(outer.arity()), inner);
  return compose(std::move(outer), std::move(inners), kind, std::move(name));
}

LazyFunction LazyFunction::booleanize(LazyFunction f, std::string name) {
  auto node = std::make_shared<BooleanizeNode>(std::move(f));
  node->name = std::move(name);
  return LazyFunction(std::move(node));
}

LazyFunction LazyFunction::tilde(LazyFunction f, std::vector<BoxCertificate> certs, int sigma0,
                                 std::string name) {
  auto node = std::make_shared<TildeNode>(std::move(f), std::move(certs), sigma0);
  node->name = std::move(name);
  return LazyFunction(std::move(node));
}

std::optional<std::uint64_t> LazyFunction::domain_size() const {
  std::uint64_t n = 0;
  if (!try_power(static_cast<std::uint64_t>(input_alphabet()), arity(), n)) return std::nullopt;
  return n;
}

std::vector<LazyFunction> LazyFunction::children() const {
  if (const auto* c = dynamic_cast<const CompositeNode*>(node_.get())) return c->kids;
  return {};
}

const DenseFunction* LazyFunction::as_dense() const {
  if (const auto* d = dynamic_cast<const DenseNode*>(node_.get())) return &d->function();
  return nullptr;
}

Symbol LazyFunction::evaluate(std::span<const Symbol> point) const {
  if (static_cast<int>(point.size()) != arity())
    throw InputError("point has length " + std::to_string(point.size()) + ", expected " +
                     std::to_string(arity()));
  for (std::size_t i = 0; i < point.size(); ++i)
    if (point[i] >= input_alphabet())
      throw InputError("symbol " + std::to_string(point[i]) + " out of range at coordinate " +
                       std::to_string(i));
  return node_->eval(point.data());
}

bool LazyFunction::fits_dense(const Budget& budget) const {
  const auto n = domain_size();
  return n && *n <= budget.dense_entries;
}

DenseFunction LazyFunction::materialize(const Budget& budget) const {
  if (const auto* d = as_dense()) return *d;
  const auto n = domain_size();
  if (!n || *n > budget.dense_entries)
    throw SizeError("'" + name() + "' has " + (n ? std::to_string(*n) : std::string("more than 2^62")) +
                    " points, over the dense limit of " + std::to_string(budget.dense_entries));
  std::vector<Symbol> table(*n);
  std::vector<Symbol> point(static_cast<std::size_t>(arity()), 0);
  for (std::uint64_t i = 0; i < *n; ++i) {
    table[i] = node_->eval(point.data());
    next_point(point, input_alphabet());
  }
  return DenseFunction(name(), arity(), input_alphabet(), output_alphabet(), std::move(table));
}

BooleanFunction LazyFunction::materialize_boolean(const Budget& budget) const {
  if (!is_boolean()) throw UnsupportedError("'" + name() + "' is not Boolean");
  if (arity() > BooleanFunction::kMaxArity || (std::uint64_t{1} << arity()) > budget.boolean_bits)
    throw SizeError("'" + name() + "' has 2^" + std::to_string(arity()) +
                    " points, over the bit-table limit of " + std::to_string(budget.boolean_bits));
  BooleanFunction f(arity(), name());
  std::vector<Symbol> point(static_cast<std::size_t>(arity()), 0);
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (node_->eval(point.data())) f.set(x, true);
    next_point(point, 2);
  }
  return f;
}

}  // namespace sensilab
