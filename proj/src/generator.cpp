#include "gfre/generator.hpp"

#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace gfre {

ReductionMatrix reduction_matrix(std::size_t m, const IrrPoly& p) {
  if (p.degree() != m) {
    throw Error("polynomial degree " + std::to_string(p.degree()) + " does not match width " + std::to_string(m));
  }
  if (!p.has_constant_term()) throw Error("field polynomial " + p.to_string() + " has no constant term");

  ReductionMatrix rm;
  rm.m = m;
  rm.rows.resize(2 * m - 1);
  for (std::size_t k = 0; k < m; ++k) rm.rows[k] = {k};

  // x^m = P'(x); each further power shifts by one and folds x^m back in.
  std::vector<bool> tail(m, false);
  for (std::size_t e : p.exponents()) {
    if (e != m) tail[e] = true;
  }
  std::vector<bool> cur = tail;
  for (std::size_t k = m; k <= 2 * m - 2; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (cur[i]) rm.rows[k].push_back(i);
    }
    std::vector<bool> next(m, false);
    for (std::size_t i = 0; i < m; ++i) {
      if (!cur[i]) continue;
      if (i + 1 < m) {
        next[i + 1] = !next[i + 1];
      } else {
        for (std::size_t j = 0; j < m; ++j) next[j] = next[j] != tail[j];
      }
    }
    cur = std::move(next);
  }
  return rm;
}

namespace {

// Indices (i, k - i) of the a_i*b_j products of partial product s_k.
std::vector<std::pair<std::size_t, std::size_t>> partial_products(std::size_t m, std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t lo = k >= m ? k - m + 1 : 0;
  const std::size_t hi = std::min(k, m - 1);
  for (std::size_t i = lo; i <= hi; ++i) out.emplace_back(i, k - i);
  return out;
}

std::string product_name(std::size_t i, std::size_t j) { return "p" + std::to_string(i) + "_" + std::to_string(j); }

// Emits a balanced binary XOR tree (left half takes the extra leaf) whose
// root is named `out`. Needs at least two leaves.
void xor_tree(NetlistBuilder& builder, std::span<const std::string> leaves, const std::string& out,
              const std::string& tmp_prefix, std::size_t& counter) {
  auto operand = [&](std::span<const std::string> part) {
    if (part.size() == 1) return part.front();
    std::string name = tmp_prefix + std::to_string(counter++);
    xor_tree(builder, part, name, tmp_prefix, counter);
    return name;
  };
  const std::size_t left = (leaves.size() + 1) / 2;
  std::string l = operand(leaves.first(left));
  std::string r = operand(leaves.subspan(left));
  builder.add_gate(out, GateKind::Xor, {std::move(l), std::move(r)});
}

}  // namespace

SpecExpressions spec_expressions(std::size_t m, const IrrPoly& p) {
  const ReductionMatrix rm = reduction_matrix(m, p);
  SpecExpressions spec;
  spec.m = m;
  spec.bits.resize(m);
  for (std::size_t k = 0; k < rm.rows.size(); ++k) {
    Poly2 s;
    for (auto [i, j] : partial_products(m, k)) s.toggle(Monomial{input_a_id(i), input_b_id(m, j)});
    for (std::size_t col : rm.rows[k]) spec.bits[col] += s;
  }
  return spec;
}

std::size_t xor_cost(const ReductionMatrix& rm) {
  std::vector<std::size_t> terms(rm.m, 0);
  for (const auto& row : rm.rows) {
    for (std::size_t col : row) ++terms[col];
  }
  std::size_t cost = 0;
  for (std::size_t t : terms) cost += t > 0 ? t - 1 : 0;
  return cost;
}

Netlist gen_mastrovito(std::size_t m, const IrrPoly& p, MastrovitoOptions options) {
  const ReductionMatrix rm = reduction_matrix(m, p);
  NetlistBuilder builder;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      builder.add_gate(product_name(i, j), GateKind::And, {"a" + std::to_string(i), "b" + std::to_string(j)});
    }
  }

  std::vector<std::vector<std::size_t>> column_terms(m);
  for (std::size_t k = 0; k < rm.rows.size(); ++k) {
    for (std::size_t col : rm.rows[k]) column_terms[col].push_back(k);
  }

  std::vector<std::string> s_wire(rm.rows.size());
  if (options.share_partial_products) {
    for (std::size_t k = 0; k < rm.rows.size(); ++k) {
      std::vector<std::string> leaves;
      for (auto [i, j] : partial_products(m, k)) leaves.push_back(product_name(i, j));
      if (leaves.size() == 1) {
        s_wire[k] = leaves.front();
      } else {
        s_wire[k] = "s" + std::to_string(k);
        std::size_t counter = 0;
        xor_tree(builder, leaves, s_wire[k], "t" + std::to_string(k) + "_", counter);
      }
    }
  }

  for (std::size_t col = 0; col < m; ++col) {
    std::vector<std::string> leaves;
    for (std::size_t k : column_terms[col]) {
      if (options.share_partial_products) {
        leaves.push_back(s_wire[k]);
      } else {
        for (auto [i, j] : partial_products(m, k)) leaves.push_back(product_name(i, j));
      }
    }
    const std::string out = "z" + std::to_string(col);
    if (leaves.size() == 1) {
      builder.add_gate(out, GateKind::Buf, {leaves.front()});
    } else {
      std::size_t counter = 0;
      xor_tree(builder, leaves, out, "r" + std::to_string(col) + "_", counter);
    }
  }
  return std::move(builder).build();
}

namespace {

struct MutableGate {
  std::string out;
  GateKind kind;
  std::vector<std::string> inputs;
  bool dead = false;
};

class Obfuscator {
 public:
  Obfuscator(const Netlist& netlist, std::uint64_t seed) : rng_(seed) {
    for (std::size_t v = 0; v < netlist.var_count(); ++v) {
      names_.insert(netlist.name(VarId{static_cast<std::uint32_t>(v)}));
    }
    for (const Gate& g : netlist.gates()) {
      MutableGate mg{netlist.name(g.out), g.kind, {}};
      for (VarId in : g.inputs) {
        mg.inputs.push_back(netlist.name(in));
        ++fanout_[netlist.name(in)];
      }
      driver_[mg.out] = gates_.size();
      gates_.push_back(std::move(mg));
    }
  }

  bool step() {
    const std::size_t gi = std::uniform_int_distribution<std::size_t>(0, gates_.size() - 1)(rng_);
    if (gates_[gi].dead) return false;
    std::vector<int> rules;
    for (int r = 0; r < kRuleCount; ++r) {
      if (applicable(gi, r)) rules.push_back(r);
    }
    if (rules.empty()) return false;
    const int rule = rules[std::uniform_int_distribution<std::size_t>(0, rules.size() - 1)(rng_)];
    apply(gi, rule);
    return true;
  }

  Netlist build() const {
    NetlistBuilder builder;
    for (const auto& g : gates_) {
      if (!g.dead) builder.add_gate(g.out, g.kind, g.inputs);
    }
    return std::move(builder).build();
  }

 private:
  enum Rule {
    kInvertPair,     // XOR/XNOR/AND/NAND -> NOT of the complementary gate
    kDeMorgan,       // AND/OR/NAND/NOR with inverted inputs
    kInvertOperand,  // XOR(a,b) -> XNOR(NOT a, b) and vice versa
    kReassociate,    // XOR(XOR(p,q),c) -> XOR(p, XOR(q,c))
    kDoubleNegation,
    kDropDoubleNegation,
    kRuleCount
  };

  static bool is_output(const std::string& name) {
    return name.size() > 1 && name[0] == 'z' && name.find_first_not_of("0123456789", 1) == std::string::npos;
  }

  const MutableGate* driver(const std::string& name) const {
    auto it = driver_.find(name);
    return it == driver_.end() ? nullptr : &gates_[it->second];
  }

  // Index k of an XOR operand that is a single-fanout internal XOR wire.
  std::optional<std::size_t> reassociable_operand(const MutableGate& g) const {
    if (g.kind != GateKind::Xor) return std::nullopt;
    for (std::size_t k = 0; k < 2; ++k) {
      const MutableGate* d = driver(g.inputs[k]);
      if (d && d->kind == GateKind::Xor && !is_output(d->out) && fanout_.at(d->out) == 1) return k;
    }
    return std::nullopt;
  }

  bool applicable(std::size_t gi, int rule) const {
    const MutableGate& g = gates_[gi];
    switch (rule) {
      case kInvertPair:
        return g.kind == GateKind::Xor || g.kind == GateKind::Xnor || g.kind == GateKind::And ||
               g.kind == GateKind::Nand;
      case kDeMorgan:
        return g.kind == GateKind::And || g.kind == GateKind::Or || g.kind == GateKind::Nand ||
               g.kind == GateKind::Nor;
      case kInvertOperand: return g.kind == GateKind::Xor || g.kind == GateKind::Xnor;
      case kReassociate: return reassociable_operand(g).has_value();
      case kDoubleNegation: return true;
      case kDropDoubleNegation: {
        if (g.kind != GateKind::Not) return false;
        const MutableGate* d = driver(g.inputs[0]);
        return d && d->kind == GateKind::Not;
      }
      default: return false;
    }
  }

  std::string fresh() {
    while (true) {
      std::string name = "o" + std::to_string(counter_++);
      if (names_.insert(name).second) return name;
    }
  }

  // Appends a new gate driving a fresh wire and returns its name.
  std::string add(GateKind kind, std::vector<std::string> inputs) {
    std::string out = fresh();
    for (const auto& in : inputs) ++fanout_[in];
    driver_[out] = gates_.size();
    gates_.push_back(MutableGate{out, kind, std::move(inputs)});
    return out;
  }

  void apply(std::size_t gi, int rule) {
    switch (rule) {
      case kInvertPair: {
        static const std::unordered_map<GateKind, GateKind> complement{{GateKind::Xor, GateKind::Xnor},
                                                                        {GateKind::Xnor, GateKind::Xor},
                                                                        {GateKind::And, GateKind::Nand},
                                                                        {GateKind::Nand, GateKind::And}};
        const GateKind kind = complement.at(gates_[gi].kind);
        std::vector<std::string> inputs = gates_[gi].inputs;
        for (const auto& in : inputs) --fanout_[in];
        std::string w = add(kind, std::move(inputs));
        ++fanout_[w];
        gates_[gi].kind = GateKind::Not;
        gates_[gi].inputs = {w};
        break;
      }
      case kDeMorgan: {
        static const std::unordered_map<GateKind, GateKind> dual{{GateKind::And, GateKind::Nor},
                                                                  {GateKind::Or, GateKind::Nand},
                                                                  {GateKind::Nand, GateKind::Or},
                                                                  {GateKind::Nor, GateKind::And}};
        const GateKind kind = dual.at(gates_[gi].kind);
        const std::vector<std::string> inputs = gates_[gi].inputs;
        std::vector<std::string> inverted;
        for (const auto& in : inputs) {
          --fanout_[in];
          inverted.push_back(add(GateKind::Not, {in}));
          ++fanout_[inverted.back()];
        }
        gates_[gi].kind = kind;
        gates_[gi].inputs = std::move(inverted);
        break;
      }
      case kInvertOperand: {
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, 1)(rng_);
        std::string old = gates_[gi].inputs[k];
        --fanout_[old];
        std::string inv = add(GateKind::Not, {old});
        ++fanout_[inv];
        gates_[gi].inputs[k] = inv;
        gates_[gi].kind = gates_[gi].kind == GateKind::Xor ? GateKind::Xnor : GateKind::Xor;
        break;
      }
      case kReassociate: {
        const std::size_t k = *reassociable_operand(gates_[gi]);
        const std::string x = gates_[gi].inputs[k];
        const std::string c = gates_[gi].inputs[1 - k];
        MutableGate& inner = gates_[driver_.at(x)];
        const std::string p = inner.inputs[0];
        const std::string q = inner.inputs[1];
        // x := XOR(q, c); out := XOR(p, x). Fanouts are unchanged.
        inner.inputs = {q, c};
        gates_[gi].inputs = {p, x};
        break;
      }
      case kDoubleNegation: {
        MutableGate& g = gates_[gi];
        std::vector<std::string> inputs = g.inputs;
        const GateKind kind = g.kind;
        for (const auto& in : inputs) --fanout_[in];
        std::string w = add(kind, std::move(inputs));
        std::string n = add(GateKind::Not, {w});
        ++fanout_[n];
        gates_[gi].kind = GateKind::Not;
        gates_[gi].inputs = {n};
        break;
      }
      case kDropDoubleNegation: {
        const std::string n = gates_[gi].inputs[0];
        MutableGate& inner = gates_[driver_.at(n)];
        const std::string w = inner.inputs[0];
        gates_[gi].kind = GateKind::Buf;
        gates_[gi].inputs = {w};
        ++fanout_[w];
        if (--fanout_[n] == 0 && !is_output(n)) {
          inner.dead = true;
          --fanout_[w];
          driver_.erase(n);
        }
        break;
      }
      default: break;
    }
  }

  std::mt19937_64 rng_;
  std::vector<MutableGate> gates_;
  std::unordered_map<std::string, std::size_t> driver_;
  std::unordered_map<std::string, std::size_t> fanout_;
  std::unordered_set<std::string> names_;
  std::size_t counter_ = 0;
};

}  // namespace

Netlist obfuscate(const Netlist& netlist, std::uint64_t seed, std::size_t rewrite_budget, ObfuscationStats* stats) {
  Obfuscator ob(netlist, seed);
  std::size_t applied = 0;
  // Bounded retries: a picked gate may admit no rule.
  for (std::size_t attempts = 0; applied < rewrite_budget && attempts < 20 * rewrite_budget + 100; ++attempts) {
    if (ob.step()) ++applied;
  }
  if (stats) stats->applied = applied;
  return ob.build();
}

}  // namespace gfre
