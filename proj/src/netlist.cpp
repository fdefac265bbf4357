#include "gfre/netlist.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace gfre {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 10> kGateNames{{
    {GateKind::Not, "NOT"},
    {GateKind::Buf, "BUF"},
    {GateKind::And, "AND"},
    {GateKind::Or, "OR"},
    {GateKind::Xor, "XOR"},
    {GateKind::Nand, "NAND"},
    {GateKind::Nor, "NOR"},
    {GateKind::Xnor, "XNOR"},
    {GateKind::Const0, "CONST0"},
    {GateKind::Const1, "CONST1"},
}};

// Recognizes a<i>, b<i>, z<i> with a canonical decimal index (no leading zeros).
std::optional<std::pair<VarKind, std::size_t>> classify(std::string_view name) {
  if (name.size() < 2) return std::nullopt;
  VarKind kind;
  switch (name.front()) {
    case 'a': kind = VarKind::InputA; break;
    case 'b': kind = VarKind::InputB; break;
    case 'z': kind = VarKind::OutputZ; break;
    default: return std::nullopt;
  }
  std::string_view digits = name.substr(1);
  if (digits.size() > 1 && digits.front() == '0') return std::nullopt;
  std::size_t index = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return std::pair{kind, index};
}

std::string line_prefix(std::size_t line) {
  return line == 0 ? std::string{} : "line " + std::to_string(line) + ": ";
}

// Base operation used when folding an n-ary gate: the first n-1 inputs are
// combined with the non-inverting kind, the last step uses the original.
GateKind fold_kind(GateKind kind) {
  switch (kind) {
    case GateKind::Nand: return GateKind::And;
    case GateKind::Nor: return GateKind::Or;
    case GateKind::Xnor: return GateKind::Xor;
    default: return kind;
  }
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class LineLexer {
 public:
  LineLexer(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size() || text_[pos_] == '#';
  }

  std::string identifier(const char* what) {
    skip_space();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail(std::string("expected ") + what);
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, pos_ + 1, what); }
  std::size_t column() const { return pos_ + 1; }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string input_name(std::size_t m, VarId id) {
  if (id.value < m) return "a" + std::to_string(id.value);
  if (id.value < 2 * m) return "b" + std::to_string(id.value - m);
  return "v" + std::to_string(id.value);
}

std::string_view to_string(GateKind kind) {
  for (const auto& [k, name] : kGateNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_string(std::string_view keyword) {
  for (const auto& [k, name] : kGateNames) {
    if (name == keyword) return k;
  }
  return std::nullopt;
}

std::size_t gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::Not:
    case GateKind::Buf: return 1;
    case GateKind::Const0:
    case GateKind::Const1: return 0;
    default: return 2;
  }
}

void NetlistBuilder::add_gate(std::string out, GateKind kind, std::vector<std::string> inputs, std::size_t line) {
  gates_.push_back(PendingGate{std::move(out), kind, std::move(inputs), line});
}

Netlist NetlistBuilder::build() && {
  // Arity checks, then left folding of n-ary gates into binary ones.
  std::unordered_set<std::string> names;
  for (const auto& g : gates_) {
    names.insert(g.out);
    names.insert(g.inputs.begin(), g.inputs.end());
  }
  auto fresh_name = [&names](const std::string& base) {
    for (std::size_t n = 1;; ++n) {
      std::string candidate = base + "_f" + std::to_string(n);
      if (names.insert(candidate).second) return candidate;
    }
  };

  std::vector<PendingGate> folded;
  folded.reserve(gates_.size());
  for (auto& g : gates_) {
    const std::size_t arity = gate_arity(g.kind);
    const std::size_t n = g.inputs.size();
    const bool ok = arity == 2 ? n >= 2 : n == arity;
    if (!ok) {
      throw NetlistError(line_prefix(g.line) + "gate " + std::string(to_string(g.kind)) + " driving '" + g.out +
                         "' expects " + (arity == 2 ? std::string("at least 2") : std::to_string(arity)) +
                         " inputs, got " + std::to_string(n));
    }
    if (arity == 2 && n > 2) {
      std::string acc = g.inputs[0];
      for (std::size_t k = 1; k + 1 < n; ++k) {
        std::string t = fresh_name(g.out);
        folded.push_back(PendingGate{t, fold_kind(g.kind), {acc, g.inputs[k]}, g.line});
        acc = std::move(t);
      }
      folded.push_back(PendingGate{g.out, g.kind, {acc, g.inputs[n - 1]}, g.line});
    } else {
      folded.push_back(std::move(g));
    }
  }
  gates_.clear();

  // Width inference from the a/b/z names.
  std::optional<std::size_t> max_a, max_b, max_z;
  auto note = [](std::optional<std::size_t>& slot, std::size_t index) {
    slot = slot ? std::max(*slot, index) : index;
  };
  for (const auto& name : names) {
    if (auto c = classify(name)) {
      switch (c->first) {
        case VarKind::InputA: note(max_a, c->second); break;
        case VarKind::InputB: note(max_b, c->second); break;
        case VarKind::OutputZ: note(max_z, c->second); break;
        case VarKind::Internal: break;
      }
    }
  }
  if (!max_z) throw NetlistError("netlist drives no primary output z<i>");
  const std::size_t m = *max_z + 1;
  if ((max_a && *max_a != *max_z) || (max_b && *max_b != *max_z)) {
    throw NetlistError("inconsistent operand widths: highest a/b/z indices are " +
                       (max_a ? std::to_string(*max_a) : std::string("-")) + "/" +
                       (max_b ? std::to_string(*max_b) : std::string("-")) + "/" + std::to_string(*max_z));
  }

  // Drivers by name.
  std::unordered_map<std::string, std::size_t> driver_of;
  for (std::size_t gi = 0; gi < folded.size(); ++gi) {
    const auto& g = folded[gi];
    if (auto c = classify(g.out); c && c->first != VarKind::OutputZ) {
      throw NetlistError(line_prefix(g.line) + "primary input '" + g.out + "' is driven by a gate");
    }
    auto [it, inserted] = driver_of.emplace(g.out, gi);
    if (!inserted) {
      throw NetlistError(line_prefix(g.line) + "signal '" + g.out + "' has multiple drivers (first at line " +
                         std::to_string(folded[it->second].line) + ")");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!driver_of.contains("z" + std::to_string(i))) {
      throw NetlistError("output 'z" + std::to_string(i) + "' is not driven");
    }
  }
  auto is_input_name = [](const std::string& name) {
    auto c = classify(name);
    return c && c->first != VarKind::OutputZ;
  };
  for (const auto& g : folded) {
    for (const auto& in : g.inputs) {
      if (!is_input_name(in) && !driver_of.contains(in)) {
        throw NetlistError(line_prefix(g.line) + "signal '" + in + "' is used but never driven");
      }
    }
  }

  // Kahn's algorithm; the ready set is a min-heap on declaration index.
  const std::size_t gate_count = folded.size();
  std::vector<std::size_t> pending(gate_count, 0);
  std::vector<std::vector<std::size_t>> users(gate_count);
  for (std::size_t gi = 0; gi < gate_count; ++gi) {
    for (const auto& in : folded[gi].inputs) {
      if (auto it = driver_of.find(in); it != driver_of.end()) {
        ++pending[gi];
        users[it->second].push_back(gi);
      }
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t gi = 0; gi < gate_count; ++gi) {
    if (pending[gi] == 0) ready.push(gi);
  }
  std::vector<std::size_t> topo;
  topo.reserve(gate_count);
  while (!ready.empty()) {
    std::size_t gi = ready.top();
    ready.pop();
    topo.push_back(gi);
    for (std::size_t user : users[gi]) {
      if (--pending[user] == 0) ready.push(user);
    }
  }
  if (topo.size() != gate_count) {
    // Walk backwards through unresolved drivers until a gate repeats.
    std::size_t start = 0;
    while (pending[start] == 0) ++start;
    std::vector<std::size_t> seen_at(gate_count, gate_count);
    std::vector<std::size_t> path;
    std::size_t cur = start;
    while (seen_at[cur] == gate_count) {
      seen_at[cur] = path.size();
      path.push_back(cur);
      for (const auto& in : folded[cur].inputs) {
        auto it = driver_of.find(in);
        if (it != driver_of.end() && pending[it->second] != 0) {
          cur = it->second;
          break;
        }
      }
    }
    std::string cycle;
    for (std::size_t k = path.size(); k-- > seen_at[cur];) {
      cycle += folded[path[k]].out + " -> ";
    }
    cycle += folded[path[path.size() - 1]].out;
    throw NetlistError("combinational cycle: " + cycle);
  }

  // Canonical ids.
  Netlist net;
  net.m_ = m;
  net.vars_.resize(2 * m + gate_count);
  for (std::size_t i = 0; i < m; ++i) {
    net.vars_[i] = VarInfo{VarKind::InputA, i, "a" + std::to_string(i)};
    net.vars_[m + i] = VarInfo{VarKind::InputB, i, "b" + std::to_string(i)};
  }
  net.topo_rank_.resize(gate_count);
  for (std::size_t pos = 0; pos < gate_count; ++pos) {
    const auto& g = folded[topo[pos]];
    net.topo_rank_[topo[pos]] = pos;
    VarInfo info{VarKind::Internal, 0, g.out};
    if (auto c = classify(g.out)) {
      info.kind = c->first;
      info.index = c->second;
    }
    net.vars_[2 * m + pos] = std::move(info);
  }
  for (std::size_t id = 0; id < net.vars_.size(); ++id) {
    net.by_name_.emplace(net.vars_[id].name, VarId{static_cast<std::uint32_t>(id)});
  }
  net.driver_.assign(net.vars_.size(), -1);
  net.gates_.reserve(gate_count);
  for (std::size_t gi = 0; gi < gate_count; ++gi) {
    auto& g = folded[gi];
    Gate gate;
    gate.kind = g.kind;
    gate.out = net.by_name_.at(g.out);
    for (const auto& in : g.inputs) gate.inputs.push_back(net.by_name_.at(in));
    net.driver_[gate.out.value] = static_cast<std::int64_t>(gi);
    net.gates_.push_back(std::move(gate));
  }
  net.topo_ = std::move(topo);
  net.outputs_.reserve(m);
  for (std::size_t i = 0; i < m; ++i) net.outputs_.push_back(net.by_name_.at("z" + std::to_string(i)));
  return net;
}

Netlist Netlist::parse(std::string_view text) {
  NetlistBuilder builder;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    LineLexer lex(line, line_no);
    if (lex.at_end()) continue;
    std::string out = lex.identifier("signal name");
    lex.expect('=');
    const std::size_t kind_column = [&] {
      lex.skip_space();
      return lex.column();
    }();
    std::string keyword = lex.identifier("gate kind");
    auto kind = gate_kind_from_string(keyword);
    if (!kind) throw ParseError(line_no, kind_column, "unknown gate kind '" + keyword + "'");
    lex.expect('(');
    std::vector<std::string> inputs;
    if (!lex.accept(')')) {
      do {
        inputs.push_back(lex.identifier("signal name"));
      } while (lex.accept(','));
      lex.expect(')');
    }
    if (!lex.at_end()) lex.fail("unexpected trailing characters");
    builder.add_gate(std::move(out), *kind, std::move(inputs), line_no);
  }
  return std::move(builder).build();
}

std::optional<VarId> Netlist::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Netlist::driver(VarId id) const {
  std::int64_t d = driver_.at(id.value);
  if (d < 0) return std::nullopt;
  return static_cast<std::size_t>(d);
}

Cone Netlist::cone_of(std::size_t bit) const {
  if (bit >= m_) throw std::out_of_range("output index " + std::to_string(bit) + " out of range");
  Cone cone;
  cone.root = bit;
  std::vector<bool> visited(gates_.size(), false);
  std::vector<std::size_t> stack;
  auto visit = [&](VarId v) {
    if (auto d = driver(v); d && !visited[*d]) {
      visited[*d] = true;
      stack.push_back(*d);
    }
  };
  visit(outputs_[bit]);
  while (!stack.empty()) {
    std::size_t gi = stack.back();
    stack.pop_back();
    cone.gates.push_back(gi);
    for (VarId in : gates_[gi].inputs) visit(in);
  }
  std::sort(cone.gates.begin(), cone.gates.end(),
            [this](std::size_t x, std::size_t y) { return topo_rank_[x] > topo_rank_[y]; });
  return cone;
}

std::string Netlist::serialize() const {
  std::ostringstream os;
  for (const auto& g : gates_) {
    os << name(g.out) << " = " << to_string(g.kind) << '(';
    for (std::size_t k = 0; k < g.inputs.size(); ++k) {
      if (k) os << ", ";
      os << name(g.inputs[k]);
    }
    os << ")\n";
  }
  return os.str();
}

std::size_t Netlist::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

namespace {

std::uint64_t eval_gate(const Gate& g, const std::vector<std::uint64_t>& values) {
  auto in = [&](std::size_t k) { return values[g.inputs[k].value]; };
  switch (g.kind) {
    case GateKind::Not: return ~in(0);
    case GateKind::Buf: return in(0);
    case GateKind::And: return in(0) & in(1);
    case GateKind::Or: return in(0) | in(1);
    case GateKind::Xor: return in(0) ^ in(1);
    case GateKind::Nand: return ~(in(0) & in(1));
    case GateKind::Nor: return ~(in(0) | in(1));
    case GateKind::Xnor: return ~(in(0) ^ in(1));
    case GateKind::Const0: return 0;
    case GateKind::Const1: return ~std::uint64_t{0};
  }
  return 0;
}

std::vector<std::uint64_t> seed_values(const Netlist& n, std::span<const std::uint64_t> a,
                                       std::span<const std::uint64_t> b) {
  const std::size_t m = n.width();
  if (a.size() != m || b.size() != m) throw std::invalid_argument("operand word count differs from netlist width");
  std::vector<std::uint64_t> values(n.var_count(), 0);
  std::copy(a.begin(), a.end(), values.begin());
  std::copy(b.begin(), b.end(), values.begin() + static_cast<std::ptrdiff_t>(m));
  return values;
}

}  // namespace

std::vector<std::uint64_t> simulate(const Netlist& netlist, std::span<const std::uint64_t> a_words,
                                    std::span<const std::uint64_t> b_words) {
  auto values = seed_values(netlist, a_words, b_words);
  auto gates = netlist.gates();
  for (std::size_t gi : netlist.topo()) values[gates[gi].out.value] = eval_gate(gates[gi], values);
  std::vector<std::uint64_t> z(netlist.width());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = values[netlist.output_z(i).value];
  return z;
}

std::uint64_t simulate_cone(const Netlist& netlist, const Cone& cone, std::span<const std::uint64_t> a_words,
                            std::span<const std::uint64_t> b_words) {
  auto values = seed_values(netlist, a_words, b_words);
  auto gates = netlist.gates();
  for (auto it = cone.gates.rbegin(); it != cone.gates.rend(); ++it) {
    values[gates[*it].out.value] = eval_gate(gates[*it], values);
  }
  return values[netlist.output_z(cone.root).value];
}

}  // namespace gfre
