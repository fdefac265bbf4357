#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gfre/error.hpp"

namespace gfre {

// Dense handle of a signal inside one netlist.
//
// Ids are canonical: a0..a{m-1} take 0..m-1, b0..b{m-1} take m..2m-1 and
// every gate output follows in topological order of its driver. The
// rewriter depends on this: a driven signal always has a larger id than
// any signal its driver reads.
struct VarId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(VarId, VarId) = default;
};

enum class VarKind { InputA, InputB, OutputZ, Internal };

// Canonical ids of the primary inputs of an m-bit multiplier.
constexpr VarId input_a_id(std::size_t i) { return VarId{static_cast<std::uint32_t>(i)}; }
constexpr VarId input_b_id(std::size_t m, std::size_t j) { return VarId{static_cast<std::uint32_t>(m + j)}; }

// "a<i>" / "b<j>" for a primary-input id; "v<id>" for anything else.
std::string input_name(std::size_t m, VarId id);

struct VarInfo {
  VarKind kind = VarKind::Internal;
  std::size_t index = 0;  // bit position for A/B/Z kinds
  std::string name;
};

enum class GateKind { Not, Buf, And, Or, Xor, Nand, Nor, Xnor, Const0, Const1 };

std::string_view to_string(GateKind kind);
std::optional<GateKind> gate_kind_from_string(std::string_view keyword);

// Number of inputs a folded (binary) gate of this kind takes.
std::size_t gate_arity(GateKind kind);

struct Gate {
  VarId out;
  GateKind kind = GateKind::Buf;
  std::vector<VarId> inputs;
};

// Transitive fan-in of one output bit. Gate indices refer to
// Netlist::gates() and are listed in reverse topological order.
struct Cone {
  std::size_t root = 0;
  std::vector<std::size_t> gates;
};

class Netlist;

// Collects gate definitions by signal name and produces a validated Netlist.
// N-ary AND/OR/XOR/NAND/NOR/XNOR are folded left into binary gates here.
class NetlistBuilder {
 public:
  // `line` is only used to annotate error messages (0 = unknown).
  void add_gate(std::string out, GateKind kind, std::vector<std::string> inputs, std::size_t line = 0);

  Netlist build() &&;

 private:
  struct PendingGate {
    std::string out;
    GateKind kind;
    std::vector<std::string> inputs;
    std::size_t line;
  };
  std::vector<PendingGate> gates_;
};

class Netlist {
 public:
  // Parses the one-gate-per-line equation format. Throws ParseError for
  // syntax problems and NetlistError for structural ones.
  static Netlist parse(std::string_view text);

  std::size_t width() const noexcept { return m_; }
  std::span<const Gate> gates() const noexcept { return gates_; }
  std::span<const std::size_t> topo() const noexcept { return topo_; }
  std::size_t var_count() const noexcept { return vars_.size(); }

  const VarInfo& var(VarId id) const { return vars_.at(id.value); }
  const std::string& name(VarId id) const { return vars_.at(id.value).name; }
  std::optional<VarId> find(std::string_view name) const;

  VarId input_a(std::size_t i) const { return input_a_id(i); }
  VarId input_b(std::size_t i) const { return input_b_id(m_, i); }
  VarId output_z(std::size_t i) const { return outputs_.at(i); }
  bool is_primary_input(VarId id) const noexcept { return id.value < 2 * m_; }

  // Index into gates() of the gate driving `id`, if any.
  std::optional<std::size_t> driver(VarId id) const;

  // Position of each gate in topological order.
  std::size_t topo_position(std::size_t gate_index) const { return topo_rank_.at(gate_index); }

  Cone cone_of(std::size_t bit) const;

  // Canonical text form; parse(serialize()) reproduces the same netlist.
  std::string serialize() const;

  std::size_t count(GateKind kind) const;

 private:
  friend class NetlistBuilder;
  Netlist() = default;

  std::size_t m_ = 0;
  std::vector<VarInfo> vars_;
  std::unordered_map<std::string, VarId> by_name_;
  std::vector<Gate> gates_;
  std::vector<std::size_t> topo_;
  std::vector<std::size_t> topo_rank_;
  std::vector<std::int64_t> driver_;
  std::vector<VarId> outputs_;
};

// Bit-parallel simulation: every word carries 64 independent input vectors.
// a_words[i] / b_words[i] hold bit i of operand A / B.
std::vector<std::uint64_t> simulate(const Netlist& netlist, std::span<const std::uint64_t> a_words,
                                    std::span<const std::uint64_t> b_words);

// Simulates only the gates of `cone` and returns the word for its output bit.
std::uint64_t simulate_cone(const Netlist& netlist, const Cone& cone, std::span<const std::uint64_t> a_words,
                            std::span<const std::uint64_t> b_words);

}  // namespace gfre

template <>
struct std::hash<gfre::VarId> {
  std::size_t operator()(gfre::VarId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
